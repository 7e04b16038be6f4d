#include "tsr/finite_groups.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

#include "tsr/errors.hpp"

namespace tsr {

namespace {

constexpr std::array<GroupTag, 11> kTags = {GroupTag::C1, GroupTag::C2, GroupTag::C3, GroupTag::C4,
                                             GroupTag::C6, GroupTag::D2, GroupTag::D3, GroupTag::D4,
                                             GroupTag::D6, GroupTag::A4, GroupTag::S4};

using Mask = std::uint32_t;

Perm cycles(int degree, std::initializer_list<std::initializer_list<int>> cs)
{
    Perm p = identity_perm(degree);
    for (const auto& c : cs) {
        std::vector<int> v(c);
        for (std::size_t i = 0; i < v.size(); ++i)
            p[v[i]] = static_cast<std::uint8_t>(v[(i + 1) % v.size()]);
    }
    return p;
}

void require_searchable(const FiniteGroup& g)
{
    if (g.order() > kMaxSubgroupSearchOrder)
        throw ValidationError("group of order " + std::to_string(g.order()) +
                              " exceeds the subgroup search bound of " +
                              std::to_string(kMaxSubgroupSearchOrder));
}

Mask closure(const FiniteGroup& g, Mask gens)
{
    Mask m = gens | 1u;
    for (;;) {
        Mask next = m;
        for (int a = 0; a < g.order(); ++a) {
            if (!(m >> a & 1u))
                continue;
            for (int b = 0; b < g.order(); ++b)
                if (m >> b & 1u)
                    next |= 1u << g.mul(a, b);
        }
        if (next == m)
            return m;
        m = next;
    }
}

std::vector<int> mask_indices(Mask m)
{
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1u)
            out.push_back(i);
    return out;
}

bool mask_less(Mask a, Mask b)
{
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb)
        return pa < pb;
    return mask_indices(a) < mask_indices(b);
}

std::vector<Mask> subgroup_masks(const FiniteGroup& g)
{
    require_searchable(g);
    std::set<Mask> seen;
    std::vector<Mask> queue{closure(g, 0)};
    seen.insert(queue.front());
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Mask s = queue[i];
        for (int e = 0; e < g.order(); ++e) {
            if (s >> e & 1u)
                continue;
            Mask t = closure(g, s | (1u << e));
            if (seen.insert(t).second)
                queue.push_back(t);
        }
    }
    std::sort(queue.begin(), queue.end(), mask_less);
    return queue;
}

Mask conjugate_mask(const FiniteGroup& g, Mask h, int x)
{
    Mask out = 0;
    for (int i : mask_indices(h))
        out |= 1u << g.mul(g.mul(x, i), g.inv(x));
    return out;
}

bool mask_is_normal(const FiniteGroup& g, Mask h)
{
    for (int x = 0; x < g.order(); ++x)
        if (conjugate_mask(g, h, x) != h)
            return false;
    return true;
}

Mask center_mask(const FiniteGroup& g, Mask within)
{
    Mask out = 0;
    for (int a : mask_indices(within)) {
        bool central = true;
        for (int b : mask_indices(within))
            if (g.mul(a, b) != g.mul(b, a)) {
                central = false;
                break;
            }
        if (central)
            out |= 1u << a;
    }
    return out;
}

int ell_part(int n, int ell)
{
    int p = 1;
    while (n % ell == 0) {
        n /= ell;
        p *= ell;
    }
    return p;
}

Mask all_mask(const FiniteGroup& g)
{
    return g.order() == 32 ? ~Mask{0} : ((Mask{1} << g.order()) - 1);
}

// Group invariants that must agree for isomorphic groups.
struct Fingerprint {
    int order;
    std::vector<int> element_orders;
    int center_order;
    int derived_order;
    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const FiniteGroup& g)
{
    Fingerprint f;
    f.order = g.order();
    for (int i = 0; i < g.order(); ++i)
        f.element_orders.push_back(g.element_order(i));
    std::sort(f.element_orders.begin(), f.element_orders.end());
    f.center_order = std::popcount(center_mask(g, all_mask(g)));
    Mask comm = 0;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            comm |= 1u << g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
    f.derived_order = std::popcount(closure(g, comm));
    return f;
}

// Smallest generating set found by increasing subset size.
std::vector<int> small_generating_set(const FiniteGroup& g)
{
    int n = g.order();
    if (n == 1)
        return {};
    Mask full = all_mask(g);
    for (int k = 1; k <= 4; ++k) {
        std::vector<int> idx(k);
        std::iota(idx.begin(), idx.end(), 1);
        for (;;) {
            Mask m = 0;
            for (int i : idx)
                m |= 1u << i;
            if (closure(g, m) == full)
                return idx;
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == n - k + pos)
                --pos;
            if (pos < 0)
                break;
            ++idx[pos];
            for (int j = pos + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    std::vector<int> gens;
    Mask m = closure(g, 0);
    for (int e = 1; e < n; ++e)
        if (!(m >> e & 1u)) {
            gens.push_back(e);
            m = closure(g, m | (1u << e));
        }
    return gens;
}

// Extend generator images to a homomorphism along the Cayley graph.
std::optional<std::vector<int>> extend_hom(const FiniteGroup& g, const FiniteGroup& h,
                                           const std::vector<int>& gens, const std::vector<int>& images)
{
    std::vector<int> map(g.order(), -1);
    map[0] = 0;
    std::vector<int> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (std::size_t k = 0; k < gens.size(); ++k) {
            int y = g.mul(x, gens[k]);
            int img = h.mul(map[x], images[k]);
            if (map[y] < 0) {
                map[y] = img;
                queue.push_back(y);
            } else if (map[y] != img) {
                return std::nullopt;
            }
        }
    }
    if (static_cast<int>(queue.size()) != g.order())
        return std::nullopt;
    return map;
}

}  // namespace

std::string_view to_string(GroupTag tag)
{
    switch (tag) {
    case GroupTag::C1: return "C1";
    case GroupTag::C2: return "C2";
    case GroupTag::C3: return "C3";
    case GroupTag::C4: return "C4";
    case GroupTag::C6: return "C6";
    case GroupTag::D2: return "D2";
    case GroupTag::D3: return "D3";
    case GroupTag::D4: return "D4";
    case GroupTag::D6: return "D6";
    case GroupTag::A4: return "A4";
    case GroupTag::S4: return "S4";
    }
    return "?";
}

GroupTag parse_group_tag(std::string_view text)
{
    for (GroupTag t : kTags)
        if (to_string(t) == text)
            return t;
    throw ValidationError("unknown stabilizer '" + std::string(text) + "'");
}

int tag_order(GroupTag tag)
{
    switch (tag) {
    case GroupTag::C1: return 1;
    case GroupTag::C2: return 2;
    case GroupTag::C3: return 3;
    case GroupTag::C4: return 4;
    case GroupTag::C6: return 6;
    case GroupTag::D2: return 4;
    case GroupTag::D3: return 6;
    case GroupTag::D4: return 8;
    case GroupTag::D6: return 12;
    case GroupTag::A4: return 12;
    case GroupTag::S4: return 24;
    }
    return 0;
}

bool is_cyclic_tag(GroupTag tag)
{
    return tag == GroupTag::C1 || tag == GroupTag::C2 || tag == GroupTag::C3 || tag == GroupTag::C4 ||
           tag == GroupTag::C6;
}

std::span<const GroupTag> all_group_tags() { return kTags; }

Perm compose(const Perm& a, const Perm& b)
{
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[b[i]];
    return r;
}

Perm invert(const Perm& p)
{
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[p[i]] = static_cast<std::uint8_t>(i);
    return r;
}

Perm identity_perm(int degree)
{
    Perm p(degree);
    std::iota(p.begin(), p.end(), std::uint8_t{0});
    return p;
}

std::string perm_to_cycles(const Perm& p)
{
    std::ostringstream os;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i)
            continue;
        os << '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            os << (first ? "" : " ") << j;
            first = false;
            j = p[j];
        }
        os << ')';
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
}

FiniteGroup FiniteGroup::generated_by(int degree, std::span<const Perm> generators, std::optional<GroupTag> tag)
{
    if (degree < 1 || degree > 255)
        throw ValidationError("permutation degree out of range");
    std::set<Perm> elems{identity_perm(degree)};
    for (const Perm& gperm : generators) {
        if (static_cast<int>(gperm.size()) != degree)
            throw ValidationError("generator has wrong degree");
        Perm sorted = gperm;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != identity_perm(degree))
            throw ValidationError("generator is not a permutation");
    }
    std::vector<Perm> frontier(elems.begin(), elems.end());
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const Perm& x : frontier)
            for (const Perm& gperm : generators) {
                Perm y = compose(x, gperm);
                if (elems.insert(y).second)
                    next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    return from_elements(degree, std::vector<Perm>(elems.begin(), elems.end()), tag);
}

FiniteGroup FiniteGroup::from_elements(int degree, std::vector<Perm> elements, std::optional<GroupTag> tag)
{
    FiniteGroup g;
    g.degree_ = degree;
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements.front() != identity_perm(degree))
        throw ValidationError("element set does not contain the identity");
    g.elements_ = std::move(elements);
    g.build_tables();
    if (tag && tag_order(*tag) != g.order())
        throw InvariantError("catalog tag does not match group order");
    g.tag_ = tag;
    return g;
}

void FiniteGroup::build_tables()
{
    int n = order();
    table_.assign(static_cast<std::size_t>(n) * n, -1);
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int c = index_of(compose(elements_[a], elements_[b]));
            if (c < 0)
                throw ValidationError("element set is not closed under composition");
            table_[static_cast<std::size_t>(a) * n + b] = c;
            if (c == 0)
                inverse_[a] = b;
        }
}

int FiniteGroup::element_order(int a) const
{
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a))
        ++k;
    return k;
}

int FiniteGroup::index_of(const Perm& p) const
{
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p)
        return -1;
    return static_cast<int>(it - elements_.begin());
}

bool FiniteGroup::contains(const FiniteGroup& h) const
{
    if (h.degree_ != degree_)
        return false;
    return std::all_of(h.elements_.begin(), h.elements_.end(), [&](const Perm& p) { return index_of(p) >= 0; });
}

bool FiniteGroup::is_abelian() const
{
    for (int a = 0; a < order(); ++a)
        for (int b = a + 1; b < order(); ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

FiniteGroup FiniteGroup::subgroup(const std::vector<int>& indices) const
{
    std::vector<Perm> elems;
    for (int i : indices)
        elems.push_back(elements_.at(i));
    FiniteGroup h = from_elements(degree_, std::move(elems));
    if (h.order() <= kMaxSubgroupSearchOrder)
        h.tag_ = identify(h);
    return h;
}

std::vector<int> FiniteGroup::indices_of(const FiniteGroup& h) const
{
    if (!contains(h))
        throw ValidationError("not a subgroup of the given group");
    std::vector<int> out;
    for (const Perm& p : h.elements())
        out.push_back(index_of(p));
    std::sort(out.begin(), out.end());
    return out;
}

const FiniteGroup& catalog_group(GroupTag tag)
{
    static const std::vector<FiniteGroup> groups = [] {
        std::vector<FiniteGroup> out;
        auto make = [&](GroupTag t, int degree, std::vector<Perm> gens) {
            out.push_back(FiniteGroup::generated_by(degree, gens, t));
        };
        make(GroupTag::C1, 1, {});
        make(GroupTag::C2, 2, {cycles(2, {{0, 1}})});
        make(GroupTag::C3, 3, {cycles(3, {{0, 1, 2}})});
        make(GroupTag::C4, 4, {cycles(4, {{0, 1, 2, 3}})});
        make(GroupTag::C6, 5, {cycles(5, {{0, 1, 2}, {3, 4}})});
        make(GroupTag::D2, 4, {cycles(4, {{0, 1}, {2, 3}}), cycles(4, {{0, 2}, {1, 3}})});
        make(GroupTag::D3, 3, {cycles(3, {{0, 1, 2}}), cycles(3, {{0, 1}})});
        make(GroupTag::D4, 4, {cycles(4, {{0, 1, 2, 3}}), cycles(4, {{0, 2}})});
        make(GroupTag::D6, 5, {cycles(5, {{0, 1, 2}, {3, 4}}), cycles(5, {{0, 1}})});
        make(GroupTag::A4, 4, {cycles(4, {{0, 1, 2}}), cycles(4, {{0, 1}, {2, 3}})});
        make(GroupTag::S4, 4, {cycles(4, {{0, 1, 2, 3}}), cycles(4, {{0, 1}})});
        return out;
    }();
    return groups.at(static_cast<std::size_t>(tag));
}

FiniteGroup dihedral_group(int n)
{
    if (n < 3 || n > 255)
        throw ValidationError("dihedral_group needs 3 <= n <= 255");
    Perm rot(n), refl(n);
    for (int i = 0; i < n; ++i) {
        rot[i] = static_cast<std::uint8_t>((i + 1) % n);
        refl[i] = static_cast<std::uint8_t>((n - i) % n);
    }
    std::vector<Perm> gens{rot, refl};
    return FiniteGroup::generated_by(n, gens);
}

bool is_prime(int n)
{
    if (n < 2)
        return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<FiniteGroup> all_subgroups(const FiniteGroup& g)
{
    std::vector<FiniteGroup> out;
    for (Mask m : subgroup_masks(g))
        out.push_back(g.subgroup(mask_indices(m)));
    return out;
}

std::vector<FiniteGroup> normal_subgroups(const FiniteGroup& g)
{
    std::vector<FiniteGroup> out;
    for (Mask m : subgroup_masks(g))
        if (mask_is_normal(g, m))
            out.push_back(g.subgroup(mask_indices(m)));
    return out;
}

std::vector<FiniteGroup> sylow_subgroups(const FiniteGroup& g, int ell)
{
    if (!is_prime(ell))
        throw ValidationError("ell must be prime");
    int target = ell_part(g.order(), ell);
    std::vector<FiniteGroup> out;
    for (Mask m : subgroup_masks(g))
        if (std::popcount(m) == target)
            out.push_back(g.subgroup(mask_indices(m)));
    return out;
}

FiniteGroup sylow_subgroup(const FiniteGroup& g, int ell)
{
    auto all = sylow_subgroups(g, ell);
    if (all.empty())
        throw InvariantError("Sylow subgroup not found");
    return all.front();
}

FiniteGroup center(const FiniteGroup& g)
{
    std::vector<int> idx;
    for (int a = 0; a < g.order(); ++a) {
        bool central = true;
        for (int b = 0; b < g.order() && central; ++b)
            central = g.mul(a, b) == g.mul(b, a);
        if (central)
            idx.push_back(a);
    }
    return g.subgroup(idx);
}

FiniteGroup normalizer(const FiniteGroup& g, const FiniteGroup& h)
{
    std::vector<int> hidx = g.indices_of(h);
    std::set<int> hset(hidx.begin(), hidx.end());
    std::vector<int> idx;
    for (int x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (int a : hidx)
            if (!hset.count(g.mul(g.mul(x, a), g.inv(x)))) {
                ok = false;
                break;
            }
        if (ok)
            idx.push_back(x);
    }
    return g.subgroup(idx);
}

FiniteGroup derived_subgroup(const FiniteGroup& g)
{
    std::set<Perm> comm{identity_perm(g.degree())};
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            comm.insert(g.element(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b))));
    std::vector<Perm> gens(comm.begin(), comm.end());
    auto d = FiniteGroup::generated_by(g.degree(), gens);
    return d;
}

bool is_normal_subgroup(const FiniteGroup& g, const FiniteGroup& h)
{
    if (!g.contains(h))
        return false;
    std::vector<int> hidx = g.indices_of(h);
    std::set<int> hset(hidx.begin(), hidx.end());
    for (int x = 0; x < g.order(); ++x)
        for (int a : hidx)
            if (!hset.count(g.mul(g.mul(x, a), g.inv(x))))
                return false;
    return true;
}

FiniteGroup quotient(const FiniteGroup& g, const FiniteGroup& n)
{
    if (!is_normal_subgroup(g, n))
        throw ValidationError("quotient by a subgroup that is not normal");
    std::vector<int> nidx = g.indices_of(n);
    // cosets x N, labelled by their smallest element index
    std::vector<int> coset_of(g.order(), -1);
    std::vector<int> reps;
    for (int x = 0; x < g.order(); ++x) {
        if (coset_of[x] >= 0)
            continue;
        int label = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int a : nidx)
            coset_of[g.mul(x, a)] = label;
    }
    int k = static_cast<int>(reps.size());
    std::vector<Perm> gens;
    for (int x = 0; x < g.order(); ++x) {
        Perm p(k);
        for (int c = 0; c < k; ++c)
            p[c] = static_cast<std::uint8_t>(coset_of[g.mul(x, reps[c])]);
        gens.push_back(std::move(p));
    }
    FiniteGroup q = FiniteGroup::generated_by(k, gens);
    if (q.order() * n.order() != g.order())
        throw InvariantError("coset action has unexpected image");
    if (q.order() <= kMaxSubgroupSearchOrder)
        return FiniteGroup::from_elements(k, q.elements(), identify(q));
    return q;
}

bool is_ell_normal(const FiniteGroup& g, int ell)
{
    if (g.order() % ell != 0)
        return true;
    auto sylows = sylow_subgroups(g, ell);
    std::vector<FiniteGroup> centers;
    for (const auto& p : sylows)
        centers.push_back(center(p));
    for (std::size_t i = 0; i < sylows.size(); ++i)
        for (std::size_t j = 0; j < sylows.size(); ++j)
            if (sylows[j].contains(centers[i]) && !(centers[j] == centers[i]))
                return false;
    return true;
}

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h)
{
    if (g.order() != h.order())
        return std::nullopt;
    std::vector<int> gens = small_generating_set(g);
    if (gens.empty())
        return std::vector<int>{0};
    std::vector<std::vector<int>> candidates(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
        int ord = g.element_order(gens[k]);
        for (int y = 0; y < h.order(); ++y)
            if (h.element_order(y) == ord)
                candidates[k].push_back(y);
        if (candidates[k].empty())
            return std::nullopt;
    }
    std::vector<std::size_t> pos(gens.size(), 0);
    for (;;) {
        std::vector<int> images;
        for (std::size_t k = 0; k < gens.size(); ++k)
            images.push_back(candidates[k][pos[k]]);
        if (auto map = extend_hom(g, h, gens, images)) {
            std::vector<int> sorted = *map;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
                return map;
        }
        std::size_t k = 0;
        while (k < gens.size() && ++pos[k] == candidates[k].size()) {
            pos[k] = 0;
            ++k;
        }
        if (k == gens.size())
            return std::nullopt;
    }
}

bool are_isomorphic(const FiniteGroup& g, const FiniteGroup& h)
{
    if (g.order() != h.order())
        return false;
    if (g.tag() && h.tag())
        return *g.tag() == *h.tag();
    require_searchable(g);
    if (!(fingerprint(g) == fingerprint(h)))
        return false;
    return find_isomorphism(g, h).has_value();
}

std::optional<GroupTag> identify(const FiniteGroup& g)
{
    if (g.tag())
        return g.tag();
    if (g.order() > kMaxSubgroupSearchOrder)
        return std::nullopt;
    for (GroupTag t : kTags) {
        const FiniteGroup& c = catalog_group(t);
        if (c.order() != g.order())
            continue;
        if (fingerprint(c) == fingerprint(g) && find_isomorphism(c, g))
            return t;
    }
    return std::nullopt;
}

std::vector<FiniteGroup> subgroup_class_representatives(const FiniteGroup& g, GroupTag sub)
{
    std::vector<Mask> reps;
    std::set<Mask> covered;
    for (Mask m : subgroup_masks(g)) {
        if (covered.count(m) || std::popcount(m) != tag_order(sub))
            continue;
        FiniteGroup h = g.subgroup(mask_indices(m));
        if (h.tag() != sub)
            continue;
        reps.push_back(m);
        for (int x = 0; x < g.order(); ++x)
            covered.insert(conjugate_mask(g, m, x));
    }
    std::vector<FiniteGroup> out;
    for (Mask m : reps)
        out.push_back(g.subgroup(mask_indices(m)));
    return out;
}

bool has_trivial_mod_ell_cohomology(const FiniteGroup& g, int ell)
{
    return std::gcd(g.order(), ell) == 1;
}

int dihedral_mod_ell_homology(int n, int ell, int q)
{
    if (n < 1)
        throw ValidationError("dihedral index must be positive");
    if (!is_prime(ell) || ell == 2)
        throw ValidationError("dihedral mod-ell homology formula needs an odd prime ell");
    if (q < 0)
        throw ValidationError("homological degree must be non-negative");
    if (q == 0)
        return 1;
    if (q % 4 == 3 || q % 4 == 0)
        return n % ell == 0 ? 1 : 0;
    return 0;
}

}  // namespace tsr
