#include <map>
#include <mutex>
#include <sstream>

#include "tsr/bredon.hpp"
#include "tsr/errors.hpp"

namespace tsr {

namespace {

constexpr Eisenstein E(long long a) { return {a, 0}; }
constexpr Eisenstein kOmega{0, 1};
constexpr Eisenstein kOmega2{-1, -1};

bool supported(GroupTag t)
{
    switch (t) {
    case GroupTag::C1:
    case GroupTag::C2:
    case GroupTag::C3:
    case GroupTag::D2:
    case GroupTag::D3:
    case GroupTag::A4:
        return true;
    default:
        return false;
    }
}

void require_supported(GroupTag t)
{
    if (!supported(t))
        throw ValidationError("no pinned representation ring for " + std::string(to_string(t)));
}

RepRing pinned_table(GroupTag t)
{
    RepRing r;
    r.group = t;
    switch (t) {
    case GroupTag::C1:
        r.names = {"triv"};
        r.class_reps = {{0}};
        r.chars = {{E(1)}};
        break;
    case GroupTag::C2:
        r.names = {"triv", "sgn"};
        r.class_reps = {{0, 1}, {1, 0}};
        r.chars = {{E(1), E(1)}, {E(1), E(-1)}};
        break;
    case GroupTag::C3:
        r.names = {"triv", "chi1", "chi2"};
        r.class_reps = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
        r.chars = {{E(1), E(1), E(1)}, {E(1), kOmega, kOmega2}, {E(1), kOmega2, kOmega}};
        break;
    case GroupTag::D2:
        r.names = {"triv", "alpha", "beta", "gamma"};
        r.class_reps = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        r.chars = {{E(1), E(1), E(1), E(1)},
                   {E(1), E(1), E(-1), E(-1)},
                   {E(1), E(-1), E(1), E(-1)},
                   {E(1), E(-1), E(-1), E(1)}};
        break;
    case GroupTag::D3:
        r.names = {"triv", "sign", "std"};
        r.class_reps = {{0, 1, 2}, {1, 0, 2}, {1, 2, 0}};
        r.chars = {{E(1), E(1), E(1)}, {E(1), E(-1), E(1)}, {E(2), E(0), E(-1)}};
        break;
    case GroupTag::A4:
        r.names = {"triv", "lambda", "lambdabar", "tau"};
        r.class_reps = {{0, 1, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {2, 0, 1, 3}};
        r.chars = {{E(1), E(1), E(1), E(1)},
                   {E(1), E(1), kOmega, kOmega2},
                   {E(1), E(1), kOmega2, kOmega},
                   {E(3), E(-1), E(0), E(0)}};
        break;
    default:
        require_supported(t);
    }
    return r;
}

void fill_and_verify(RepRing& r)
{
    const FiniteGroup& g = catalog_group(r.group);
    int n = g.order();
    int k = static_cast<int>(r.class_reps.size());
    std::vector<int> rep_index;
    for (const Perm& p : r.class_reps) {
        int i = g.index_of(p);
        if (i < 0)
            throw InvariantError("class representative outside " + std::string(to_string(r.group)));
        rep_index.push_back(i);
    }
    r.element_class.assign(n, -1);
    r.class_sizes.assign(k, 0);
    for (int c = 0; c < k; ++c)
        for (int x = 0; x < n; ++x) {
            int conj = g.mul(g.mul(x, rep_index[c]), g.inv(x));
            if (r.element_class[conj] == -1) {
                r.element_class[conj] = c;
                ++r.class_sizes[c];
            } else if (r.element_class[conj] != c) {
                throw InvariantError("pinned class representatives are conjugate");
            }
        }
    for (int x = 0; x < n; ++x)
        if (r.element_class[x] == -1)
            throw InvariantError("pinned classes of " + std::string(to_string(r.group)) + " miss an element");
    if (r.rank() != k)
        throw InvariantError("character table is not square");

    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Eisenstein row{}, col{};
            for (int c = 0; c < k; ++c)
                row = row + E(r.class_sizes[c]) * r.chars[i][c] * r.chars[j][c].conj();
            for (int c = 0; c < k; ++c)
                col = col + r.chars[c][i] * r.chars[c][j].conj();
            if (row != E(i == j ? n : 0))
                throw InvariantError("first orthogonality fails for " + std::string(to_string(r.group)));
            if (i == j ? col * E(r.class_sizes[i]) != E(n) : col != E(0))
                throw InvariantError("second orthogonality fails for " + std::string(to_string(r.group)));
        }
}

bool supported_inclusion(GroupTag source, GroupTag target)
{
    if (source == target || source == GroupTag::C1)
        return true;
    if (source == GroupTag::C2)
        return target == GroupTag::D2 || target == GroupTag::D3 || target == GroupTag::A4;
    if (source == GroupTag::C3)
        return target == GroupTag::D3 || target == GroupTag::A4;
    return false;
}

// Element map catalog_group(source) -> catalog_group(target) for the chosen embedding.
std::vector<int> embedding_map(GroupTag source, GroupTag target, int embedding)
{
    const FiniteGroup& g = catalog_group(target);
    const FiniteGroup& h = catalog_group(source);
    if (source == target) {
        if (embedding != 0)
            throw ValidationError("a group embeds into itself only with embedding 0");
        std::vector<int> id(g.order());
        for (int i = 0; i < g.order(); ++i)
            id[i] = i;
        return id;
    }
    auto reps = subgroup_class_representatives(g, source);
    if (embedding < 0 || embedding >= static_cast<int>(reps.size()))
        throw ValidationError(std::string(to_string(source)) + " has " + std::to_string(reps.size()) +
                              " embedding(s) into " + std::string(to_string(target)) + ", got index " +
                              std::to_string(embedding));
    const FiniteGroup& k = reps[embedding];
    auto iso = find_isomorphism(h, k);
    if (!iso)
        throw InvariantError("subgroup representative is not isomorphic to its tag");
    std::vector<int> out(h.order());
    for (int i = 0; i < h.order(); ++i)
        out[i] = g.index_of(k.element((*iso)[i]));
    return out;
}

}  // namespace

std::string to_string(Eisenstein z)
{
    std::ostringstream os;
    if (z.b == 0)
        os << z.a;
    else if (z.a == 0)
        os << z.b << "w";
    else
        os << z.a << (z.b < 0 ? "-" : "+") << (z.b < 0 ? -z.b : z.b) << "w";
    return os.str();
}

int RepRing::class_of(const Perm& x) const
{
    int i = catalog_group(group).index_of(x);
    if (i < 0)
        throw ValidationError("element is not in " + std::string(to_string(group)));
    return element_class[i];
}

const RepRing& rep_ring(GroupTag tag)
{
    require_supported(tag);
    static std::mutex mu;
    static std::map<GroupTag, RepRing> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(tag);
    if (it == cache.end()) {
        RepRing r = pinned_table(tag);
        fill_and_verify(r);
        it = cache.emplace(tag, std::move(r)).first;
    }
    return it->second;
}

InductionBlock induction_matrix(GroupTag source, GroupTag target, int embedding)
{
    require_supported(source);
    require_supported(target);
    if (!supported_inclusion(source, target))
        throw ValidationError("unsupported inclusion " + std::string(to_string(source)) + " -> " +
                              std::string(to_string(target)));
    const RepRing& rh = rep_ring(source);
    const RepRing& rg = rep_ring(target);
    const FiniteGroup& g = catalog_group(target);
    const FiniteGroup& h = catalog_group(source);
    std::vector<int> iota = embedding_map(source, target, embedding);
    std::vector<int> preimage(g.order(), -1);
    for (int i = 0; i < h.order(); ++i)
        preimage[iota[i]] = i;

    InductionBlock out{source, target, embedding, IntMatrix(rg.rank(), rh.rank())};
    for (int j = 0; j < rh.rank(); ++j) {
        for (int i = 0; i < rg.rank(); ++i) {
            // <χ_j, Res ψ_i>_H
            Eisenstein frob{};
            for (int x = 0; x < h.order(); ++x)
                frob = frob + rh.chars[j][rh.element_class[x]] * rg.chars[i][rg.element_class[iota[x]]].conj();
            if (!frob.is_integer() || frob.a % h.order() != 0)
                throw InvariantError("Frobenius reciprocity gives a non-integer multiplicity");
            long long m = frob.a / h.order();

            // <Ind χ_j, ψ_i>_G with Ind χ_j(y) = 1/|H| Σ_x χ_j°(x y x^-1)
            Eisenstein direct{};
            for (int y = 0; y < g.order(); ++y) {
                Eisenstein ind{};
                for (int x = 0; x < g.order(); ++x) {
                    int c = preimage[g.mul(g.mul(x, y), g.inv(x))];
                    if (c >= 0)
                        ind = ind + rh.chars[j][rh.element_class[c]];
                }
                direct = direct + ind * rg.chars[i][rg.element_class[y]].conj();
            }
            long long scale = static_cast<long long>(g.order()) * h.order();
            if (direct != E(m * scale))
                throw InvariantError("induced character disagrees with Frobenius reciprocity");
            out.matrix(i, j) = m;
        }
        long long deg = 0;
        for (int i = 0; i < rg.rank(); ++i)
            deg += out.matrix(i, j) * rg.degree(i);
        if (deg != (g.order() / h.order()) * rh.degree(j))
            throw InvariantError("induced degree is not [G:H] times the degree");
    }
    return out;
}

IntMatrix splitting_basis(GroupTag tag)
{
    require_supported(tag);
    switch (tag) {
    case GroupTag::C1:
        return IntMatrix::identity(1);
    case GroupTag::C2:
        // reg, sgn
        return IntMatrix::from_rows({{1, 0}, {1, 1}});
    case GroupTag::C3:
        // reg, chi1, chi2
        return IntMatrix::from_rows({{1, 0, 0}, {1, 1, 0}, {1, 0, 1}});
    case GroupTag::D2:
        // reg, alpha, beta, gamma
        return IntMatrix::from_rows({{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}});
    case GroupTag::D3:
        // reg, sign + std, std
        return IntMatrix::from_rows({{1, 0, 0}, {1, 1, 0}, {2, 1, 1}});
    case GroupTag::A4:
        // reg, tau, lambda + tau, lambdabar + tau
        return IntMatrix::from_rows({{1, 0, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}, {3, 1, 1, 1}});
    default:
        break;
    }
    throw InvariantError("unreachable");
}

std::vector<int> splitting_labels(GroupTag tag)
{
    require_supported(tag);
    switch (tag) {
    case GroupTag::C1: return {1};
    case GroupTag::C2: return {1, 2};
    case GroupTag::C3: return {1, 3, 3};
    case GroupTag::D2: return {1, 2, 2, 2};
    case GroupTag::D3: return {1, 2, 3};
    case GroupTag::A4: return {1, 2, 3, 3};
    default: break;
    }
    throw InvariantError("unreachable");
}

}  // namespace tsr
