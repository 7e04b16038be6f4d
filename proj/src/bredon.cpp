#include <algorithm>
#include <map>
#include <sstream>

#include "tsr/bredon.hpp"
#include "tsr/errors.hpp"

namespace tsr {

namespace {

const std::vector<std::string>& split_names(GroupTag t)
{
    static const std::map<GroupTag, std::vector<std::string>> names = {
        {GroupTag::C1, {"reg"}},
        {GroupTag::C2, {"reg", "sgn"}},
        {GroupTag::C3, {"reg", "chi1", "chi2"}},
        {GroupTag::D2, {"reg", "alpha", "beta", "gamma"}},
        {GroupTag::D3, {"reg", "sign+std", "std"}},
        {GroupTag::A4, {"reg", "tau", "lambda+tau", "lambdabar+tau"}},
    };
    return names.at(t);
}

int matrix_rank(const IntMatrix& m)
{
    if (m.rows == 0 || m.cols == 0)
        return 0;
    return smith_normal_form(m).rank();
}

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos)
        return "";
    auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

long long parse_positive(const std::string& s, std::string_view whole)
{
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size() && v >= 1)
            return v;
    } catch (const std::exception&) {
    }
    throw ValidationError("cannot parse abelian group '" + std::string(whole) + "'");
}

}  // namespace

AbelianGroup make_abelian_group(int free_rank, std::vector<long long> torsion)
{
    if (free_rank < 0)
        throw ValidationError("free rank must be non-negative");
    std::vector<long long> t;
    for (long long d : torsion) {
        if (d < 1)
            throw ValidationError("torsion orders must be positive");
        if (d > 1)
            t.push_back(d);
    }
    AbelianGroup g{free_rank, {}};
    if (t.empty())
        return g;
    IntMatrix m(static_cast<int>(t.size()), static_cast<int>(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i)
        m(static_cast<int>(i), static_cast<int>(i)) = t[i];
    for (long long d : smith_normal_form(m).invariant_factors())
        if (d > 1)
            g.torsion.push_back(d);
    return g;
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b)
{
    std::vector<long long> t = a.torsion;
    t.insert(t.end(), b.torsion.begin(), b.torsion.end());
    return make_abelian_group(a.free_rank + b.free_rank, t);
}

std::string to_string(const AbelianGroup& g)
{
    std::vector<std::string> parts;
    if (g.free_rank == 1)
        parts.push_back("Z");
    else if (g.free_rank > 1)
        parts.push_back("Z^" + std::to_string(g.free_rank));
    for (long long d : g.torsion)
        parts.push_back("Z/" + std::to_string(d));
    if (parts.empty())
        return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
        out += " ⊕ " + parts[i];
    return out;
}

AbelianGroup parse_abelian_group(std::string_view text)
{
    std::string s = trim(text);
    if (s == "0")
        return {};
    int free = 0;
    std::vector<long long> torsion;
    const std::string sep = "⊕";
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        std::string part = trim(std::string_view(s).substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (part == "Z")
            free += 1;
        else if (part.rfind("Z^", 0) == 0)
            free += static_cast<int>(parse_positive(part.substr(2), text));
        else if (part.rfind("Z/", 0) == 0)
            torsion.push_back(parse_positive(part.substr(2), text));
        else
            throw ValidationError("cannot parse abelian group '" + std::string(text) + "'");
        if (next == std::string::npos)
            break;
        pos = next + sep.size();
    }
    return make_abelian_group(free, torsion);
}

void check_chain_complex(const ChainComplex& c)
{
    if (static_cast<int>(c.boundary.size()) != std::max(c.top(), 0))
        throw InvariantError("chain complex needs one boundary per positive degree");
    for (int n = 1; n <= c.top(); ++n) {
        const IntMatrix& d = c.boundary[n - 1];
        if (d.rows != c.rank(n - 1) || d.cols != c.rank(n))
            throw InvariantError("boundary " + std::to_string(n) + " has the wrong shape");
    }
    for (int n = 2; n <= c.top(); ++n) {
        const IntMatrix& a = c.boundary[n - 2];
        const IntMatrix& b = c.boundary[n - 1];
        if (a.cols == 0 || b.cols == 0 || a.rows == 0)
            continue;
        if (!(a * b).is_zero())
            throw InvariantError("boundary maps do not compose to zero in degree " + std::to_string(n));
    }
}

std::vector<AbelianGroup> homology(const ChainComplex& c)
{
    check_chain_complex(c);
    std::vector<AbelianGroup> out;
    for (int n = 0; n <= c.top(); ++n) {
        int r_in = n >= 1 ? matrix_rank(c.boundary[n - 1]) : 0;
        int r_out = 0;
        std::vector<long long> torsion;
        if (n < c.top()) {
            const IntMatrix& d = c.boundary[n];
            if (d.rows > 0 && d.cols > 0) {
                auto snf = smith_normal_form(d);
                r_out = snf.rank();
                for (long long f : snf.invariant_factors())
                    if (f > 1)
                        torsion.push_back(f);
            }
        }
        out.push_back(make_abelian_group(c.rank(n) - r_in - r_out, torsion));
    }
    return out;
}

BredonComplex bredon_complex(const OrbitComplex& x)
{
    validate_complex(x);
    if (!x.rigid)
        throw ValidationError("Bredon complex needs a rigid complex");
    int top = x.dimension();
    if (top > 2)
        throw ValidationError("Bredon complex supports dimension at most 2");

    BredonComplex b;
    int levels = std::max(top, 0) + 1;
    b.cells.resize(levels);
    b.chains.generators.resize(levels);
    std::map<std::string, int> offset;
    for (const auto& c : x.cells) {
        if (c.self_identified)
            throw ValidationError("Bredon complex: cell " + c.id + " is self-identified");
        if (c.dim == 2 && c.stabilizer != GroupTag::C1)
            throw ValidationError("Bredon complex: 2-cell " + c.id + " must have trivial stabilizer");
        const RepRing& r = rep_ring(c.stabilizer);
        offset[c.id] = static_cast<int>(b.chains.generators[c.dim].size());
        b.cells[c.dim].emplace_back(c.id, c.stabilizer);
        for (const auto& name : r.names)
            b.chains.generators[c.dim].push_back(c.id + ":" + name);
    }
    for (int n = 1; n < levels; ++n)
        b.chains.boundary.emplace_back(b.chains.rank(n - 1), b.chains.rank(n));

    struct End {
        std::string face;
        int embedding;
        long long coefficient;
    };
    for (const auto& c : x.cells) {
        if (c.dim == 0)
            continue;
        auto records = x.faces_of(c.id);
        bool explicit_signs = std::any_of(records.begin(), records.end(), [](const Incidence* i) { return i->sign != 0; });
        std::vector<End> ends;
        if (explicit_signs) {
            for (const Incidence* inc : records) {
                if (inc->sign == 0)
                    throw ValidationError("cell " + c.id + " mixes signed and unsigned incidences");
                ends.push_back({inc->face, inc->embedding, static_cast<long long>(inc->sign) * inc->multiplicity});
            }
        } else {
            if (c.dim == 2)
                throw ValidationError("incidences of 2-cell " + c.id + " need explicit signs");
            for (const Incidence* inc : records)
                for (int k = 0; k < inc->multiplicity; ++k)
                    ends.push_back({inc->face, inc->embedding, 0});
            if (ends.size() != 2)
                throw ValidationError("edge " + c.id + " does not have two ends");
            std::sort(ends.begin(), ends.end(), [](const End& p, const End& q) {
                return std::tie(p.face, p.embedding) < std::tie(q.face, q.embedding);
            });
            ends[0].coefficient = -1;
            ends[1].coefficient = 1;
        }
        IntMatrix& d = b.chains.boundary[c.dim - 1];
        int col0 = offset.at(c.id);
        for (const End& e : ends) {
            const OrbitCell& f = x.cell(e.face);
            InductionBlock ind = induction_matrix(c.stabilizer, f.stabilizer, e.embedding);
            int row0 = offset.at(f.id);
            for (int i = 0; i < ind.matrix.rows; ++i)
                for (int j = 0; j < ind.matrix.cols; ++j)
                    d(row0 + i, col0 + j) += e.coefficient * ind.matrix(i, j);
        }
    }
    check_chain_complex(b.chains);
    return b;
}

BlockSplit split_blocks(const BredonComplex& b)
{
    int levels = static_cast<int>(b.cells.size());
    std::vector<IntMatrix> basis(levels), basis_inv(levels);
    std::vector<std::vector<int>> labels(levels);
    std::vector<std::vector<std::string>> names(levels);
    for (int n = 0; n < levels; ++n) {
        int size = b.chains.rank(n);
        basis[n] = IntMatrix(size, size);
        int at = 0;
        for (const auto& [id, tag] : b.cells[n]) {
            IntMatrix p = splitting_basis(tag);
            for (int i = 0; i < p.rows; ++i)
                for (int j = 0; j < p.cols; ++j)
                    basis[n](at + i, at + j) = p(i, j);
            for (int l : splitting_labels(tag))
                labels[n].push_back(l);
            for (const auto& s : split_names(tag))
                names[n].push_back(id + ":" + s);
            at += p.rows;
        }
        if (at != size)
            throw InvariantError("cell list does not match the generators");
        basis_inv[n] = size == 0 ? IntMatrix() : inverse_unimodular(basis[n]);
    }

    std::vector<IntMatrix> changed;
    for (int n = 1; n < levels; ++n) {
        const IntMatrix& d = b.chains.boundary[n - 1];
        if (d.rows == 0 || d.cols == 0) {
            changed.push_back(d);
            continue;
        }
        IntMatrix m = basis_inv[n - 1] * d * basis[n];
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j)
                if (m(i, j) != 0 && labels[n - 1][i] != labels[n][j])
                    throw InvariantError("residual off-block entry " + std::to_string(m(i, j)) + " from " +
                                         names[n][j] + " to " + names[n - 1][i]);
        changed.push_back(m);
    }

    auto extract = [&](int label) {
        ChainComplex c;
        std::vector<std::vector<int>> keep(levels);
        for (int n = 0; n < levels; ++n) {
            c.generators.emplace_back();
            for (int i = 0; i < static_cast<int>(labels[n].size()); ++i)
                if (labels[n][i] == label) {
                    keep[n].push_back(i);
                    c.generators[n].push_back(names[n][i]);
                }
        }
        for (int n = 1; n < levels; ++n) {
            IntMatrix m(static_cast<int>(keep[n - 1].size()), static_cast<int>(keep[n].size()));
            for (int i = 0; i < m.rows; ++i)
                for (int j = 0; j < m.cols; ++j)
                    m(i, j) = changed[n - 1](keep[n - 1][i], keep[n][j]);
            c.boundary.push_back(m);
        }
        check_chain_complex(c);
        return c;
    };
    return {extract(1), extract(2), extract(3)};
}

BredonFormula bredon_homology_formula(const SubgroupCensus& c)
{
    c.validate();
    int three = 2 * c.o3() + c.iota3();
    return {make_abelian_group(c.z2, std::vector<long long>(c.d2 / 2, 2)), AbelianGroup::free(c.o2()),
            AbelianGroup::free(three), AbelianGroup::free(three)};
}

KHomology k_homology(const SubgroupCensus& c, const AbelianGroup& H1_orbit, int beta2)
{
    c.validate();
    if (beta2 < 0)
        throw ValidationError("beta2 must be non-negative");
    int three = 2 * c.o3() + c.iota3();
    AbelianGroup k0 = make_abelian_group(1 + beta2 + c.z2 + three, std::vector<long long>(c.d2 / 2, 2));
    AbelianGroup k1 = direct_sum(H1_orbit, AbelianGroup::free(c.o2() + three));
    return {k0, k1};
}

std::map<int, int> chen_ruan_dims(const SubgroupCensus& c, const std::map<int, int>& quotient_dims, bool complexified)
{
    c.validate();
    std::map<int, int> out = quotient_dims;
    for (const auto& [d, v] : out)
        if (v < 0)
            throw ValidationError("quotient dimension in degree " + std::to_string(d) + " is negative");
    auto add = [&out](int degree, int amount) {
        if (amount != 0)
            out[degree] += amount;
    };
    int circles = c.lambda4 - c.lambda4star + 2 * c.lambda6 - c.lambda6star;
    if (complexified) {
        add(2, c.lambda4 + 2 * c.lambda6 - c.lambda6star);
        add(3, circles);
    } else {
        add(0, c.lambda4star + circles);
        add(1, circles);
    }
    return out;
}

}  // namespace tsr
