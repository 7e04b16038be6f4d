#include <algorithm>
#include <map>

#include "tsr/errors.hpp"
#include "tsr/linalg.hpp"
#include "tsr/series.hpp"

namespace tsr {

namespace {

void require_supported(GroupTag g)
{
    switch (g) {
    case GroupTag::C1:
    case GroupTag::C2:
    case GroupTag::C3:
    case GroupTag::D2:
    case GroupTag::D3:
        return;
    default:
        throw ValidationError("graph cohomology oracle: unsupported stabilizer " + std::string(to_string(g)));
    }
}

// x, y dual to the generators a, b of D2; the three C2 classes are <a>, <b>, <ab>.
const int kD2Embedding[3][2] = {{1, 0}, {0, 1}, {1, 1}};

long long ipow(int base, int e) { return e == 0 ? 1 : (base == 0 ? 0 : 1); }

}  // namespace

int stabilizer_cohomology_dim(GroupTag g, int ell, int q)
{
    require_supported(g);
    if (!is_prime(ell))
        throw ValidationError("ell must be prime");
    if (q < 0)
        throw ValidationError("degree must be non-negative");
    if (q == 0)
        return 1;
    if (tag_order(g) % ell != 0)
        return 0;
    switch (g) {
    case GroupTag::C2:
    case GroupTag::C3:
        return 1;
    case GroupTag::D2:
        return q + 1;
    case GroupTag::D3:
        if (ell == 2)
            return 1;
        return q % 4 == 0 || q % 4 == 3 ? 1 : 0;
    default:
        return 0;
    }
}

std::vector<std::vector<long long>> restriction_matrix(GroupTag h, GroupTag g, int embedding, int ell, int q)
{
    int dh = stabilizer_cohomology_dim(h, ell, q);
    int dg = stabilizer_cohomology_dim(g, ell, q);
    std::vector<std::vector<long long>> m(dh, std::vector<long long>(dg, 0));
    if (dh == 0 || dg == 0)
        return m;
    if (q == 0 || h == g) {
        if (dh != dg)
            throw InvariantError("restriction between equal groups changes dimension");
        for (int i = 0; i < dh; ++i)
            m[i][i] = 1;
        return m;
    }
    if (h == GroupTag::C2 && g == GroupTag::D2) {
        if (embedding < 0 || embedding > 2)
            throw ValidationError("C2 has three embeddings into D2, got " + std::to_string(embedding));
        auto [i, j] = std::pair{kD2Embedding[embedding][0], kD2Embedding[embedding][1]};
        for (int k = 0; k <= q; ++k)
            m[0][k] = ipow(i, q - k) * ipow(j, k);
        return m;
    }
    if ((h == GroupTag::C2 || h == GroupTag::C3) && g == GroupTag::D3) {
        m[0][0] = 1;
        return m;
    }
    throw ValidationError("graph cohomology oracle: no restriction " + std::string(to_string(g)) + " -> " +
                          std::string(to_string(h)));
}

std::vector<int> equivariant_graph_cohomology_oracle(const OrbitComplex& x, int ell, int q_lo, int q_hi)
{
    validate_complex(x);
    if (!is_prime(ell))
        throw ValidationError("ell must be prime");
    if (q_lo < 0 || q_hi < q_lo)
        throw ValidationError("invalid degree range");
    if (x.dimension() > 1)
        throw ValidationError("graph cohomology oracle needs a complex of dimension at most 1");

    std::vector<const OrbitCell*> vertices, edges;
    std::map<std::string, int> vindex;
    for (const auto& c : x.cells) {
        require_supported(c.stabilizer);
        if (c.dim == 0) {
            vindex[c.id] = static_cast<int>(vertices.size());
            vertices.push_back(&c);
        } else {
            if (c.self_identified)
                throw ValidationError("graph cohomology oracle: edge " + c.id + " is self-identified");
            edges.push_back(&c);
        }
    }

    struct End {
        std::string vertex;
        int embedding;
    };
    std::vector<std::vector<End>> ends(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        for (const Incidence* inc : x.faces_of(edges[e]->id))
            for (int k = 0; k < inc->multiplicity; ++k)
                ends[e].push_back({inc->face, inc->embedding});
        if (ends[e].size() != 2)
            throw ValidationError("edge " + edges[e]->id + " does not have two ends");
        std::sort(ends[e].begin(), ends[e].end(), [](const End& a, const End& b) {
            return std::tie(a.vertex, a.embedding) < std::tie(b.vertex, b.embedding);
        });
    }

    // d^q : ⊕_v H^q(Γ_v) -> ⊕_e H^q(Γ_e)
    auto differential = [&](int q, int& src, int& dst) {
        std::vector<int> voff(vertices.size() + 1, 0), eoff(edges.size() + 1, 0);
        for (std::size_t v = 0; v < vertices.size(); ++v)
            voff[v + 1] = voff[v] + stabilizer_cohomology_dim(vertices[v]->stabilizer, ell, q);
        for (std::size_t e = 0; e < edges.size(); ++e)
            eoff[e + 1] = eoff[e] + stabilizer_cohomology_dim(edges[e]->stabilizer, ell, q);
        src = voff.back();
        dst = eoff.back();
        std::vector<std::vector<long long>> d(dst, std::vector<long long>(src, 0));
        for (std::size_t e = 0; e < edges.size(); ++e) {
            for (int side = 0; side < 2; ++side) {
                const End& end = ends[e][side];
                int v = vindex.at(end.vertex);
                auto r = restriction_matrix(edges[e]->stabilizer, vertices[v]->stabilizer, end.embedding, ell, q);
                long long s = side == 0 ? -1 : 1;
                for (std::size_t i = 0; i < r.size(); ++i)
                    for (std::size_t j = 0; j < r[i].size(); ++j)
                        d[eoff[e] + i][voff[v] + j] += s * r[i][j];
            }
        }
        return d;
    };

    std::vector<int> out;
    for (int n = q_lo; n <= q_hi; ++n) {
        int src = 0, dst = 0;
        auto d = differential(n, src, dst);
        int kernel = src - (dst == 0 ? 0 : rank_mod_p(d, ell));
        int coker = 0;
        if (n >= 1) {
            int s1 = 0, t1 = 0;
            auto d1 = differential(n - 1, s1, t1);
            coker = t1 - (t1 == 0 ? 0 : rank_mod_p(d1, ell));
        }
        out.push_back(kernel + coker);
    }
    return out;
}

}  // namespace tsr
