// Normalized bar complex over F_ell. Homology dimensions are read off the
// ranks of the coboundaries, reduced column by column with clearing.
#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "tsr/errors.hpp"
#include "tsr/finite_groups.hpp"

namespace tsr {

namespace {

using Entry = std::pair<std::uint32_t, std::uint32_t>;  // (row, coefficient)
using Column = std::vector<Entry>;

std::uint32_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint32_t p)
{
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1)
            r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

long long ipow(long long b, int e)
{
    long long r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

// Cells of degree q are q-tuples of non-identity elements, encoded base n-1
// with the first entry most significant. Digit d stands for element d+1.
struct BarComplex {
    const FiniteGroup& g;
    int ell;
    int base;

    std::vector<int> decode(std::uint32_t code, int q) const
    {
        std::vector<int> t(q);
        for (int i = q - 1; i >= 0; --i) {
            t[i] = static_cast<int>(code % base) + 1;
            code /= base;
        }
        return t;
    }

    std::uint32_t encode(const std::vector<int>& t) const
    {
        std::uint32_t c = 0;
        for (int x : t)
            c = c * base + static_cast<std::uint32_t>(x - 1);
        return c;
    }

    // Coboundary of the dual basis cochain of the q-cell x, as a column over (q+1)-cells.
    Column coboundary(std::uint32_t code, int q) const
    {
        std::vector<int> x = decode(code, q);
        std::vector<std::pair<std::uint32_t, int>> raw;
        std::vector<int> y(q + 1);
        for (int h = 1; h < g.order(); ++h) {
            y[0] = h;
            std::copy(x.begin(), x.end(), y.begin() + 1);
            raw.emplace_back(encode(y), 1);
            std::copy(x.begin(), x.end(), y.begin());
            y[q] = h;
            raw.emplace_back(encode(y), (q + 1) % 2 ? -1 : 1);
        }
        for (int i = 1; i <= q; ++i) {
            int xi = x[i - 1];
            for (int a = 1; a < g.order(); ++a) {
                if (a == xi)
                    continue;
                for (int j = 0; j < i - 1; ++j)
                    y[j] = x[j];
                y[i - 1] = a;
                y[i] = g.mul(g.inv(a), xi);
                for (int j = i; j < q; ++j)
                    y[j + 1] = x[j];
                raw.emplace_back(encode(y), i % 2 ? -1 : 1);
            }
        }
        std::sort(raw.begin(), raw.end());
        Column col;
        for (std::size_t i = 0; i < raw.size();) {
            std::size_t j = i;
            long long s = 0;
            while (j < raw.size() && raw[j].first == raw[i].first)
                s += raw[j++].second;
            s %= ell;
            if (s < 0)
                s += ell;
            if (s)
                col.emplace_back(raw[i].first, static_cast<std::uint32_t>(s));
            i = j;
        }
        return col;
    }
};

// a <- a - f * b, both sorted by row
Column axpy(const Column& a, const Column& b, std::uint32_t f, std::uint32_t p)
{
    Column out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            std::uint32_t v = static_cast<std::uint32_t>((p - static_cast<std::uint64_t>(f) * b[j].second % p) % p);
            if (v)
                out.emplace_back(b[j].first, v);
            ++j;
        } else {
            std::uint64_t v = (a[i].second + p - static_cast<std::uint64_t>(f) * b[j].second % p) % p;
            if (v)
                out.emplace_back(a[i].first, static_cast<std::uint32_t>(v));
            ++i;
            ++j;
        }
    }
    return out;
}

struct ReductionResult {
    int rank = 0;
    std::vector<std::uint32_t> pivot_rows;
};

// Rank of the coboundary from degree q, skipping the columns listed in `cleared`.
ReductionResult reduce_coboundary(const BarComplex& bar, int q, const std::vector<char>& cleared)
{
    std::uint32_t ncols = static_cast<std::uint32_t>(ipow(bar.base, q));
    std::unordered_map<std::uint32_t, Column> pivots;
    ReductionResult res;
    for (std::uint32_t c = 0; c < ncols; ++c) {
        if (!cleared.empty() && cleared[c])
            continue;
        Column col = bar.coboundary(c, q);
        while (!col.empty()) {
            auto it = pivots.find(col.back().first);
            if (it == pivots.end())
                break;
            const Column& piv = it->second;
            std::uint32_t f = static_cast<std::uint32_t>(static_cast<std::uint64_t>(col.back().second) *
                                                         pow_mod(piv.back().second, bar.ell - 2, bar.ell) %
                                                         bar.ell);
            col = axpy(col, piv, f, bar.ell);
        }
        if (!col.empty()) {
            res.pivot_rows.push_back(col.back().first);
            pivots.emplace(col.back().first, std::move(col));
            ++res.rank;
        }
    }
    return res;
}

// Rank over F_p of a set of sparse columns.
int sparse_rank(std::vector<Column> cols, std::uint32_t p)
{
    std::unordered_map<std::uint32_t, Column> pivots;
    int rank = 0;
    for (auto& col : cols) {
        while (!col.empty()) {
            auto it = pivots.find(col.back().first);
            if (it == pivots.end())
                break;
            const Column& piv = it->second;
            std::uint32_t f = static_cast<std::uint32_t>(static_cast<std::uint64_t>(col.back().second) *
                                                         pow_mod(piv.back().second, p - 2, p) % p);
            col = axpy(col, piv, f, p);
        }
        if (!col.empty()) {
            std::uint32_t row = col.back().first;
            pivots.emplace(row, std::move(col));
            ++rank;
        }
    }
    return rank;
}

// Boundary of the (q+1)-cell y as a column over q-cells, mod ell.
Column boundary(const BarComplex& bar, const std::vector<int>& y)
{
    int q = static_cast<int>(y.size()) - 1;
    std::vector<std::pair<std::uint32_t, int>> raw;
    std::vector<int> face;
    for (int i = 0; i <= q + 1; ++i) {
        face.clear();
        bool degenerate = false;
        for (int j = 0; j <= q; ++j) {
            if (i >= 1 && i <= q && j == i - 1) {
                int prod = bar.g.mul(y[j], y[j + 1]);
                if (prod == 0)
                    degenerate = true;
                face.push_back(prod);
                ++j;
                continue;
            }
            if ((i == 0 && j == 0) || (i == q + 1 && j == q))
                continue;
            face.push_back(y[j]);
        }
        if (!degenerate)
            raw.emplace_back(bar.encode(face), i % 2 ? -1 : 1);
    }
    std::sort(raw.begin(), raw.end());
    Column col;
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        long long s = 0;
        while (j < raw.size() && raw[j].first == raw[i].first)
            s += raw[j++].second;
        s %= bar.ell;
        if (s < 0)
            s += bar.ell;
        if (s)
            col.emplace_back(raw[i].first, static_cast<std::uint32_t>(s));
        i = j;
    }
    return col;
}

// Basis of the q-cycles (q >= 1) of the bar complex of h, mapped into the bar complex of g.
std::vector<Column> cycles_in(const FiniteGroup& g, const FiniteGroup& h, int ell, int q)
{
    BarComplex hb{h, ell, h.order() - 1};
    BarComplex gb{g, ell, g.order() - 1};
    std::vector<int> to_g(h.order());
    for (int i = 0; i < h.order(); ++i)
        to_g[i] = g.index_of(h.element(i));
    std::size_t ncells = static_cast<std::size_t>(ipow(hb.base, q));
    std::size_t nfaces = static_cast<std::size_t>(ipow(hb.base, q - 1));
    // boundary matrix d_q of h: rows = q-cells, columns = (q-1)-cells
    std::vector<std::vector<long long>> m(ncells, std::vector<long long>(nfaces, 0));
    for (std::size_t c = 0; c < ncells; ++c)
        for (auto [r, x] : boundary(hb, hb.decode(static_cast<std::uint32_t>(c), q)))
            m[c][r] = x;
    // kernel of the row-vector map v -> v * m, by elimination on [m | I]
    std::vector<std::vector<long long>> aug(ncells, std::vector<long long>(nfaces + ncells, 0));
    for (std::size_t i = 0; i < ncells; ++i) {
        std::copy(m[i].begin(), m[i].end(), aug[i].begin());
        aug[i][nfaces + i] = 1;
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < nfaces && rank < ncells; ++c) {
        std::size_t piv = ncells;
        for (std::size_t r = rank; r < ncells; ++r)
            if (aug[r][c] % ell) {
                piv = r;
                break;
            }
        if (piv == ncells)
            continue;
        std::swap(aug[rank], aug[piv]);
        long long inv = pow_mod(static_cast<std::uint64_t>((aug[rank][c] % ell + ell) % ell), ell - 2, ell);
        for (auto& v : aug[rank])
            v = (v % ell + ell) % ell * inv % ell;
        for (std::size_t r = 0; r < ncells; ++r) {
            if (r == rank || aug[r][c] % ell == 0)
                continue;
            long long f = (aug[r][c] % ell + ell) % ell;
            for (std::size_t j = 0; j < aug[r].size(); ++j)
                aug[r][j] = ((aug[r][j] - f * aug[rank][j]) % ell + ell) % ell;
        }
        ++rank;
    }
    std::vector<Column> out;
    for (std::size_t r = rank; r < ncells; ++r) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
        for (std::size_t c = 0; c < ncells; ++c) {
            long long v = (aug[r][nfaces + c] % ell + ell) % ell;
            if (!v)
                continue;
            std::vector<int> t = hb.decode(static_cast<std::uint32_t>(c), q);
            for (int& x : t)
                x = to_g[x];
            entries.emplace_back(gb.encode(t), static_cast<std::uint32_t>(v));
        }
        std::sort(entries.begin(), entries.end());
        out.push_back(std::move(entries));
    }
    return out;
}

}  // namespace

HomologyDims mod_ell_homology_bruteforce(const FiniteGroup& g, int ell, int q_max)
{
    if (!is_prime(ell))
        throw ValidationError("ell must be prime");
    if (q_max < 0)
        throw ValidationError("q_max must be non-negative");
    double cost = std::pow(static_cast<double>(g.order()), q_max + 1);
    if (cost > static_cast<double>(kBarResolutionBudget))
        throw ValidationError("bar resolution budget exceeded: |G|^(q_max+1) = " +
                              std::to_string(static_cast<long long>(cost)) + " > " +
                              std::to_string(kBarResolutionBudget));
    HomologyDims out{ell, {}};
    if (g.order() == 1) {
        out.dims.assign(q_max + 1, 0);
        out.dims[0] = 1;
        return out;
    }
    BarComplex bar{g, ell, g.order() - 1};
    // rank_in[q] = rank of the coboundary into degree q
    int rank_in = 0;
    std::vector<char> cleared;
    for (int q = 0; q <= q_max; ++q) {
        ReductionResult r = reduce_coboundary(bar, q, cleared);
        long long cells = ipow(bar.base, q);
        out.dims.push_back(static_cast<int>(cells - rank_in - r.rank));
        rank_in = r.rank;
        cleared.assign(static_cast<std::size_t>(ipow(bar.base, q + 1)), 0);
        for (auto row : r.pivot_rows)
            cleared[row] = 1;
    }
    return out;
}

int corestriction_rank_bruteforce(const FiniteGroup& g, std::span<const FiniteGroup> subgroups, int ell, int q)
{
    if (!is_prime(ell))
        throw ValidationError("ell must be prime");
    if (q < 1)
        throw ValidationError("corestriction rank needs q >= 1");
    if (std::pow(static_cast<double>(g.order()), q + 1) > static_cast<double>(kBarResolutionBudget))
        throw ValidationError("bar resolution budget exceeded");
    for (const auto& h : subgroups)
        if (!g.contains(h))
            throw ValidationError("corestriction from a group that is not a subgroup");
    if (g.order() == 1)
        return 0;
    BarComplex gb{g, ell, g.order() - 1};
    std::vector<Column> boundaries;
    std::uint32_t nup = static_cast<std::uint32_t>(ipow(gb.base, q + 1));
    for (std::uint32_t c = 0; c < nup; ++c)
        boundaries.push_back(boundary(gb, gb.decode(c, q + 1)));
    std::vector<Column> all = boundaries;
    for (const auto& h : subgroups) {
        if (h.order() == 1)
            continue;
        auto z = cycles_in(g, h, ell, q);
        all.insert(all.end(), z.begin(), z.end());
    }
    return sparse_rank(std::move(all), ell) - sparse_rank(std::move(boundaries), ell);
}

}  // namespace tsr
