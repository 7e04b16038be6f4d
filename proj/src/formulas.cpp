#include "tsr/errors.hpp"
#include "tsr/series.hpp"

namespace tsr {

namespace {

void require_odd_prime(int ell)
{
    if (!is_prime(ell))
        throw ValidationError("ell must be prime");
    if (ell == 2)
        throw ValidationError("the formula is stated for odd primes only");
}

long long binomial(int n, int k)
{
    long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

// Sum of C(r, k) over exterior degrees k of the parity of q; `twist` selects
// which Z/2-eigenspace is kept (-1: all, 0: invariants, 1: sign).
int farrell_tate_count(int r, int q, int ell, int twist)
{
    require_odd_prime(ell);
    if (r < 0)
        throw ValidationError("rank r must be non-negative");
    long long total = 0;
    for (int k = mod(q, 2); k <= r; k += 2) {
        if (twist >= 0) {
            // a2^j ⊗ (k-form) with 2j + k = q; Z/2 acts by (-1)^(j + k)
            int j = (q - k) / 2;
            if (mod(j + k, 2) != twist)
                continue;
        }
        total += binomial(r, k);
    }
    return static_cast<int>(total);
}

}  // namespace

int coxeter_homology(int m, int ell, int q)
{
    require_odd_prime(ell);
    if (m < 0)
        throw ValidationError("component count must be non-negative");
    return m * dihedral_mod_ell_homology(ell, ell, q);
}

int triangle_group_homology(int p, int q, int r, int ell, int deg)
{
    require_odd_prime(ell);
    if (p < 2 || q < 2 || r < 2)
        throw ValidationError("triangle group orders must be at least 2");
    if (deg < 1)
        throw ValidationError("degree must be at least 1");
    // 1/p + 1/q + 1/r <= 1
    if (q * r + p * r + p * q > p * q * r)
        throw ValidationError("spherical triangle group: 1/p + 1/q + 1/r > 1");
    return dihedral_mod_ell_homology(p, ell, deg) + dihedral_mod_ell_homology(q, ell, deg) +
           dihedral_mod_ell_homology(r, ell, deg);
}

int sl2_mod2_dims(int beta1, int beta2, int q)
{
    if (beta1 < 0 || beta2 < 0)
        throw ValidationError("Betti numbers must be non-negative");
    if (q < 1)
        throw ValidationError("degree must be at least 1");
    if (q == 1)
        return beta1;
    switch ((q - 2) % 4) {
    case 0: return beta1 + beta2 + 1;
    case 1: return beta1 + beta2 + 3;
    case 2: return beta1 + beta2 + 2;
    default: return beta1 + beta2;
    }
}

E2Page e2_page(const SubgroupCensus& census, int chi_Xs, const XsRows& xs)
{
    census.validate();
    if (xs.E01 < 0 || xs.E11 < 0 || xs.E03 < 0 || xs.E13 < 0 || xs.H2Xsprime < 0)
        throw ValidationError("E2 inputs must be non-negative");
    int sign_v = census.v > 0 ? 1 : 0;
    E2Page p;
    p.a1 = chi_Xs - 1 + census.beta1 + census.c;
    p.a2 = census.beta2 + census.c;
    p.a3 = census.beta1 + census.v - sign_v;
    if (p.a1 < 0 || p.a2 < 0 || p.a3 < 0)
        throw ValidationError("inconsistent inputs: a1 = " + std::to_string(p.a1) + ", a2 = " + std::to_string(p.a2) +
                              ", a3 = " + std::to_string(p.a3));
    p.rows[3] = {xs.E03, xs.E13 + p.a1, p.a2};
    p.rows[2] = {xs.H2Xsprime + 1 - sign_v, p.a3, census.beta2};
    p.rows[1] = {xs.E01, xs.E11 + p.a1, p.a2};
    p.rows[0] = {1, census.beta1, census.beta2};
    return p;
}

int farrell_tate_sl2_dims(int r, bool invariant, int q, int ell)
{
    return farrell_tate_count(r, q, ell, invariant ? 0 : -1);
}

int farrell_tate_sl2_sign_dims(int r, int q, int ell) { return farrell_tate_count(r, q, ell, 1); }

}  // namespace tsr
