#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "tsr/complexes.hpp"

namespace tsr {

using Rational = boost::rational<long long>;

/// Dense polynomial in t with rational coefficients; c[i] multiplies t^i.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::vector<Rational> coeffs);
    static Polynomial monomial(Rational c, int degree);
    /// From integer coefficients, lowest degree first.
    static Polynomial from_ints(std::initializer_list<long long> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  ///< -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rational operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    const std::vector<Rational>& coefficients() const { return c_; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Rational s, const Polynomial& a);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// Euclidean division: a = q * b + r with deg r < deg b.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
    static Polynomial gcd(Polynomial a, Polynomial b);

private:
    void trim();
    std::vector<Rational> c_;
};

/// Exact rational function p(t)/q(t) in lowest terms with q(0) != 0.
class RationalSeries {
public:
    RationalSeries() : num_(), den_(Polynomial::from_ints({1})) {}
    RationalSeries(Polynomial num, Polynomial den);

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }

    /// Power series coefficients of t^0 .. t^n.
    std::vector<Rational> expand(int n) const;
    /// Integer polynomials, e.g. "-2t^3/(t - 1)".
    std::string to_string() const;

    friend bool operator==(const RationalSeries&, const RationalSeries&) = default;

private:
    Polynomial num_;
    Polynomial den_;
};

RationalSeries series_add(const RationalSeries& a, const RationalSeries& b);
RationalSeries series_scale(const RationalSeries& a, Rational s);
std::vector<Rational> series_expand(const RationalSeries& s, int n);
std::string polynomial_to_string(const Polynomial& p);

enum class SeriesKind { Circle, Edge3, D2star, A4star };

RationalSeries canonical_series(SeriesKind kind);

/// Counts of conjugacy classes of finite subgroups plus the auxiliary data the
/// formulas need. Field names follow the JSON keys.
struct SubgroupCensus {
    int lambda4 = 0;
    int lambda4star = 0;
    int lambda6 = 0;
    int lambda6star = 0;
    int mu2 = 0;
    int mu3 = 0;
    int muT = 0;
    int z2 = 0;
    int d2 = 0;
    int v = 0;
    int c = 0;
    int beta1 = 0;
    int beta2 = 0;

    int o2() const { return lambda4 - lambda4star; }
    int o3() const { return lambda6 - lambda6star; }
    int iota3() const { return lambda6star; }

    /// Inequalities, parities and non-negativity. Throws ValidationError.
    void validate() const;

    friend bool operator==(const SubgroupCensus&, const SubgroupCensus&) = default;
};

/// Flat JSON object. Unicode spellings (λ4, λ4*, μ2, μ_T, β1, ...) are accepted
/// as aliases. Keys listed in `extra` are tolerated and ignored.
SubgroupCensus parse_census(std::string_view json, const std::vector<std::string>& extra = {});
std::string census_to_json(const SubgroupCensus& c);

/// Counts of reduced torsion subcomplex components of each type.
struct ComponentCounts {
    int o2 = 0;     ///< circles, 2-torsion
    int iota2 = 0;  ///< A4 - edge - A4
    int theta = 0;  ///< D2 - graphFive - D2
    int rho = 0;    ///< D2 - graphTwo - A4
    int o3 = 0;     ///< circles, 3-torsion
    int iota3 = 0;  ///< D3 - edge - D3
};

/// Census of a group whose reduced torsion subcomplexes have the given components.
SubgroupCensus census_from_components(const ComponentCounts& k);

RationalSeries poincare_2torsion(const SubgroupCensus& c);
RationalSeries poincare_3torsion(const SubgroupCensus& c);

/// dim H^q_Γ(X; F_ell) for q in [q_lo, q_hi] from the cochain complex
/// ⊕_v H^q(Γ_v) -> ⊕_e H^q(Γ_e) of a 1-dimensional complex.
/// Stabilizers must lie in {C1, C2, C3, D2, D3}.
std::vector<int> equivariant_graph_cohomology_oracle(const OrbitComplex& x, int ell, int q_lo, int q_hi);

/// Pinned model of H^q(G; F_ell) for the oracle's stabilizers.
int stabilizer_cohomology_dim(GroupTag g, int ell, int q);
/// Pinned restriction H^q(G) -> H^q(H) for H the `embedding`-th class of
/// subgroups of G of type h, as a dim H^q(H) x dim H^q(G) matrix over F_ell.
std::vector<std::vector<long long>> restriction_matrix(GroupTag h, GroupTag g, int embedding, int ell, int q);

int coxeter_homology(int m, int ell, int q);
int triangle_group_homology(int p, int q, int r, int ell, int deg);
int sl2_mod2_dims(int beta1, int beta2, int q);

struct XsRows {
    int E01 = 0;
    int E11 = 0;
    int E03 = 0;
    int E13 = 0;
    int H2Xsprime = 0;
};

/// rows[r][n] is the dimension at column n for q ≡ r mod 4.
struct E2Page {
    int a1 = 0;
    int a2 = 0;
    int a3 = 0;
    std::array<std::array<int, 3>, 4> rows{};
};

E2Page e2_page(const SubgroupCensus& census, int chi_Xs, const XsRows& xs);

/// Graded dimension of the Farrell–Tate cohomology in degree q of
/// F_ell[a2, a2^-1] ⊗ Λ(F_ell^r), or of its Z/2-invariants when `invariant`.
int farrell_tate_sl2_dims(int r, bool invariant, int q, int ell);
/// The complementary eigenspace: classes on which Z/2 acts by -1.
int farrell_tate_sl2_sign_dims(int r, int q, int ell);

}  // namespace tsr
