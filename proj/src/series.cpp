#include "tsr/series.hpp"

#include <numeric>
#include <sstream>

#include "tsr/errors.hpp"

namespace tsr {

namespace {

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

// Scale p and q by a common rational so both have integer coefficients with
// no common content and q has a positive leading coefficient.
std::pair<Polynomial, Polynomial> integer_form(const Polynomial& p, const Polynomial& q)
{
    long long l = 1;
    for (const auto& c : p.coefficients())
        l = lcm_ll(l, c.denominator());
    for (const auto& c : q.coefficients())
        l = lcm_ll(l, c.denominator());
    Polynomial ps = Rational(l) * p, qs = Rational(l) * q;
    long long g = 0;
    for (const auto& c : ps.coefficients())
        g = std::gcd(g, c.numerator());
    for (const auto& c : qs.coefficients())
        g = std::gcd(g, c.numerator());
    Rational s(1, g == 0 ? 1 : g);
    if (qs.leading() < Rational(0))
        s = -s;
    return {s * ps, s * qs};
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(Rational c, int degree)
{
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_ints(std::initializer_list<long long> coeffs)
{
    std::vector<Rational> v;
    for (long long c : coeffs)
        v.emplace_back(c);
    return Polynomial(std::move(v));
}

void Polynomial::trim()
{
    while (!c_.empty() && c_.back() == Rational(0))
        c_.pop_back();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(v));
}

Polynomial operator*(Rational s, const Polynomial& a)
{
    std::vector<Rational> v = a.c_;
    for (auto& x : v)
        x *= s;
    return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero())
        throw InvariantError("polynomial division by zero");
    Polynomial q, r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Polynomial t = monomial(r.leading() / b.leading(), r.degree() - b.degree());
        q = q + t;
        r = r - t * b;
    }
    return {q, r};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        Polynomial r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero())
        return a;
    return Rational(1) / a.leading() * a;
}

RationalSeries::RationalSeries(Polynomial num, Polynomial den)
{
    if (den.is_zero())
        throw ValidationError("rational series with zero denominator");
    Polynomial g = Polynomial::gcd(num, den);
    if (!num.is_zero() && g.degree() > 0) {
        num = Polynomial::divmod(num, g).first;
        den = Polynomial::divmod(den, g).first;
    }
    if (num.is_zero())
        den = Polynomial::from_ints({1});
    if (den[0] == Rational(0))
        throw ValidationError("rational series denominator vanishes at t = 0");
    Rational s = Rational(1) / den.leading();
    num_ = s * num;
    den_ = s * den;
}

std::vector<Rational> RationalSeries::expand(int n) const
{
    if (n < 0)
        throw ValidationError("expansion degree must be non-negative");
    std::vector<Rational> out(n + 1, Rational(0));
    Rational d0 = den_[0];
    for (int k = 0; k <= n; ++k) {
        Rational s = num_[k];
        for (int i = 1; i <= std::min(k, den_.degree()); ++i)
            s -= den_[i] * out[k - i];
        out[k] = s / d0;
    }
    return out;
}

std::string polynomial_to_string(const Polynomial& p)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        Rational c = p[i];
        if (c == Rational(0))
            continue;
        bool neg = c < Rational(0);
        Rational a = neg ? -c : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit = a == Rational(1);
        if (!unit || i == 0) {
            os << a.numerator();
            if (a.denominator() != 1)
                os << '/' << a.denominator();
        }
        if (i >= 1)
            os << 't';
        if (i >= 2)
            os << '^' << i;
    }
    return os.str();
}

std::string RationalSeries::to_string() const
{
    auto [p, q] = integer_form(num_, den_);
    auto terms = [](const Polynomial& x) {
        int n = 0;
        for (const auto& c : x.coefficients())
            n += c != Rational(0);
        return n;
    };
    std::string ps = polynomial_to_string(p);
    if (q.degree() == 0 && q[0] == Rational(1))
        return ps;
    if (terms(p) > 1)
        ps = "(" + ps + ")";
    std::string qs = polynomial_to_string(q);
    if (terms(q) > 1)
        qs = "(" + qs + ")";
    return ps + "/" + qs;
}

RationalSeries series_add(const RationalSeries& a, const RationalSeries& b)
{
    return RationalSeries(a.numerator() * b.denominator() + b.numerator() * a.denominator(),
                          a.denominator() * b.denominator());
}

RationalSeries series_scale(const RationalSeries& a, Rational s)
{
    return RationalSeries(s * a.numerator(), a.denominator());
}

std::vector<Rational> series_expand(const RationalSeries& s, int n) { return s.expand(n); }

RationalSeries canonical_series(SeriesKind kind)
{
    switch (kind) {
    case SeriesKind::Circle:
        // -2t^3 / (t - 1)
        return RationalSeries(Polynomial::from_ints({0, 0, 0, -2}), Polynomial::from_ints({-1, 1}));
    case SeriesKind::Edge3:
        // -t^3 (t^2 - t + 2) / ((t - 1)(t^2 + 1))
        return RationalSeries(Polynomial::from_ints({0, 0, 0, -2, 1, -1}),
                              Polynomial::from_ints({-1, 1}) * Polynomial::from_ints({1, 0, 1}));
    case SeriesKind::D2star:
        // -t^3 (3t - 5) / (2 (t - 1)^2)
        return RationalSeries(Polynomial::from_ints({0, 0, 0, 5, -3}), Polynomial::from_ints({2, -4, 2}));
    case SeriesKind::A4star:
        // -t^3 (t^3 - 2t^2 + 2t - 3) / (2 (t - 1)^2 (t^2 + t + 1))
        return RationalSeries(Polynomial::from_ints({0, 0, 0, 3, -2, 2, -1}),
                              Polynomial::from_ints({2, -4, 2}) * Polynomial::from_ints({1, 1, 1}));
    }
    throw ValidationError("unknown series kind");
}

namespace {

constexpr int kIntegralityDegree = 20;

void check_poincare(const RationalSeries& s, const char* which)
{
    auto coeffs = s.expand(kIntegralityDegree);
    for (int q = 0; q <= kIntegralityDegree; ++q) {
        const Rational& c = coeffs[q];
        bool bad = c.denominator() != 1 || c < Rational(0) || (q < 3 && c != Rational(0));
        if (bad) {
            std::ostringstream os;
            os << "census inconsistency: " << which << " has coefficient " << c.numerator();
            if (c.denominator() != 1)
                os << '/' << c.denominator();
            os << " at t^" << q;
            throw ValidationError(os.str());
        }
    }
}

}  // namespace

RationalSeries poincare_2torsion(const SubgroupCensus& c)
{
    c.validate();
    Rational circle = Rational(c.lambda4) - Rational(3 * c.mu2 - 2 * c.muT, 2);
    RationalSeries s = series_scale(canonical_series(SeriesKind::Circle), circle);
    s = series_add(s, series_scale(canonical_series(SeriesKind::D2star), Rational(c.mu2 - c.muT)));
    s = series_add(s, series_scale(canonical_series(SeriesKind::A4star), Rational(c.muT)));
    check_poincare(s, "P^2");
    return s;
}

RationalSeries poincare_3torsion(const SubgroupCensus& c)
{
    c.validate();
    Rational half(c.mu3, 2);
    RationalSeries s = series_scale(canonical_series(SeriesKind::Circle), Rational(c.lambda6) - half);
    s = series_add(s, series_scale(canonical_series(SeriesKind::Edge3), half));
    check_poincare(s, "P^3");
    return s;
}

}  // namespace tsr
