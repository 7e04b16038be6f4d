#include "doctest.h"
#include "support.hpp"
#include "tsr/errors.hpp"
#include "tsr/linalg.hpp"
#include "tsr/series.hpp"

using namespace tsr;
using tsr::test::load;

namespace {

std::vector<Rational> ints(std::initializer_list<long long> xs)
{
    std::vector<Rational> out;
    for (long long x : xs)
        out.emplace_back(x);
    return out;
}

std::vector<int> as_ints(const std::vector<Rational>& xs, int from)
{
    std::vector<int> out;
    for (int i = from; i < static_cast<int>(xs.size()); ++i) {
        REQUIRE(xs[i].denominator() == 1);
        out.push_back(static_cast<int>(xs[i].numerator()));
    }
    return out;
}

SubgroupCensus sum(SubgroupCensus a, const SubgroupCensus& b)
{
    a.lambda4 += b.lambda4;
    a.lambda4star += b.lambda4star;
    a.lambda6 += b.lambda6;
    a.lambda6star += b.lambda6star;
    a.mu2 += b.mu2;
    a.mu3 += b.mu3;
    a.muT += b.muT;
    return a;
}

}  // namespace

TEST_CASE("geometric and canonical expansions")
{
    RationalSeries geo(Polynomial::from_ints({1}), Polynomial::from_ints({1, -1}));
    CHECK(geo.expand(3) == ints({1, 1, 1, 1}));

    CHECK(canonical_series(SeriesKind::Circle).expand(5) == ints({0, 0, 0, 2, 2, 2}));
    CHECK(as_ints(canonical_series(SeriesKind::Edge3).expand(10), 3) == std::vector<int>{2, 1, 0, 1, 2, 1, 0, 1});

    auto d2 = canonical_series(SeriesKind::D2star).expand(20);
    for (int q = 3; q <= 20; ++q)
        CHECK(d2[q] == Rational(2 * q - 1, 2));
    auto bar = mod_ell_homology_bruteforce(catalog_group(GroupTag::D2), 2, 7).dims;
    for (int q = 3; q <= 7; ++q)
        CHECK(d2[q] == Rational(bar[q]) - Rational(3, 2));

    auto a4 = canonical_series(SeriesKind::A4star).expand(12);
    for (int q = 0; q < 3; ++q)
        CHECK(a4[q] == Rational(0));

    CHECK_THROWS_AS(geo.expand(-1), ValidationError);
    CHECK_THROWS_AS(RationalSeries(Polynomial::from_ints({1}), Polynomial::from_ints({0, 1})), ValidationError);
}

TEST_CASE("series are kept in lowest terms")
{
    RationalSeries s(Polynomial::from_ints({-1, 1}), Polynomial::from_ints({-1, 0, 1}));
    CHECK(s == RationalSeries(Polynomial::from_ints({1}), Polynomial::from_ints({1, 1})));
    CHECK(canonical_series(SeriesKind::Circle).to_string() == "-2t^3/(t - 1)");
    CHECK(series_add(canonical_series(SeriesKind::Circle), series_scale(canonical_series(SeriesKind::Circle), Rational(-1)))
              .numerator()
              .is_zero());
}

TEST_CASE("Poincare series of the displayed cases")
{
    SubgroupCensus circle;
    circle.lambda4 = 1;
    CHECK(poincare_2torsion(circle) == canonical_series(SeriesKind::Circle));
    CHECK(poincare_2torsion(SubgroupCensus{}).numerator().is_zero());

    SubgroupCensus edge;
    edge.lambda6 = 1;
    edge.lambda6star = 1;
    edge.mu3 = 2;
    CHECK(poincare_3torsion(edge) == canonical_series(SeriesKind::Edge3));
    edge.lambda6star = 0;
    edge.mu3 = 0;
    CHECK(poincare_3torsion(edge) == canonical_series(SeriesKind::Circle));
    CHECK(poincare_3torsion(SubgroupCensus{}).numerator().is_zero());

    auto five = poincare_2torsion(census_from_components({.theta = 1})).expand(20);
    for (int q = 0; q <= 20; ++q)
        CHECK(five[q] == Rational(q < 3 ? 0 : 2 * q - 1));
}

TEST_CASE("Poincare series reject inconsistent censuses")
{
    SubgroupCensus bad;
    bad.mu2 = 2;
    CHECK_THROWS_AS(poincare_2torsion(bad), ValidationError);
    SubgroupCensus odd;
    odd.lambda6 = 1;
    odd.mu3 = 1;
    CHECK_THROWS_AS(poincare_3torsion(odd), ValidationError);
}

TEST_CASE("Poincare series are additive over components")
{
    ComponentCounts a{.o2 = 1, .theta = 1, .o3 = 2};
    ComponentCounts b{.iota2 = 1, .rho = 2, .iota3 = 1};
    auto ca = census_from_components(a);
    auto cb = census_from_components(b);
    auto whole = poincare_2torsion(sum(ca, cb)).expand(20);
    auto parts = series_add(poincare_2torsion(ca), poincare_2torsion(cb)).expand(20);
    CHECK(whole == parts);
    CHECK(poincare_3torsion(sum(ca, cb)).expand(20) ==
          series_add(poincare_3torsion(ca), poincare_3torsion(cb)).expand(20));
}

TEST_CASE("component series agree with the graph oracle")
{
    auto check = [](const OrbitComplex& x, int ell, const RationalSeries& s) {
        auto want = as_ints(s.expand(10), 3);
        CHECK(equivariant_graph_cohomology_oracle(x, ell, 3, 10) == want);
    };
    check(load("bianchi_circle2.json"), 2, canonical_series(SeriesKind::Circle));
    check(load("bianchi_edge3.json"), 3, canonical_series(SeriesKind::Edge3));
    check(load("chain3_c3.json"), 3, canonical_series(SeriesKind::Edge3));
    check(load("graphfive.json"), 2, poincare_2torsion(census_from_components({.theta = 1})));
    OrbitComplex c3 = parse_complex(R"({"rigid":true,
      "cells":[{"id":"v","dim":0,"stabilizer":"C3"},{"id":"e","dim":1,"stabilizer":"C3"}],
      "incidences":[{"face":"v","coface":"e","multiplicity":2}]})");
    check(c3, 3, poincare_3torsion(census_from_components({.o3 = 1})));

    CHECK(equivariant_graph_cohomology_oracle(OrbitComplex{}, 2, 0, 5) == std::vector<int>(6, 0));
    CHECK_THROWS_AS(equivariant_graph_cohomology_oracle(load("graphtwo.json"), 2, 3, 5), ValidationError);
    CHECK_THROWS_AS(equivariant_graph_cohomology_oracle(load("sl3z_soule.json"), 2, 3, 5), ValidationError);
}

TEST_CASE("restriction tables agree with bar-complex corestriction")
{
    const FiniteGroup& d2 = catalog_group(GroupTag::D2);
    auto reps = subgroup_class_representatives(d2, GroupTag::C2);
    for (int q = 1; q <= 3; ++q) {
        std::vector<std::vector<long long>> stacked;
        for (int e = 0; e < 3; ++e) {
            auto m = restriction_matrix(GroupTag::C2, GroupTag::D2, e, 2, q);
            std::vector<FiniteGroup> one{reps[e]};
            CHECK(rank_mod_p(m, 2) == corestriction_rank_bruteforce(d2, one, 2, q));
            stacked.insert(stacked.end(), m.begin(), m.end());
        }
        CHECK(rank_mod_p(stacked, 2) == corestriction_rank_bruteforce(d2, reps, 2, q));
    }

    const FiniteGroup& d3 = catalog_group(GroupTag::D3);
    for (int q = 1; q <= 3; ++q) {
        auto c2 = subgroup_class_representatives(d3, GroupTag::C2);
        CHECK(rank_mod_p(restriction_matrix(GroupTag::C2, GroupTag::D3, 0, 2, q), 2) ==
              corestriction_rank_bruteforce(d3, c2, 2, q));
        auto c3 = subgroup_class_representatives(d3, GroupTag::C3);
        CHECK(rank_mod_p(restriction_matrix(GroupTag::C3, GroupTag::D3, 0, 3, q), 3) ==
              corestriction_rank_bruteforce(d3, c3, 3, q));
    }
}

TEST_CASE("census parsing")
{
    auto c = parse_census(R"({"λ4":3,"λ4*":3,"μ2":2,"μ_T":0,"β1":1,"v":2})");
    CHECK(c.lambda4 == 3);
    CHECK(c.lambda4star == 3);
    CHECK(c.mu2 == 2);
    CHECK(c.beta1 == 1);
    CHECK(c.v == 2);
    CHECK(parse_census(census_to_json(c)) == c);

    CHECK_THROWS_AS(parse_census(R"({"lambda5":1})"), ValidationError);
    CHECK_THROWS_AS(parse_census(R"({"λ4":1,"lambda4":1})"), ValidationError);
    CHECK_THROWS_AS(parse_census(R"({"lambda4":1.5})"), ValidationError);
    CHECK_THROWS_AS(parse_census(R"({"lambda4":0,"lambda4star":1})"), ValidationError);
    CHECK_THROWS_AS(parse_census(R"({"d2":1})"), ValidationError);
    CHECK_THROWS_AS(parse_census(R"({"mu2":-1})"), ValidationError);
    CHECK_THROWS_AS(parse_census("[1]"), ValidationError);
    CHECK(parse_census(R"({"z2":1,"note":"x"})", {"note"}).z2 == 1);
}

TEST_CASE("Coxeter and triangle groups")
{
    CHECK(coxeter_homology(2, 3, 3) == 2);
    CHECK(coxeter_homology(0, 5, 4) == 0);
    CHECK(coxeter_homology(1, 5, 4) == 1);
    CHECK_THROWS_AS(coxeter_homology(1, 2, 3), ValidationError);

    CHECK(triangle_group_homology(3, 3, 3, 3, 3) == 3);
    CHECK(triangle_group_homology(2, 4, 4, 3, 3) == 0);
    CHECK(triangle_group_homology(3, 3, 4, 5, 2) == 0);
    CHECK_THROWS_AS(triangle_group_homology(2, 3, 4, 3, 3), ValidationError);
}

TEST_CASE("SL2 mod-2 dimensions")
{
    std::vector<int> m11;
    for (int q = 1; q <= 9; ++q)
        m11.push_back(sl2_mod2_dims(1, 0, q));
    CHECK(m11 == std::vector<int>{1, 2, 4, 3, 1, 2, 4, 3, 1});
    CHECK(sl2_mod2_dims(1, 0, 6) == 2);
    CHECK_THROWS_AS(sl2_mod2_dims(1, 0, 0), ValidationError);

    // beta_1 column of the table, with beta^2 + 1 = beta^1 = beta_1
    for (int b : {1, 1, 2, 4, 3, 5, 6, 8, 7, 7, 10, 10, 12, 14, 13}) {
        CHECK(sl2_mod2_dims(b, b - 1, 1) == b);
        CHECK(sl2_mod2_dims(b, b - 1, 3) == 2 * b + 2);
        CHECK(sl2_mod2_dims(b, b - 1, 5) == 2 * b - 1);
    }
}

TEST_CASE("E2 page")
{
    SubgroupCensus c;
    c.beta1 = 2;
    c.v = 3;
    auto p = e2_page(c, 0, {});
    CHECK(p.a3 == 4);
    CHECK(p.rows[2][0] == 0);

    auto zero = e2_page(SubgroupCensus{}, 1, {});
    CHECK(zero.rows[0] == std::array<int, 3>{1, 0, 0});
    CHECK(zero.rows[2][0] == 1);
    CHECK(zero.a1 == 0);
    CHECK_THROWS_AS(e2_page(SubgroupCensus{}, 0, {}), ValidationError);
}

TEST_CASE("Farrell-Tate dimensions for SL2")
{
    for (int q = -4; q <= 8; ++q) {
        CHECK(farrell_tate_sl2_dims(0, false, q, 3) == (q % 2 == 0 ? 1 : 0));
        CHECK(farrell_tate_sl2_dims(0, true, q, 3) == (q % 4 == 0 ? 1 : 0));
        CHECK(farrell_tate_sl2_dims(1, false, q, 5) == 1);
        for (int r = 1; r <= 6; ++r) {
            CHECK(farrell_tate_sl2_dims(r, false, q, 3) == 1 << (r - 1));
            CHECK(farrell_tate_sl2_dims(r, true, q, 3) + farrell_tate_sl2_sign_dims(r, q, 3) ==
                  farrell_tate_sl2_dims(r, false, q, 3));
        }
    }
    CHECK(farrell_tate_sl2_dims(2, false, 2, 3) == 2);
    CHECK_THROWS_AS(farrell_tate_sl2_dims(1, false, 2, 2), ValidationError);
    CHECK_THROWS_AS(farrell_tate_sl2_dims(-1, false, 2, 3), ValidationError);
}
