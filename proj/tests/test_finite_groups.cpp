#include "doctest.h"
#include "tsr/errors.hpp"
#include "tsr/finite_groups.hpp"

using namespace tsr;

TEST_CASE("catalog orders and identification")
{
    for (GroupTag t : all_group_tags()) {
        const FiniteGroup& g = catalog_group(t);
        CHECK(g.order() == tag_order(t));
        CHECK(identify(g) == t);
        CHECK(parse_group_tag(to_string(t)) == t);
    }
    CHECK(identify(dihedral_group(4)) == GroupTag::D4);
    CHECK(identify(dihedral_group(6)) == GroupTag::D6);
    CHECK_FALSE(identify(dihedral_group(5)).has_value());
    CHECK_THROWS_AS(parse_group_tag("Z2"), ValidationError);
}

TEST_CASE("subgroup lattices")
{
    struct Row {
        GroupTag g;
        int subgroups;
        int normal;
    };
    for (Row r : {Row{GroupTag::C6, 4, 4}, Row{GroupTag::D2, 5, 5}, Row{GroupTag::D3, 6, 3},
                  Row{GroupTag::D4, 10, 6}, Row{GroupTag::A4, 10, 3}, Row{GroupTag::D6, 16, 7},
                  Row{GroupTag::S4, 30, 4}}) {
        CAPTURE(to_string(r.g));
        const FiniteGroup& g = catalog_group(r.g);
        CHECK(all_subgroups(g).size() == static_cast<std::size_t>(r.subgroups));
        CHECK(normal_subgroups(g).size() == static_cast<std::size_t>(r.normal));
    }
}

TEST_CASE("sylow, center, normalizer, quotient")
{
    const FiniteGroup& s4 = catalog_group(GroupTag::S4);
    CHECK(sylow_subgroups(s4, 2).size() == 3);
    CHECK(sylow_subgroups(s4, 3).size() == 4);
    CHECK(identify(sylow_subgroup(s4, 2)) == GroupTag::D4);
    CHECK(sylow_subgroup(s4, 5).order() == 1);
    CHECK(center(s4).order() == 1);
    CHECK(center(catalog_group(GroupTag::D4)).order() == 2);
    CHECK(identify(derived_subgroup(s4)) == GroupTag::A4);

    auto c3 = sylow_subgroup(s4, 3);
    CHECK(identify(normalizer(s4, c3)) == GroupTag::D3);

    const FiniteGroup& d3 = catalog_group(GroupTag::D3);
    auto q = quotient(d3, sylow_subgroup(d3, 3));
    CHECK(identify(q) == GroupTag::C2);
    const FiniteGroup& d6 = catalog_group(GroupTag::D6);
    CHECK(identify(quotient(d6, center(d6))) == GroupTag::D3);
}

TEST_CASE("embeddings up to conjugacy")
{
    CHECK(subgroup_class_representatives(catalog_group(GroupTag::D2), GroupTag::C2).size() == 3);
    CHECK(subgroup_class_representatives(catalog_group(GroupTag::D3), GroupTag::C2).size() == 1);
    CHECK(subgroup_class_representatives(catalog_group(GroupTag::A4), GroupTag::C2).size() == 1);
    CHECK(subgroup_class_representatives(catalog_group(GroupTag::S4), GroupTag::C2).size() == 2);
    CHECK(subgroup_class_representatives(catalog_group(GroupTag::S4), GroupTag::D2).size() == 2);
    CHECK(subgroup_class_representatives(catalog_group(GroupTag::D4), GroupTag::C2).size() == 3);
}

TEST_CASE("ell-normality")
{
    CHECK(is_ell_normal(catalog_group(GroupTag::D3), 3));
    CHECK(is_ell_normal(catalog_group(GroupTag::A4), 2));
    CHECK(is_ell_normal(catalog_group(GroupTag::D4), 2));
    CHECK(is_ell_normal(catalog_group(GroupTag::C3), 2));
    CHECK(is_ell_normal(catalog_group(GroupTag::S4), 3));
}

TEST_CASE("trivial mod-ell cohomology")
{
    CHECK(has_trivial_mod_ell_cohomology(catalog_group(GroupTag::C3), 2));
    CHECK_FALSE(has_trivial_mod_ell_cohomology(catalog_group(GroupTag::D3), 2));
    CHECK(has_trivial_mod_ell_cohomology(catalog_group(GroupTag::C1), 3));
}

TEST_CASE("bar oracle on small groups")
{
    auto dims = [](GroupTag t, int ell, int q) {
        return mod_ell_homology_bruteforce(catalog_group(t), ell, q).dims;
    };
    CHECK(dims(GroupTag::C2, 2, 6) == std::vector<int>{1, 1, 1, 1, 1, 1, 1});
    CHECK(dims(GroupTag::C3, 3, 5) == std::vector<int>{1, 1, 1, 1, 1, 1});
    CHECK(dims(GroupTag::C3, 2, 5) == std::vector<int>{1, 0, 0, 0, 0, 0});
    CHECK(dims(GroupTag::D2, 2, 6) == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
    CHECK(dims(GroupTag::D3, 3, 5) == std::vector<int>{1, 0, 0, 1, 1, 0});
    CHECK(dims(GroupTag::D3, 2, 5) == std::vector<int>{1, 1, 1, 1, 1, 1});
    CHECK(dims(GroupTag::S4, 3, 2) == std::vector<int>{1, 0, 0});
    CHECK_THROWS(mod_ell_homology_bruteforce(catalog_group(GroupTag::D3), 3, 6));
}

TEST_CASE("dihedral formula matches the bar oracle")
{
    for (auto [n, ell] : {std::pair{3, 3}, {5, 3}, {5, 5}, {3, 5}}) {
        auto h = mod_ell_homology_bruteforce(dihedral_group(n), ell, 4);
        for (int q = 0; q <= 4; ++q) {
            CAPTURE(n);
            CAPTURE(ell);
            CAPTURE(q);
            CHECK(dihedral_mod_ell_homology(n, ell, q) == h.dims[q]);
        }
    }
}

TEST_CASE("corestriction from the three C2 in D2")
{
    const FiniteGroup& d2 = catalog_group(GroupTag::D2);
    auto reps = subgroup_class_representatives(d2, GroupTag::C2);
    CHECK(corestriction_rank_bruteforce(d2, reps, 2, 1) == 2);
    CHECK(corestriction_rank_bruteforce(d2, reps, 2, 2) == 3);
    CHECK(corestriction_rank_bruteforce(d2, reps, 2, 3) == 3);
}
