#include <map>

#include "doctest.h"
#include "support.hpp"
#include "tsr/errors.hpp"
#include "tsr/reduction.hpp"
#include "tsr/series.hpp"

using namespace tsr;
using tsr::test::load;

namespace {

struct Case {
    const char* file;
    int ell;
};

const Case kGraphCases[] = {
    {"path_c2_d3_c2.json", 2}, {"path_c2_d3_c2.json", 3}, {"bianchi_circle2.json", 2},
    {"bianchi_edge3.json", 3}, {"graphfive.json", 2},     {"loop_d3_c2.json", 2},
    {"tadpole_d2.json", 2},    {"chain3_c3.json", 3},
};

const Case kAllCases[] = {
    {"path_c2_d3_c2.json", 2}, {"path_c2_d3_c2.json", 3}, {"bianchi_circle2.json", 2},
    {"bianchi_edge3.json", 3}, {"graphfive.json", 2},     {"graphtwo.json", 2},
    {"bianchi_iota2.json", 2}, {"loop_d3_c2.json", 2},    {"tadpole_d2.json", 2},
    {"chain3_c3.json", 3},     {"sl3z_intermediate.json", 2}, {"sl3z_soule.json", 2},
    {"sl3z_soule.json", 3},
};

OrbitComplex apply(const OrbitComplex& x, const Move& m, int ell)
{
    if (m.kind == MoveKind::Cut)
        return cut(x, m.cells[0], m.cells[1], ell);
    return merge(x, {m.cells[0], m.cells[1], m.cells[2]}, ell);
}

std::map<int, int> cells_by_dim(const OrbitComplex& x)
{
    std::map<int, int> n;
    for (const auto& c : x.cells)
        ++n[c.dim];
    return n;
}

std::vector<std::string> ids_of_dim(const OrbitComplex& x, int d)
{
    std::vector<std::string> out;
    for (const auto& c : x.cells)
        if (c.dim == d)
            out.push_back(c.id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> ends_of(const OrbitComplex& x, const std::string& edge)
{
    std::vector<std::string> out;
    for (const Incidence* inc : x.faces_of(edge))
        for (int i = 0; i < inc->multiplicity; ++i)
            out.push_back(inc->face);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("condition B' clauses")
{
    CHECK(check_condition_B_prime(GroupTag::D3, GroupTag::C2, 2) == BPrimeClause::One);
    CHECK(check_condition_B_prime(GroupTag::C2, GroupTag::C2, 2) == BPrimeClause::One);
    CHECK(check_condition_B_prime(GroupTag::D4, GroupTag::D4, 2) == BPrimeClause::One);
    CHECK_FALSE(check_condition_B_prime(GroupTag::D3, GroupTag::C3, 3).has_value());
    CHECK_FALSE(check_condition_B_prime(GroupTag::D2, GroupTag::C2, 2).has_value());
    // T = Klein four-group, S4/T = D3
    CHECK(check_condition_B_prime(GroupTag::S4, GroupTag::D3, 3) == BPrimeClause::One);
    CHECK(check_condition_B_prime(GroupTag::A4, GroupTag::C3, 3) == BPrimeClause::One);
    // every Sylow 2-subgroup of S4 contains the Klein group, so S4 is not 2-normal
    CHECK_FALSE(check_condition_B_prime(GroupTag::S4, GroupTag::D4, 2).has_value());
    CHECK(to_string(BPrimeClause::Three) == "B'(3)");
}

TEST_CASE("condition A")
{
    OrbitComplex path = load("path_c2_d3_c2.json");
    CHECK(check_condition_A(path, "m", "e1", "e2"));
    CHECK_FALSE(check_condition_A(path, "m", "e1", "e1"));

    OrbitComplex mid = load("sl3z_intermediate.json");
    CHECK(condition_A_shape(mid, "Q", "OQ", "QM"));
    CHECK_FALSE(check_condition_A(mid, "Q", "OQ", "QM"));

    OrbitComplex five = load("graphfive.json");
    const std::string v = five.cells[0].id;
    auto cof = five.cofaces_of(v);
    REQUIRE(cof.size() >= 2);
    CHECK_FALSE(check_condition_A(five, v, cof[0]->coface, cof[1]->coface));

    CHECK_THROWS_AS(check_condition_A(path, "e1", "u", "w"), ValidationError);
}

TEST_CASE("terminal cells")
{
    auto t = find_terminal_cells(load("sl3z_intermediate.json"));
    CHECK(std::find(t.begin(), t.end(), std::pair<std::string, std::string>{"N'", "PN'"}) != t.end());
    CHECK(find_terminal_cells(load("bianchi_circle2.json")).empty());
    CHECK(find_terminal_cells(torsion_subcomplex(load("path_c2_d3_c2.json"), 3)).empty());
}

TEST_CASE("cut")
{
    OrbitComplex mid = load("sl3z_intermediate.json");
    OrbitComplex after = cut(mid, "N'", "PN'", 2);
    CHECK(after.cells.size() == mid.cells.size() - 2);
    CHECK_FALSE(after.find("N'"));

    OrbitComplex leaf = parse_complex(R"({"rigid":true,
      "cells":[{"id":"a","dim":0,"stabilizer":"C2"},{"id":"b","dim":0,"stabilizer":"D2"},
               {"id":"e","dim":1,"stabilizer":"C2"}],
      "incidences":[{"face":"a","coface":"e"},{"face":"b","coface":"e"}]})");
    CHECK(cut(leaf, "a", "e", 2).cells.size() == 1);
    CHECK_THROWS_AS(cut(leaf, "b", "e", 2), ValidationError);
    CHECK_THROWS_AS(cut(mid, "P", "MP", 2), ValidationError);
}

TEST_CASE("merge")
{
    OrbitComplex path = load("path_c2_d3_c2.json");
    OrbitComplex m = merge(path, {"m", "e1", "e2"}, 2);
    CHECK(ids_of_dim(m, 1) == std::vector<std::string>{"e1+"});
    CHECK(ends_of(m, "e1+") == std::vector<std::string>{"u", "w"});
    CHECK_THROWS_AS(merge(path, {"u", "e1", "e2"}, 2), ValidationError);
    CHECK_THROWS_AS(merge(load("bianchi_edge3.json"), {"e", "e", "e"}, 3), ValidationError);

    OrbitComplex loop = load("loop_d3_c2.json");
    OrbitComplex c = merge(loop, {"a", "e1", "e2"}, 2);
    CHECK(classify_component(c, 2) == ComponentType::Circle);
    CHECK(ends_of(c, "e1+") == std::vector<std::string>{"b", "b"});
}

TEST_CASE("reduce matches the pinned expected files")
{
    struct Pinned {
        const char* input;
        int ell;
        const char* expected;
    };
    for (Pinned p : {Pinned{"path_c2_d3_c2.json", 2, "path_c2_d3_c2.l2"},
                     Pinned{"bianchi_edge3.json", 3, "bianchi_edge3.l3"},
                     Pinned{"sl3z_intermediate.json", 2, "sl3z_intermediate.l2"}}) {
        CAPTURE(p.input);
        auto r = reduce(load(p.input), p.ell);
        auto base = tsr::test::fixture("expected") / p.expected;
        CHECK(serialize_complex(r.complex) == tsr::test::slurp(base.string() + ".json"));
        CHECK(r.log.to_jsonl() == tsr::test::slurp(base.string() + ".log.jsonl"));
    }

    auto path = reduce(load("path_c2_d3_c2.json"), 2);
    REQUIRE(ids_of_dim(path.complex, 1).size() == 1);
    CHECK(path.complex.cell("e1+").stabilizer == GroupTag::C2);
    CHECK(reduce(load("bianchi_edge3.json"), 3).log.moves.empty());

    auto mid = reduce(load("sl3z_intermediate.json"), 2);
    REQUIRE(mid.log.moves.size() == 1);
    CHECK(mid.log.moves[0] == Move{MoveKind::Cut, {"N'", "PN'"}, "", "B'(1)"});
}

TEST_CASE("scripted elimination of Q gives the Soule chain")
{
    auto r = reduce(load("sl3z_intermediate.json"), 2);
    apply_scripted_merge(r, {"Q", "QM", "OQ"});
    auto base = tsr::test::fixture("expected") / "sl3z_intermediate.soule_chain";
    CHECK(serialize_complex(r.complex) == tsr::test::slurp(base.string() + ".json"));
    CHECK(r.log.to_jsonl() == tsr::test::slurp(base.string() + ".log.jsonl"));
    CHECK(replay(load("sl3z_intermediate.json"), 2, r.log) == r.complex);

    std::vector<std::string> chain;
    for (const auto& c : r.complex.cells)
        chain.push_back(c.id + ":" + std::string(to_string(c.stabilizer)));
    CHECK(chain == std::vector<std::string>{"O:S4", "M:S4", "P:S4", "QM+:C2", "MP:D4"});
    CHECK_THROWS_AS(apply_scripted_merge(r, {"O", "QM+", "MP"}), ValidationError);
}

TEST_CASE("SL3 reduction in the figure's cut order")
{
    OrbitComplex x = torsion_subcomplex(load("sl3z_soule.json"), 2);
    for (auto [s, t] : {std::pair{"QN", "t3"}, {"ON2", "t4"}, {"OP", "t5"}, {"OM2", "t6"}, {"ON", "t2"},
                        {"MO", "t1"}, {"MN", "t7"}})
        x = cut(x, s, t, 2);
    CHECK(ids_of_dim(x, 0) == std::vector<std::string>{"M", "N", "O", "P", "Q"});
    CHECK(ids_of_dim(x, 1) == std::vector<std::string>{"MQ", "PM", "PN", "QO"});
    CHECK(x.cell("QO").stabilizer == GroupTag::D2);
    CHECK(x.cell("MQ").stabilizer == GroupTag::C2);
    CHECK(x.cell("PN").stabilizer == GroupTag::D4);
    CHECK(ends_of(x, "PN") == std::vector<std::string>{"N", "P"});

    x = cut(x, "N", "PN", 2);
    CHECK(ids_of_dim(x, 0) == std::vector<std::string>{"M", "O", "P", "Q"});
    for (auto [s, t] : find_terminal_cells(x))
        CHECK_THROWS_AS(cut(x, s, t, 2), ValidationError);
}

TEST_CASE("SL3 reduction in id order reaches a different fixpoint")
{
    auto r = reduce(load("sl3z_soule.json"), 2);
    CHECK(r.log.moves.size() == 7);
    CHECK(r.complex.dimension() == 1);
    CHECK(ids_of_dim(r.complex, 1) == std::vector<std::string>{"PM", "PN", "QN", "QO"});
    CHECK(ends_of(r.complex, "QN") == std::vector<std::string>{"N", "Q"});

    auto r3 = reduce(load("sl3z_soule.json"), 3);
    CHECK(ids_of_dim(r3.complex, 1).empty());
    CHECK(ids_of_dim(r3.complex, 0) == std::vector<std::string>{"P", "Q"});
}

TEST_CASE("reduction is deterministic, terminates and replays")
{
    for (Case c : kAllCases) {
        CAPTURE(c.file);
        CAPTURE(c.ell);
        OrbitComplex x = load(c.file);
        auto a = reduce(x, c.ell);
        auto b = reduce(x, c.ell);
        CHECK(serialize_complex(a.complex) == serialize_complex(b.complex));
        CHECK(a.log == b.log);
        CHECK(a.log.moves.size() <= torsion_subcomplex(x, c.ell).cells.size());
        CHECK(ReductionLog::from_jsonl(a.log.to_jsonl()) == a.log);
        CHECK(replay(x, c.ell, a.log) == a.complex);
        for (const auto& m : a.log.moves)
            CHECK(m.condition != "scripted");
    }
}

TEST_CASE("replay rejects a tampered log")
{
    OrbitComplex x = load("path_c2_d3_c2.json");
    auto r = reduce(x, 2);
    ReductionLog bad = r.log;
    bad.moves[0].condition = "B'(2)";
    CHECK_THROWS(replay(x, 2, bad));
    bad = r.log;
    bad.moves[0].cells = {"u", "e1", "e2"};
    CHECK_THROWS(replay(x, 2, bad));
    CHECK_THROWS(ReductionLog::from_jsonl("{\"kind\":\"swap\"}\n"));
}

TEST_CASE("each move removes one cell in each of two adjacent dimensions")
{
    for (Case c : kAllCases) {
        OrbitComplex x = torsion_subcomplex(load(c.file), c.ell);
        for (const auto& m : reduce(load(c.file), c.ell).log.moves) {
            int d = x.cell(m.cells[0]).dim;
            OrbitComplex y = apply(x, m, c.ell);
            auto before = cells_by_dim(x);
            auto after = cells_by_dim(y);
            CHECK(after[d] == before[d] - 1);
            CHECK(after[d + 1] == before[d + 1] - 1);
            if (m.kind == MoveKind::Merge && d == 0)
                CHECK(after[0] - after[1] == before[0] - before[1]);
            x = y;
        }
    }
}

TEST_CASE("merged stabilizers have equal mod-ell homology")
{
    for (Case c : kAllCases) {
        OrbitComplex x = torsion_subcomplex(load(c.file), c.ell);
        for (const auto& m : reduce(load(c.file), c.ell).log.moves) {
            GroupTag s = x.cell(m.cells[0]).stabilizer;
            GroupTag t = x.cell(m.cells[1]).stabilizer;
            if (m.kind == MoveKind::Merge) {
                CAPTURE(c.file);
                CHECK(mod_ell_homology_bruteforce(catalog_group(s), c.ell, 3) ==
                      mod_ell_homology_bruteforce(catalog_group(t), c.ell, 3));
            }
            x = apply(x, m, c.ell);
        }
    }
}

TEST_CASE("every move preserves the equivariant cohomology of a graph")
{
    for (Case c : kGraphCases) {
        CAPTURE(c.file);
        CAPTURE(c.ell);
        OrbitComplex x = torsion_subcomplex(load(c.file), c.ell);
        auto want = equivariant_graph_cohomology_oracle(x, c.ell, 3, 10);
        for (const auto& m : reduce(load(c.file), c.ell).log.moves) {
            x = apply(x, m, c.ell);
            CHECK(equivariant_graph_cohomology_oracle(x, c.ell, 3, 10) == want);
        }
    }
}

TEST_CASE("reduced fixtures")
{
    auto shape = [](const char* f, int ell) {
        auto r = reduce(load(f), ell);
        return classify_component(r.complex, ell);
    };
    CHECK(shape("bianchi_circle2.json", 2) == ComponentType::Circle);
    CHECK(shape("graphfive.json", 2) == ComponentType::GraphFive);
    CHECK(shape("graphtwo.json", 2) == ComponentType::GraphTwo);
    CHECK(shape("bianchi_iota2.json", 2) == ComponentType::Edge);
    CHECK(shape("loop_d3_c2.json", 2) == ComponentType::Circle);
    CHECK(shape("tadpole_d2.json", 2) == ComponentType::Circle);
    CHECK(shape("chain3_c3.json", 3) == ComponentType::Edge);

    auto chain = reduce(load("chain3_c3.json"), 3);
    CHECK(ids_of_dim(chain.complex, 1) == std::vector<std::string>{"e1++"});

    OrbitComplex loose = load("path_c2_d3_c2.json");
    loose.rigid = false;
    CHECK_THROWS_AS(reduce(loose, 2), ValidationError);
}
