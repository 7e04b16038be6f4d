#include <algorithm>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tsr/errors.hpp"

using namespace tsr;
using tsr::test::load;

namespace {

const char* const kFixtures[] = {
    "path_c2_d3_c2.json", "bianchi_circle2.json", "bianchi_edge3.json", "graphfive.json",
    "graphtwo.json",      "bianchi_iota2.json",   "loop_d3_c2.json",    "tadpole_d2.json",
    "chain3_c3.json",     "sl3z_intermediate.json", "sl3z_soule.json",
};

std::string error_of(std::string_view text)
{
    try {
        parse_complex(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("fixtures round trip byte for byte")
{
    for (const char* name : kFixtures) {
        CAPTURE(name);
        std::string text = tsr::test::slurp(tsr::test::fixture(name));
        OrbitComplex x = parse_complex(text);
        CHECK(serialize_complex(x) == text);
        CHECK(parse_complex(serialize_complex(x)) == x);
    }
}

TEST_CASE("empty document")
{
    OrbitComplex x = parse_complex("{}");
    CHECK(x.empty());
    CHECK(x.dimension() == -1);
    CHECK(connected_components(x).empty());
}

TEST_CASE("schema errors name the field")
{
    CHECK(error_of(R"({"cells":[{"id":"a","dim":0,"stabilizer":"C2"},{"id":"b","dim":0,"stabilizer":"Z2"}]})")
              .find("cells[1].stabilizer") != std::string::npos);
    CHECK(error_of(R"({"cells":[{"id":"a","dim":"0","stabilizer":"C2"}]})").find("cells[0].dim") !=
          std::string::npos);
    CHECK(error_of(R"({"cells":[],"colour":1})").find("colour") != std::string::npos);
    CHECK(error_of(R"({"cells":[{"id":"a","dim":0,"stabilizer":"C2"}],
                       "incidences":[{"face":"a","coface":"e"}]})")
              .find("missing cell") != std::string::npos);
    CHECK(error_of(R"({"cells":[{"id":"a","dim":0,"stabilizer":"C2"},{"id":"a","dim":1,"stabilizer":"C2"}]})")
              .find("duplicate") != std::string::npos);
    CHECK(error_of(R"({"cells":[{"id":"a","dim":0,"stabilizer":"C2"},{"id":"e","dim":1,"stabilizer":"C2"}],
                       "incidences":[{"face":"a","coface":"e","multiplicity":0}]})")
              .find("multiplicity") != std::string::npos);
    CHECK(error_of("{ not json").find("malformed JSON") != std::string::npos);
    CHECK_THROWS_AS(load_complex(tsr::test::fixture("no_such_file.json")), ValidationError);
}

TEST_CASE("the SL3 fixture")
{
    OrbitComplex x = load("sl3z_soule.json");
    CHECK(x.rigid);
    CHECK(x.dimension() == 2);
    std::vector<std::string> vertices;
    int triangles = 0;
    for (const auto& c : x.cells) {
        if (c.dim == 0)
            vertices.push_back(c.id);
        if (c.dim == 2)
            ++triangles;
    }
    CHECK(vertices == std::vector<std::string>{"M", "N", "O", "P", "Q"});
    CHECK(triangles == 7);

    OrbitComplex t = torsion_subcomplex(x, 2);
    CHECK(std::count_if(t.cells.begin(), t.cells.end(), [](const auto& c) { return c.dim == 2; }) == 7);
    CHECK(connected_components(t).size() == 1);
}

TEST_CASE("torsion subcomplex")
{
    for (const char* name : kFixtures) {
        OrbitComplex x = load(name);
        CHECK(torsion_subcomplex(x, 5).empty());
        for (int ell : {2, 3}) {
            OrbitComplex t = torsion_subcomplex(x, ell);
            CHECK(torsion_subcomplex(t, ell) == t);
            for (const auto& c : x.cells)
                CHECK((t.find(c.id) != nullptr) == (tag_order(c.stabilizer) % ell == 0));
        }
    }
    OrbitComplex p = torsion_subcomplex(load("path_c2_d3_c2.json"), 3);
    REQUIRE(p.cells.size() == 1);
    CHECK(p.cells[0].id == "m");
    CHECK(p.cells[0].stabilizer == GroupTag::D3);
    CHECK(p.incidences.empty());

    OrbitComplex loose = load("bianchi_circle2.json");
    loose.rigid = false;
    CHECK_THROWS_AS(torsion_subcomplex(loose, 2), ValidationError);
    CHECK_THROWS_AS(torsion_subcomplex(load("bianchi_circle2.json"), 4), ValidationError);
}

TEST_CASE("components")
{
    OrbitComplex two = parse_complex(R"({"rigid":true,
      "cells":[{"id":"a","dim":0,"stabilizer":"C2"},{"id":"b","dim":0,"stabilizer":"C2"},
               {"id":"e","dim":1,"stabilizer":"C2"},{"id":"f","dim":1,"stabilizer":"C2"}],
      "incidences":[{"face":"a","coface":"e","multiplicity":2},{"face":"b","coface":"f","multiplicity":2}]})");
    auto parts = connected_components(two);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].cells.size() == 2);
    CHECK(classify_component(parts[0], 2) == ComponentType::Circle);
    CHECK(classify_component(parts[1], 2) == ComponentType::Circle);
    CHECK_THROWS_AS(classify_component(two, 2), ValidationError);
}

TEST_CASE("component shapes")
{
    CHECK(classify_component(load("bianchi_circle2.json"), 2) == ComponentType::Circle);
    CHECK(classify_component(load("bianchi_edge3.json"), 3) == ComponentType::Edge);
    CHECK(classify_component(load("graphfive.json"), 2) == ComponentType::GraphFive);
    CHECK(classify_component(load("graphtwo.json"), 2) == ComponentType::GraphTwo);
    CHECK(classify_component(load("bianchi_iota2.json"), 2) == ComponentType::Edge);
    CHECK_THROWS_AS(classify_component(torsion_subcomplex(load("path_c2_d3_c2.json"), 3), 3), ValidationError);
    CHECK_THROWS_AS(classify_component(load("bianchi_edge3.json"), 2), ValidationError);
}

TEST_CASE("classification ignores record order")
{
    std::mt19937 rng(3);
    for (auto [name, ell] : {std::pair{"graphfive.json", 2}, {"graphtwo.json", 2}, {"bianchi_edge3.json", 3},
                             {"bianchi_circle2.json", 2}}) {
        OrbitComplex x = load(name);
        ComponentType want = classify_component(x, ell);
        for (int i = 0; i < 5; ++i) {
            std::shuffle(x.cells.begin(), x.cells.end(), rng);
            std::shuffle(x.incidences.begin(), x.incidences.end(), rng);
            CHECK(classify_component(x, ell) == want);
        }
    }
}
