#include "gentle/corpus.hpp"
#include "gentle/dpic.hpp"
#include "gentle/errors.hpp"
#include "gentle/surface.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace gentle;
using json = nlohmann::ordered_json;

namespace {

SurfaceInvariants punctured(int genus, int b) {
    SurfaceInvariants s;
    s.genus = genus;
    for (int i = 0; i < b; ++i) s.components.push_back({0, 0, true});
    return s;
}

}  // namespace

TEST_SUITE("dpic-report") {

TEST_CASE("rescaling rank from the exact sequence") {
    CHECK(rescaling_group(kronecker()).rank == 1);
    CHECK(rescaling_group(linear_a(2)).rank == 0);
    const RescalingData r = rescaling_group(algebra_b());
    CHECK(r.sequence == std::vector<int>{1, 2, 2, 1});
    for (const auto& [name, p] : general_corpus(60)) {
        CAPTURE(name);
        const SurfaceInvariants s = surface_invariants(p);
        CHECK(rescaling_group(p).rank == 2 * s.genus + s.b() - 1);
        CHECK(rescaling_group(p).rank == p.num_arrows() - p.num_vertices() + 1);
    }
}

TEST_CASE("genus one presentation with four vertices and five arrows") {
    // |Q1| - |Q0| + 1 = 2 = 2g + b - 1 with g = 1, b = 1.
    for (const auto& [name, p] : smooth_proper_corpus(10)) {
        const SurfaceInvariants s = surface_invariants(p);
        if (s.genus != 1) continue;
        CHECK(rescaling_group(p).rank == 2 + s.b() - 1);
    }
}

TEST_CASE("kronecker surface in characteristic zero") {
    const GroupDescription d = dpic_description(kronecker(), 0, "smooth_and_proper");
    REQUIRE(d.root.kind == GroupNode::Kind::Semidirect);
    CHECK(d.root.children[0] == GroupNode::atom("PGL2"));
    CHECK(d.root.children[1].name == "MCGgraded");
    const json j = json::parse(dpic_json(d));
    CHECK(j["semidirect"][0]["atom"]["name"] == "PGL2");
    CHECK(j["semidirect"][1]["atom"]["name"] == "MCGgraded");
    CHECK(j["semidirect"][1]["atom"]["surface"]["genus"] == 0);
    // Algebra B has the same surface and the same report.
    CHECK(dpic_json(dpic_description(algebra_b(), 0, "smooth_and_proper")) == dpic_json(d));
}

TEST_CASE("kronecker surface in positive characteristic is refused") {
    CHECK_THROWS_AS(dpic_description(algebra_b(), 5, "smooth_and_proper"), ScopeError);
}

TEST_CASE("proper flavor in characteristic zero") {
    const GentlePresentation p = linear_a(3, true);
    const GroupDescription d = dpic_description(p, 0, "proper");
    const json j = json::parse(dpic_json(d));
    const json& inner = j["semidirect"][0]["semidirect"];
    CHECK(inner[0]["product"][0]["atom"]["name"] == "AdditiveGroup");
    CHECK(inner[0]["product"][1]["atom"]["name"] == "PowerSeriesAut");
    CHECK(inner[1]["atom"]["name"] == "UnitsTorus");
    CHECK(inner[1]["atom"]["rank"] == 0);
    CHECK(j["semidirect"][1]["atom"]["name"] == "MCGgraded");
}

TEST_CASE("smooth flavor uses polynomial automorphisms") {
    const GroupDescription d = dpic_description(linear_a(3, true), 0, "smooth");
    const json j = json::parse(dpic_json(d));
    CHECK(j["semidirect"][0]["semidirect"][0]["product"][1]["atom"]["name"] == "PolynomialAut");
}

TEST_CASE("smooth and proper in positive characteristic drops the series factor") {
    for (const auto& [name, p] : smooth_proper_corpus(10)) {
        if (is_kronecker_surface(surface_invariants(p))) continue;
        CAPTURE(name);
        const json j = json::parse(dpic_json(dpic_description(p, 5, "smooth_and_proper")));
        CHECK(j["semidirect"][0]["semidirect"][0]["atom"]["name"] == "AdditiveGroup");
        CHECK(j["semidirect"][0]["semidirect"][1]["atom"]["rank"] == rescaling_group(p).rank);
        CHECK_THROWS_AS(dpic_description(p, 5, "proper"), ScopeError);
    }
}

TEST_CASE("punctured surfaces") {
    const GroupDescription d = dpic_description(punctured(0, 2), 0, "punctured");
    const GroupNode z = GroupNode::semidirect(GroupNode::atom("UnitsTorus", {{"rank", 2}}), GroupNode::atom("CyclicOrder2"));
    REQUIRE(d.root.kind == GroupNode::Kind::Semidirect);
    CHECK(d.root.children[0] == z);
    const GroupDescription e = dpic_description(punctured(1, 1), 0, "punctured");
    CHECK(e.root.children[0] == GroupNode::atom("UnitsTorus", {{"rank", 2}}));
    CHECK_THROWS_AS(dpic_description(punctured(0, 2), 3, "punctured"), ScopeError);
}

TEST_CASE("flavor and characteristic validation") {
    CHECK_THROWS_AS(dpic_description(kronecker(), 0, "wrapped"), InputError);
    CHECK_THROWS_AS(dpic_description(kronecker(), 2, "smooth_and_proper"), InputError);
    CHECK_THROWS_AS(dpic_description(kronecker(), 0, "punctured"), InputError);
    CHECK_THROWS_AS(dpic_description(punctured(0, 2), 0, "proper"), InputError);
    CHECK_THROWS_AS(dpic_description(polynomial_loop(0), 0, "proper"), InputError);
    CHECK_THROWS_AS(dpic_description(punctured_disk(0), 0, "smooth"), InputError);
}

TEST_CASE("the report depends only on the surface invariants") {
    for (const auto& [p, q] : morita_pairs()) {
        for (const char* flavor : {"proper", "smooth", "smooth_and_proper"}) {
            std::string a, b;
            try {
                a = dpic_json(dpic_description(p, 0, flavor));
            } catch (const InputError& e) {
                a = std::string("refused: ") + e.what();
            }
            try {
                b = dpic_json(dpic_description(q, 0, flavor));
            } catch (const InputError& e) {
                b = std::string("refused: ") + e.what();
            }
            CHECK(a.rfind("refused", 0) == b.rfind("refused", 0));
            if (a.rfind("refused", 0) != 0) CHECK(a == b);
        }
    }
}

TEST_CASE("HH1 dimension cross-check") {
    const HH1Crosscheck b = hh1_dimension_crosscheck(algebra_b());
    CHECK(b.pass);
    CHECK(b.surface_side == 3);
    CHECK(b.algebra_side == 3);
    const HH1Crosscheck a = hh1_dimension_crosscheck(linear_a(3, true));
    CHECK(a.pass);
    CHECK(a.surface_side == a.algebra_side);
    CHECK(is_kronecker_quiver(kronecker()));
    CHECK(!is_kronecker_quiver(algebra_b()));
    CHECK_THROWS_AS(hh1_dimension_crosscheck(kronecker()), ScopeError);
    CHECK_THROWS_AS(hh1_dimension_crosscheck(punctured_disk(1)), ScopeError);
}

}  // TEST_SUITE
