#include "gentle/corpus.hpp"
#include "gentle/errors.hpp"
#include "gentle/surface.hpp"

#include <doctest.h>

using namespace gentle;

namespace {

int euler_lhs(const GentlePresentation& p) { return p.num_vertices() - p.num_arrows(); }
int euler_rhs(const SurfaceInvariants& s) { return 2 - 2 * s.genus - s.b(); }

}  // namespace

TEST_SUITE("surface-model") {

TEST_CASE("kronecker and algebra B share the annulus with two one-interval boundary components") {
    for (const auto& p : {kronecker(), algebra_b()}) {
        const SurfaceInvariants s = surface_invariants(p);
        CHECK(s.genus == 0);
        REQUIRE(s.b() == 2);
        for (const auto& c : s.components) {
            CHECK(c.segments == 1);
            CHECK(c.winding == 0);
            CHECK(!c.fully_marked);
        }
        CHECK(is_kronecker_surface(s));
        const AAGInvariant phi = aag_invariant(p);
        CHECK(phi(1, 1) == 2);
        CHECK(phi.mult.size() == 1);
    }
    const IsoVerdict v = derived_equivalent(kronecker(), algebra_b());
    CHECK(v.equivalent);
    CHECK(v.complete);
}

TEST_CASE("linear quivers give disks") {
    // A_n without relations: one boundary component, n + 1 marked intervals, weight n - 1.
    for (int n = 2; n <= 5; ++n) {
        const GentlePresentation p = linear_a(n);
        const SurfaceInvariants s = surface_invariants(p);
        CHECK(s.genus == 0);
        CHECK(s.b() == 1);
        const AAGInvariant phi = aag_invariant(p);
        CHECK(phi(n + 1, n - 1) == 1);
    }
    CHECK(!is_kronecker_surface(surface_invariants(linear_a(2))));
}

TEST_CASE("punctured disks are pairwise inequivalent with one fully marked component") {
    for (int w = -2; w <= 2; ++w) {
        const SurfaceInvariants s = surface_invariants(punctured_disk(w));
        CAPTURE(w);
        CHECK(s.genus == 0);
        int full = 0;
        for (const auto& c : s.components)
            if (c.fully_marked) {
                ++full;
                CHECK(c.winding == w);
            }
        CHECK(full == 1);
        for (int v = -2; v <= 2; ++v)
            CHECK(derived_equivalent(punctured_disk(w), punctured_disk(v)).equivalent == (v == w));
    }
}

TEST_CASE("euler identity holds on the general corpus") {
    int n = 0;
    for (const auto& [name, p] : general_corpus(120)) {
        CAPTURE(name);
        CHECK(euler_lhs(p) == euler_rhs(surface_invariants(p)));
        ++n;
    }
    CHECK(n >= 100);
}

TEST_CASE("boundary walks sum to twice the arrow count") {
    // Every arrow lies on one permitted and one forbidden thread side.
    for (const auto& [name, p] : general_corpus(40)) {
        CAPTURE(name);
        int arrows = 0;
        for (const auto& w : boundary_walks(p)) {
            for (const auto& t : w.permitted_threads) arrows += static_cast<int>(t.arrows.size());
            for (const auto& t : w.forbidden_threads) arrows += static_cast<int>(t.arrows.size());
        }
        CHECK(arrows == 2 * p.num_arrows());
    }
}

TEST_CASE("invariants survive double koszul duality, relabelling and rigidify") {
    for (const auto& [name, p] : general_corpus(60)) {
        CAPTURE(name);
        const SurfaceInvariants s = surface_invariants(p);
        const AAGInvariant phi = aag_invariant(p);
        const GentlePresentation kk = koszul_dual(koszul_dual(p));
        CHECK(surface_invariants(kk) == s);
        CHECK(aag_invariant(kk) == phi);
        const GentlePresentation r = relabel(p, 11);
        CHECK(surface_invariants(r) == s);
        const RigidifyResult rr = rigidify(p);
        CHECK(is_rigid(rr.presentation));
        CHECK(surface_invariants(rr.presentation) == s);
        CHECK(aag_invariant(rr.presentation) == phi);
        if (rr.unchanged) CHECK(rr.exchanges == 0);
    }
}

TEST_CASE("morita pairs are recognised as derived equivalent") {
    for (const auto& [p, q] : morita_pairs()) {
        CHECK(surface_invariants(p) == surface_invariants(q));
        CHECK(derived_equivalent(p, q).equivalent);
    }
}

TEST_CASE("surface invariants round-trip through JSON") {
    for (const auto& [name, p] : general_corpus(20)) {
        const SurfaceInvariants s = surface_invariants(p);
        CHECK(parse_surface_invariants_json(surface_invariants_json(s)) == s);
    }
    CHECK_THROWS_AS(parse_surface_invariants_json("{\"genus\": -1, \"components\": []}"), InputError);
    CHECK_THROWS_AS(parse_surface_invariants_json("not json"), InputError);
}

TEST_CASE("degenerating components are single-interval components of winding zero") {
    for (const auto& [name, p] : general_corpus(40)) {
        for (const auto& c : degenerating_components(surface_invariants(p))) {
            CHECK(c.segments == 1);
            CHECK(c.winding == 0);
            CHECK(!c.fully_marked);
        }
    }
}

}  // TEST_SUITE
