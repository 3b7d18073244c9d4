#include "gentle/corpus.hpp"
#include "gentle/errors.hpp"
#include "gentle/quiver.hpp"
#include "gentle/category.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>
#include <string>

using namespace gentle;

TEST_SUITE("gentle-core") {

TEST_CASE("fields: Q and odd primes parse, characteristic 2 and composites are refused") {
    CHECK(Field::parse("Q").p == 0);
    CHECK(Field::parse("F5").p == 5);
    CHECK(Field::parse("F5").name() == "F5");
    CHECK_THROWS_AS(Field::parse("F2"), InputError);
    CHECK_THROWS_AS(Field::parse("F9"), InputError);
    CHECK_THROWS_AS(Field::parse("R"), InputError);
}

TEST_CASE("scalars reduce modulo p") {
    const Field f5{5};
    CHECK(Scalar(7L, f5) == Scalar(2L, f5));
    CHECK((Scalar(2L, f5) * Scalar(3L, f5)).is_one());
    CHECK((Scalar(2L, f5).inverse() * Scalar(2L, f5)).is_one());
    CHECK(Scalar(mpq_class(1, 2)) + Scalar(mpq_class(1, 2)) == Scalar(1L));
}

TEST_CASE("presentations round-trip through the text format") {
    for (const auto& [name, p] : general_corpus(30)) {
        CAPTURE(name);
        const GentlePresentation q = parse_presentation(serialize(p));
        CHECK(serialize(q) == serialize(p));
    }
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_presentation("field Q\nvertex 1 2\narrow a 1 -> 2 deg 0\n");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.col() > 0);
    }
    CHECK_THROWS_AS(parse_presentation("vertex 1\nbogus x\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("vertex 1 2\narrow a : 1 -> 3 deg 0\n"), InputError);
}

TEST_CASE("validator names the violated condition") {
    GradedQuiver q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a", 0, 1, 0}, {"b", 0, 1, 0}, {"c", 0, 2, 0}};
    const auto v = GentlePresentation::violations(q, {});
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("out-degree 3") != std::string::npos);
    CHECK_THROWS_AS(GentlePresentation::make({}, q, {}), GentleError);

    // Two relations after one arrow.
    GradedQuiver r;
    r.vertices = {"1", "2", "3", "4"};
    r.arrows = {{"a", 0, 1, 0}, {"b", 1, 2, 0}, {"c", 1, 3, 0}};
    const auto w = GentlePresentation::violations(r, {{0, 1}, {0, 2}});
    REQUIRE(!w.empty());
    CHECK(w[0].find("unique relation continuation") != std::string::npos);

    // Disconnected quiver.
    GradedQuiver d;
    d.vertices = {"1", "2", "3", "4"};
    d.arrows = {{"a", 0, 1, 0}, {"b", 2, 3, 0}};
    const auto x = GentlePresentation::violations(d, {});
    REQUIRE(x.size() == 1);
    CHECK(x[0].find("disconnected") != std::string::npos);
}

TEST_CASE("validator agrees with the brute-force scanner on random quivers") {
    int gentle_count = 0;
    for (unsigned s = 0; s < 200; ++s) {
        const RawQuiver r = random_quiver(s, 8);
        const bool lib = GentlePresentation::violations(r.quiver, r.relations).empty();
        CAPTURE(s);
        CHECK(lib == oracle::is_gentle(r.quiver, r.relations));
        gentle_count += lib;
    }
    // Both verdicts occur in the sample.
    CHECK(gentle_count > 20);
    CHECK(gentle_count < 180);
}

TEST_CASE("linear A3 with its relation: paths, antipaths and parallel paths") {
    const GentlePresentation p = linear_a(3, true);
    const auto paths = permitted_paths(p, 4);
    // e1, e2, e3, a1, a2 (a2 a1 is a relation).
    CHECK(paths.size() == 5);
    const AntipathCatalog cat = maximal_antipaths(p);
    CHECK(!cat.cyclic_antipaths_present);
    bool found = false;
    for (const auto& w : cat.antipaths)
        if (w.arrows.size() == 2) {
            found = true;
            CHECK(!parallel_path(p, w).has_value());
        }
    CHECK(found);
}

TEST_CASE("kronecker: length-one maximal antipaths have the other arrow as parallel path") {
    const GentlePresentation p = kronecker();
    const AntipathCatalog cat = maximal_antipaths(p);
    int with_parallel = 0;
    for (const auto& w : cat.antipaths) {
        if (w.arrows.size() != 1) continue;
        const auto par = parallel_path(p, w);
        REQUIRE(par.has_value());
        CHECK(par->arrows.size() == 1);
        CHECK(par->arrows[0] != w.arrows[0]);
        ++with_parallel;
    }
    CHECK(with_parallel == 2);
}

TEST_CASE("smoothness and properness") {
    CHECK(is_smooth(kronecker()));
    CHECK(is_proper(kronecker()));
    CHECK(!is_smooth(punctured_disk(0)));
    CHECK(is_proper(punctured_disk(0)));
    CHECK(is_smooth(polynomial_loop(0)));
    CHECK(!is_proper(polynomial_loop(0)));
}

TEST_CASE("koszul dual swaps relations and flips degrees") {
    const GentlePresentation p = algebra_b();
    const GentlePresentation d = koszul_dual(p);
    CHECK(d.num_arrows() == p.num_arrows());
    // Composable pairs: relations of d (on the opposite quiver) are the non-relations of p.
    int composable = 0;
    for (int f = 0; f < p.num_arrows(); ++f)
        for (int g = 0; g < p.num_arrows(); ++g)
            if (p.composable(f, g)) {
                ++composable;
                CHECK(d.is_relation(g, f) != p.is_relation(f, g));
            }
    CHECK(composable == 2);
    for (int a = 0; a < p.num_arrows(); ++a) CHECK(d.arrow(a).deg == 1 - p.arrow(a).deg);
    CHECK(serialize(koszul_dual(d)) == serialize(p));
}

TEST_CASE("basis category composition matches concatenation of arrow words") {
    for (const auto& [name, p] : smooth_proper_corpus(20)) {
        CAPTURE(name);
        const BasisCategory cat = BasisCategory::from_presentation(p);
        for (int a = 0; a < cat.size(); ++a)
            for (int b = 0; b < cat.size(); ++b) CHECK(cat.compose(a, b) == oracle::compose_paths(cat, a, b));
    }
}

TEST_CASE("basis category refuses non-proper presentations") {
    CHECK_THROWS(BasisCategory::from_presentation(polynomial_loop(0)));
}

TEST_CASE("relabelling keeps the presentation gentle and of the same size") {
    const GentlePresentation p = algebra_b();
    for (unsigned s = 1; s < 5; ++s) {
        const GentlePresentation q = relabel(p, s);
        CHECK(q.num_vertices() == p.num_vertices());
        CHECK(q.num_arrows() == p.num_arrows());
        CHECK(q.relations().size() == p.relations().size());
    }
}

}  // TEST_SUITE
