#include <doctest.h>

#include "fibercalc/catalog.hpp"
#include "fibercalc/format.hpp"
#include "fibercalc/invariants.hpp"

using namespace fibercalc;

TEST_CASE("the 22 transcriptions reproduce their table row") {
    for (const auto& e : twentytwo()) {
        CAPTURE(e.key);
        REQUIRE(validate(e.graph).valid());
        CHECK(is_minimal_nc(e.graph));
        InvariantBundle b = compute_invariants(e.graph);
        CHECK(b.g == *e.expected.g);
        CHECK(b.c1sq_min == *e.expected.c1sq_min);
        CHECK(b.c2_min == *e.expected.c2_min);
        CHECK(b.chi == *e.expected.chi);
        CHECK(chi_via_pairs(e.graph) == b.chi);
        // classification constraints
        CHECK(b.g <= 6);
        CHECK(b.c1sq_min > Rat(4 * b.g) - Rat(11, 2));
    }
}

TEST_CASE("run extensions leave the Chern numbers unchanged") {
    for (int i : {10, 14, 15, 16, 19}) {
        const auto base = twentytwo_entry(i);
        for (long long run = 1; run <= 3; ++run) {
            CatalogEntry e = twentytwo_entry(i, run);
            CAPTURE(e.key);
            REQUIRE(validate(e.graph).valid());
            CHECK(is_minimal_nc(e.graph));
            CHECK(e.graph.components.size() ==
                  base.graph.components.size() + static_cast<std::size_t>(run));
            InvariantBundle b = compute_invariants(e.graph);
            CHECK(b.c1sq_min == *e.expected.c1sq_min);
            CHECK(b.c2_min == *e.expected.c2_min);
            CHECK(b.chi == *e.expected.chi);
        }
    }
    CHECK_THROWS_AS(twentytwo_entry(9, 1), Error);
}

TEST_CASE("example family formulas and structure") {
    for (long long g = 2; g <= 12; ++g) {
        CatalogEntry e = example_family(g);
        CAPTURE(g);
        REQUIRE(validate(e.graph).valid());
        CHECK(fiber_genus(e.graph) == g);
        InvariantBundle b = compute_invariants(e.graph);
        CHECK(b.c1sq_min == Rat(4 * g) - Rat(11, 2));
        CHECK(b.c2_min == Rat(2 * g) + Rat(5, 2));
        CHECK(b.chi == Rat(g, 2) - Rat(1, 4));
    }
    CHECK(*example_family(2).expected.c1sq_min == Rat(5, 2));
    CHECK(*example_family(2).expected.c2_min == Rat(13, 2));
    CHECK(*example_family(2).expected.chi == Rat(3, 4));
    CHECK(*example_family(5).expected.c1sq_min == Rat(29, 2));
    CHECK(*example_family(5).expected.c2_min == Rat(25, 2));
    CHECK(*example_family(5).expected.chi == Rat(9, 4));
    CHECK_THROWS_AS(example_family(1), Error);
}

TEST_CASE("case witnesses hit their table rows") {
    for (int c = 1; c <= 8; ++c)
        for (long long n = 1; n <= 4; ++n)
            for (long long h = 0; h <= 2; ++h) {
                if (!theorem14_applicable(c, n, h)) continue;
                CatalogEntry e = theorem14_family(c, n, h);
                CAPTURE(e.key);
                REQUIRE(validate(e.graph).valid());
                InvariantBundle b = compute_invariants(e.graph);
                const Rat nn = Rat(b.n_min.value_or(b.n_bar));
                CHECK(b.c1sq_min - 4 * nn == *e.expected.c1sq_offset);
                CHECK(b.c2_min - 2 * nn == *e.expected.c2_offset);
                CHECK(b.chi - nn / 2 == *e.expected.chi_offset);
                CHECK(b.c1sq_min == *e.expected.c1sq_min);
                CHECK(b.c2_min == *e.expected.c2_min);
                CHECK(b.chi == *e.expected.chi);
                const Rat gap = 2 * b.c2_min - b.c1sq_min;
                CHECK(gap < 6);
                CHECK((gap == 0 || (gap >= 3 && gap < 6)));
                if (c > 5) break;
            }
}

TEST_CASE("case 2 witness is the chi and c2 minimizer") {
    CatalogEntry e = theorem14_family(2, 1, 1);
    InvariantBundle b = compute_invariants(e.graph);
    CHECK(b.g == 2);
    REQUIRE(b.n_min.has_value());
    CHECK(*b.n_min == 0);
    CHECK(b.chi == Rat(1, 6));
    CHECK(b.c2_min == Rat(11, 6));
}

TEST_CASE("case 5 witness row") {
    InvariantBundle b = compute_invariants(theorem14_family(5, 1, 1).graph);
    const Rat nn = Rat(b.n_min.value_or(b.n_bar));
    CHECK(b.chi - nn / 2 == Rat(1, 3));
    CHECK(b.c1sq_min - 4 * nn == Rat(1));
    CHECK(b.c2_min - 2 * nn == Rat(3));
    CHECK(b.n_bar == *b.n_min + 1);
    CHECK(b.beta_plus == Rat(1));
    CHECK(b.blowups == 1);
}

TEST_CASE("case 7 witness forces a lone branch") {
    InvariantBundle b = compute_invariants(theorem14_family(7, 1, 0).graph);
    CHECK(b.beta_minus == Rat(1, 2));
    const Rat nn = Rat(b.n_min.value_or(b.n_bar));
    CHECK(b.c2_min - 2 * nn == Rat(3, 2));
    CHECK(b.c1sq_min - 4 * nn == Rat(-3, 2));
    CHECK(2 * b.c2_min - b.c1sq_min == Rat(9, 2));
}

TEST_CASE("kodaira calibration coefficients") {
    const std::vector<std::pair<std::string, long long>> expect = {
        {"II", 2}, {"III", 3}, {"IV", 4}, {"I0*", 6},
        {"IV*", 8}, {"III*", 9}, {"II*", 10}};
    for (const auto& [kind, c2] : expect) {
        CAPTURE(kind);
        CatalogEntry e = kodaira(kind);
        REQUIRE(validate(e.graph).valid());
        InvariantBundle b = compute_invariants(e.graph);
        CHECK(b.g == 1);
        CHECK(b.c1sq_min == Rat(0));
        CHECK(b.c2_min == Rat(c2));
        CHECK(b.chi == Rat(c2, 12));
    }
    for (const char* kind : {"I1", "I4", "2I3", "3I1", "I0", "2I0"}) {
        CAPTURE(kind);
        InvariantBundle b = compute_invariants(kodaira(kind).graph);
        CHECK(b.c1sq_min == Rat(0));
        CHECK(b.c2_min == Rat(0));
        CHECK(b.chi == Rat(0));
    }
    CHECK_THROWS_AS(kodaira("V"), Error);
}

TEST_CASE("lookup resolves every corpus key") {
    for (const auto& e : default_corpus()) {
        CAPTURE(e.key);
        CatalogEntry back = lookup(e.key);
        CHECK(back.key == e.key);
        CHECK(emit_fiber(back.graph) == emit_fiber(e.graph));
    }
    CHECK_THROWS_AS(lookup("nope/zzz"), Error);
}

TEST_CASE("catalog graphs round-trip through the text format") {
    for (const auto& e : default_corpus()) {
        CAPTURE(e.key);
        FiberGraph round = parse_fiber(emit_fiber(e.graph));
        CHECK(emit_fiber(round) == emit_fiber(e.graph));
    }
}
