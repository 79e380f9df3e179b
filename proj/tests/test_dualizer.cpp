#include <doctest.h>

#include "fibercalc/catalog.hpp"
#include "fibercalc/classify.hpp"
#include "fibercalc/dualizer.hpp"
#include "fibercalc/invariants.hpp"

using namespace fibercalc;

TEST_CASE("multiplicity lcm") {
    CHECK(multiplicity_lcm(kodaira("II").graph) == 6);
    CHECK(multiplicity_lcm(example_family(4).graph) == 36);
    CHECK(multiplicity_lcm(kodaira("I3").graph) == 1);
    CHECK(default_dual_degree(kodaira("I3").graph) == 1);
    CHECK(default_dual_degree(kodaira("II").graph) == 5);
}

TEST_CASE("node_chain worked examples") {
    NodeChain c = node_chain(1, 6, 5);
    CHECK(c.chain.es == std::vector<Int>{2, 2, 2, 2});
    CHECK(c.gammas == std::vector<Int>{1, 2, 3, 4, 5, 6});

    c = node_chain(2, 6, 5);
    CHECK(c.chain.es == std::vector<Int>{3, 2});
    CHECK(c.gammas == std::vector<Int>{2, 2, 4, 6});

    c = node_chain(1, 1, 3);
    CHECK(c.chain.es == std::vector<Int>{2, 2});
    CHECK(c.gammas == std::vector<Int>{1, 1, 1, 1});

    CHECK_THROWS_AS(node_chain(2, 6, 4), Error);
    CHECK_THROWS_AS(node_chain(1, 2, 1), Error);
}

TEST_CASE("node_chain reversal consistency") {
    for (long long n = 2; n <= 23; ++n)
        for (long long a = 1; a <= 8; ++a)
            for (long long b = 1; b <= 8; ++b) {
                if ((n + 1) % a != 0 || (n + 1) % b != 0) continue;
                NodeChain fwd = node_chain(a, b, n);
                NodeChain rev = node_chain(b, a, n);
                std::vector<Int> flipped(rev.gammas.rbegin(), rev.gammas.rend());
                CHECK(fwd.gammas == flipped);
                std::vector<Int> es_flipped(rev.chain.es.rbegin(), rev.chain.es.rend());
                CHECK(fwd.chain.es == es_flipped);
            }
}

TEST_CASE("dual of kodaira II reconstructs the II* shape") {
    FiberGraph ii = kodaira("II").graph;
    FiberGraph raw = dual_fiber(ii, 5);
    CHECK(raw.components.size() == 12);  // 4 strict transforms + 4 + 2 + 2
    CHECK(validate(raw).valid());
    CHECK(raw.blowups == 3);

    auto min = minimize(raw);
    CHECK(min.contractions == 3);
    CHECK(min.graph.components.size() == 9);
    CHECK(canonical_form(min.graph) == canonical_form(kodaira("II*").graph));

    DualityCheck dc = duality_check(ii, 5);
    CHECK(dc.chi_f == Rat(1, 6));
    CHECK(dc.chi_dual == Rat(5, 6));
    CHECK(dc.n_bar == 1);
    CHECK(dc.ok);
}

TEST_CASE("dual of a reduced nodal fiber keeps chi = 0") {
    FiberGraph i1 = kodaira("I1").graph;
    for (Int n : {Int(2), Int(3), Int(5)}) {
        FiberGraph d = dual_fiber(i1, n);
        CHECK(validate(d).valid());
        CHECK(chi_via_pairs(d) == Rat(0));
        for (const auto& c : d.components) CHECK(c.mult == 1);
        CHECK(duality_check(i1, n).ok);
    }
}

TEST_CASE("dual of a multiple cycle has constant multiplicity") {
    FiberGraph f = kodaira("2I3").graph;  // cycle of three, multiplicity 2
    FiberGraph d = dual_fiber(f, 3);
    CHECK(validate(d).valid());
    for (const auto& c : d.components) CHECK(c.mult == 2);
    CHECK(duality_check(f, 3).ok);
}

TEST_CASE("identity dual at n = 1") {
    FiberGraph f = kodaira("I0*").graph;  // M = 2, minimal admissible n is 1
    CHECK(default_dual_degree(f) == 1);
    DualityCheck dc = duality_check(f);
    CHECK(dc.chi_f == Rat(1, 2));
    CHECK(dc.chi_dual == Rat(1, 2));
    CHECK(dc.n_bar == 1);
    CHECK(dc.ok);
    // and with an actual insertion at n = 3
    CHECK(duality_check(f, 3).ok);
}

TEST_CASE("admissibility is enforced") {
    CHECK_THROWS_AS(dual_fiber(kodaira("II").graph, 4), Error);
    CHECK_THROWS_AS(dual_fiber(kodaira("II").graph, 6), Error);
}

TEST_CASE("chi of the dual does not depend on the admissible degree") {
    for (int i : {9, 11, 21}) {
        FiberGraph f = twentytwo_entry(i).graph;
        Int m = multiplicity_lcm(f);
        Rat first = chi_via_pairs(dual_fiber(f, m - 1));
        Rat second = chi_via_pairs(dual_fiber(f, 2 * m - 1));
        Rat third = chi_via_pairs(dual_fiber(f, 3 * m - 1));
        CHECK(first == second);
        CHECK(first == third);
    }
}

TEST_CASE("double dual preserves chi") {
    for (const char* kind : {"II", "III", "I0*", "I2"}) {
        FiberGraph f = kodaira(kind).graph;
        Rat chi = chi_via_pairs(f);
        FiberGraph star = dual_fiber(f);
        FiberGraph star2 = dual_fiber(star);
        CHECK(chi_via_pairs(star2) == chi);
    }
}

TEST_CASE("duality across the small catalog") {
    for (int i : {7, 9, 10, 17, 21, 22}) {
        FiberGraph f = twentytwo_entry(i).graph;
        Int m = multiplicity_lcm(f);
        CHECK(duality_check(f, m - 1).ok);
        CHECK(duality_check(f, 2 * m - 1).ok);
    }
    for (long long g = 2; g <= 5; ++g) {
        FiberGraph f = example_family(g).graph;
        CHECK(duality_check(f).ok);
    }
    // every admissible degree up to 3 M_F
    for (const auto& kind : kodaira_kinds()) {
        FiberGraph f = kodaira(kind).graph;
        Int m = multiplicity_lcm(f);
        for (Int n = 1; n <= 3 * m; ++n) {
            if (mod_floor(n + 1, m) != 0) continue;
            CAPTURE(kind);
            CAPTURE(n.str());
            CHECK(duality_check(f, n).ok);
        }
    }
}

TEST_CASE("inserted chains satisfy Zariski by construction") {
    // Full validation on a small dual; the Zariski audit scales to the
    // big one (validate's semidefiniteness test is cubic in size).
    FiberGraph small = dual_fiber(kodaira("II").graph, 11);
    CHECK(validate(small).valid());

    FiberGraph f = twentytwo_entry(9).graph;
    FiberGraph d = dual_fiber(f, multiplicity_lcm(f) - 1);
    for (std::size_t i = 0; i < d.components.size(); ++i)
        CHECK(d.zariski_defect(static_cast<int>(i)) == 0);
    CHECK(fiber_genus(d) == fiber_genus(f));
}
