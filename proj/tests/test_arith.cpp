#include <doctest.h>

#include <random>

#include "fibercalc/arith.hpp"

using namespace fibercalc;

TEST_CASE("chi_pair closed form") {
    CHECK(chi_pair(5, 5) == Rat(0));
    CHECK(chi_pair(1, 6) == Rat(5, 18));
    CHECK(chi_pair(2, 6) == Rat(1, 18));
    CHECK(chi_pair(3, 6) == Rat(0));
    CHECK(chi_pair(2, 3) == Rat(-1, 18));
    CHECK(chi_pair(3, 4) == Rat(-5, 72));
    CHECK_THROWS_AS(chi_pair(0, 3), Error);
}

TEST_CASE("chi_pair symmetry and scale invariance") {
    for (Int p = 1; p <= 12; ++p)
        for (Int q = 1; q <= 12; ++q) {
            CHECK(chi_pair(p, q) == chi_pair(q, p));
            for (Int k = 2; k <= 20; k += 6)
                CHECK(chi_pair(k * p, k * q) == chi_pair(p, q));
        }
}

TEST_CASE("chi_pair mediant identity") {
    for (Int p = 1; p <= 100; ++p)
        for (Int q = 1; q <= 100; q += 3)
            CHECK(chi_pair(p, q) == chi_pair(p, p + q) + chi_pair(p + q, q));
}

TEST_CASE("dedekind sum small values") {
    CHECK(dedekind_sum(1, 1) == Rat(0));
    CHECK(dedekind_sum(1, 3) == Rat(1, 18));
    CHECK(dedekind_sum(1, 3) + dedekind_sum(3, 1) == chi_pair(1, 3));
    CHECK(dedekind_sum_direct(1, 3) == Rat(1, 18));
    CHECK_THROWS_AS(dedekind_sum(1, 0), Error);
}

TEST_CASE("dedekind sum symmetries") {
    for (long long q = 1; q <= 40; ++q)
        for (long long p = -15; p <= 15; ++p) {
            CHECK(dedekind_sum(-p, q) == -dedekind_sum(p, q));
            CHECK(dedekind_sum(p + 3 * q, q) == dedekind_sum(p, q));
        }
}

TEST_CASE("opposite residues cancel: s(p,q) + s(p',q) = 0 when q | p+p'") {
    for (long long q = 2; q <= 60; ++q)
        for (long long p = 1; p < q; ++p)
            CHECK(dedekind_sum(p, q) + dedekind_sum(q - p, q) == Rat(0));
}

TEST_CASE("reciprocity on a grid") {
    for (long long q = 1; q <= 60; ++q)
        for (long long p = 1; p <= 60; ++p) {
            if (gcd(Int(p), Int(q)) != 1) continue;
            CHECK(dedekind_sum(p, q) + dedekind_sum(q, p) == chi_pair(p, q));
        }
}

TEST_CASE("fast recursion equals direct summation") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        long long q = 1 + static_cast<long long>(rng() % 3000);
        long long p = static_cast<long long>(rng() % (2 * q + 1)) - q;
        CAPTURE(p);
        CAPTURE(q);
        CHECK(dedekind_sum(p, q) == dedekind_sum_direct(p, q));
    }
}

TEST_CASE("hj_expand basics") {
    HJChain c = hj_expand(2, 1);
    CHECK(c.es == std::vector<Int>{2});
    CHECK(c.mus == std::vector<Int>{1, 2});

    c = hj_expand(5, 4);
    CHECK(c.es == std::vector<Int>{2, 2, 2, 2});
    CHECK(c.mus == std::vector<Int>{1, 2, 3, 4, 5});

    c = hj_expand(5, 2);
    CHECK(c.es == std::vector<Int>{3, 2});
    CHECK(c.mus == std::vector<Int>{1, 3, 5});
    CHECK(continuant(c.es) == 5);
    CHECK(continuant({Int(2)}) == 2);

    CHECK_THROWS_AS(hj_expand(6, 4), Error);
    CHECK_THROWS_AS(hj_expand(5, 5), Error);
    CHECK_THROWS_AS(hj_expand(5, 0), Error);
}

TEST_CASE("branch_beta equals q/n both ways") {
    CHECK(branch_beta(hj_expand(2, 1)) == Rat(1, 2));
    CHECK(branch_beta(hj_expand(10, 7)) == Rat(7, 10));
    // all-2 chains ending in e: n = r(e-1)+1, q = (r-1)(e-1)+1
    for (long long r = 1; r <= 9; ++r)
        for (long long e = 2; e <= 7; ++e) {
            const Int n = r * (e - 1) + 1;
            const Int q = (r - 1) * (e - 1) + 1;
            HJChain c = hj_expand(n, q);
            std::vector<Int> expect(static_cast<std::size_t>(r - 1), Int(2));
            expect.push_back(Int(e));
            CHECK(c.es == expect);
            CHECK(branch_beta(c) == Rat(1) - make_rat(e - 1, n));
        }
}

TEST_CASE("branch_beta dual-path equality for all n <= 100") {
    for (Int n = 2; n <= 100; ++n)
        for (Int q = 1; q < n; ++q) {
            if (gcd(n, q) != 1) continue;
            CHECK(branch_beta(hj_expand(n, q)) == make_rat(q, n));
        }
}
