#include "doctest.h"

#include <random>

#include "davint/rho.hpp"
#include "support.hpp"

using namespace davint;

TEST_CASE("interval validation") {
    CHECK_THROWS_AS(interval(0, 1), precondition_error);
    CHECK_THROWS_AS(interval(1, 0), precondition_error);
    CHECK_THROWS_AS(interval(-3, 5), precondition_error);
    CHECK(interval(2, 3).contains(-2));
    CHECK(interval(2, 3).contains(3));
    CHECK(!interval(2, 3).contains(-3));
    CHECK(interval(2, 3).min_side() == 2);
    CHECK(interval(2, 3).max_side() == 3);
}

TEST_CASE("rho pinned values") {
    auto w = rho(interval(6, 10));
    CHECK(w.total == 2);
    CHECK(w.pos_shift == 1);
    CHECK(w.neg_shift == 1);
    CHECK(gcd(10 - 1, 6 - 1) == 1);

    CHECK(rho(interval(5, 7)).total == 0);
    CHECK(rho(interval(22, 78)).total == 3);
    CHECK(rho(interval(4, 4)).total == 1);
    CHECK(rho(interval(1, 1)).total == 0);
    CHECK(rho(interval(255, 8'573'136)).total == 4);
}

TEST_CASE("rho of equal extents is 1 from 2 on") {
    for (i64 m = 2; m <= 60; ++m) CHECK(rho(interval(m, m)).total == 1);
}

TEST_CASE("rho symmetry") {
    for (i64 m = 1; m <= 300; ++m)
        for (i64 M = m; M <= 300; ++M) {
            if (rho(interval(m, M)).total != rho(interval(M, m)).total) {
                CAPTURE(m);
                CAPTURE(M);
                REQUIRE(false);
            }
        }
}

TEST_CASE("rho trivial bound and coprime characterization") {
    for (i64 m = 1; m <= 60; ++m)
        for (i64 M = 1; M <= 60; ++M) {
            auto w = rho(interval(m, M));
            if (std::min(m, M) == 1) CHECK(w.total == 0);
            else CHECK(w.total <= std::min(m, M) - 1);
            CHECK((w.total == 0) == (gcd(m, M) == 1));
        }
}

TEST_CASE("rho witness validity") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<i64> dist(1, 500);
    for (int k = 0; k < 400; ++k) {
        interval iv(dist(rng), dist(rng));
        auto w = rho(iv);
        CHECK(w.total == w.pos_shift + w.neg_shift);
        CHECK(gcd(iv.pos_extent - w.pos_shift, iv.neg_extent - w.neg_shift) == 1);
        CHECK(test_support::rho_witness_is_least(iv, w));
    }
}

TEST_CASE("rho witness smallest pos_shift tie-break") {
    // at (4, 6): t = 1 admits only the split (1, 0); at (6, 10): (1, 1)
    auto w = rho(interval(4, 6));
    CHECK(w.total == 1);
    CHECK(w.pos_shift == 1);
    CHECK(w.neg_shift == 0);
}

TEST_CASE("chi pinned values") {
    CHECK(chi(interval(6, 10)) == 14);
    CHECK(chi(interval(1, 1)) == 2);
    CHECK(chi(interval(4, 5)) == 9); // 2 * 5 - 1
}

TEST_CASE("chi equals extents minus rho on a small grid") {
    for (i64 m = 1; m <= 60; ++m)
        for (i64 M = 1; M <= 60; ++M) {
            if (chi(interval(m, M)) != m + M - rho(interval(m, M)).total) {
                CAPTURE(m);
                CAPTURE(M);
                REQUIRE(false);
            }
        }
}

TEST_CASE("rho_period pinned values") {
    CHECK(rho_period(6) == 60);
    CHECK(rho_period(1) == 1);
    CHECK(rho_period(10) == 2520);
}

TEST_CASE("rho_period overflows loudly for large extents") {
    CHECK_THROWS_AS(rho_period(200), overflow_error);
}

TEST_CASE("rho periodicity in the partner argument") {
    for (i64 m = 1; m <= 8; ++m) {
        const i64 period = i64(rho_period(m));
        for (i64 M = m; M <= 3 * period; ++M) {
            if (rho(interval(m, M)).total != rho(interval(m, M + period)).total) {
                CAPTURE(m);
                CAPTURE(M);
                REQUIRE(false);
            }
        }
    }
}
