#include "doctest.h"

#include "davint/search.hpp"

using namespace davint;

TEST_CASE("exists_partner pinned cases") {
    CHECK(exists_partner(255, 4).has_value());
    CHECK(!exists_partner(16, 3).has_value());
    CHECK(!exists_partner(4, 2).has_value());
    CHECK(exists_partner(6, 2).has_value());
    CHECK(exists_partner(2, 1).has_value());
    CHECK_THROWS_AS(exists_partner(1, 1), precondition_error);
}

TEST_CASE("a found table is consistent and well-formed") {
    auto table = exists_partner(255, 4);
    REQUIRE(table.has_value());
    CHECK(table->cells.size() == 4 * 5 / 2);
    for (auto& [cell, p] : table->cells) {
        CHECK(cell.pos_shift + cell.neg_shift <= 3);
        CHECK((255 - cell.neg_shift) % p == 0);
    }
    for (auto& [ca, pa] : table->cells)
        for (auto& [cb, pb] : table->cells)
            if (pa == pb) CHECK((ca.pos_shift - cb.pos_shift) % pa == 0);
}

TEST_CASE("min_partner pinned cases") {
    auto p6 = min_partner(6, 2);
    REQUIRE(p6.has_value());
    CHECK(p6->partner == 10);

    auto p22 = min_partner(22, 3);
    REQUIRE(p22.has_value());
    CHECK(p22->partner == 78);
    CHECK(rho(interval(22, 78)).total == 3);
}

TEST_CASE("min_partner soundness on scattered arguments") {
    for (i64 m : {6, 8, 9, 10, 12, 15, 30}) {
        auto res = min_partner(m, 2);
        if (!res) continue;
        CHECK(res->partner >= m);
        CHECK(rho(interval(m, res->partner)).total >= 2);
        // nothing smaller in [m, partner) reaches the level
        for (i64 M = m; M < res->partner; ++M)
            CHECK(rho(interval(m, M)).total < 2);
    }
}

TEST_CASE("min_argument_scan pinned results") {
    CHECK(min_argument_scan(2, 5).empty());
    CHECK(min_argument_scan(2, 6) == std::vector<i64>{6});
    CHECK(min_argument_scan(3, 21).empty());
    CHECK(min_argument_scan(3, 22) == std::vector<i64>{22});
    CHECK(min_argument_scan(1, 8) == std::vector<i64>{2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("completeness cross-check against a period-bounded scan") {
    for (i64 m = 2; m <= 12; ++m) {
        const i64 period = i64(rho_period(m));
        for (i64 level = 1; level <= 3; ++level) {
            bool scan_hit = false;
            for (i64 M = m; M <= m + period && !scan_hit; ++M)
                scan_hit = rho(interval(m, M)).total >= level;
            CHECK(exists_partner(m, level).has_value() == scan_hit);
        }
    }
}

TEST_CASE("sporadic level-4 arguments have rho exactly 4") {
    CHECK(sporadic_rho_exact_check(255));
    CHECK(sporadic_rho_exact_check(286));
    CHECK_THROWS_AS(sporadic_rho_exact_check(100), precondition_error);
}

TEST_CASE("the published table for 255 solves to the published partner") {
    // column-major cells of the published assignment for argument 255
    prime_table table;
    table.arg = 255;
    table.level = 4;
    table.cells = {
        {{0, 0}, 3}, {{1, 0}, 5}, {{2, 0}, 17}, {{3, 0}, 3},
        {{0, 1}, 2}, {{1, 1}, 127}, {{2, 1}, 2},
        {{0, 2}, 11}, {{1, 2}, 23},
        {{0, 3}, 2},
    };
    auto sol = crt_solve(table_congruences(table));
    CHECK(i64(sol.value) == 8'573'136);
    CHECK(i64(sol.modulus) == 2LL * 3 * 5 * 11 * 17 * 23 * 127);
    CHECK(rho(interval(255, 8'573'136)).total == 4);

    auto best = min_partner(255, 4);
    REQUIRE(best.has_value());
    CHECK(best->partner <= 8'573'136);
    CHECK(rho(interval(255, best->partner)).total == 4);
}

TEST_CASE("the published table for 286 solves far above the published partner") {
    prime_table table;
    table.arg = 286;
    table.level = 4;
    table.cells = {
        {{0, 0}, 2}, {{1, 0}, 11}, {{2, 0}, 2}, {{3, 0}, 13},
        {{0, 1}, 3}, {{1, 1}, 5}, {{2, 1}, 19},
        {{0, 2}, 2}, {{1, 2}, 71},
        {{0, 3}, 283},
    };
    auto sol = crt_solve(table_congruences(table));
    CHECK(rho(interval(286, i64(sol.value))).total == 4);

    // the published least solution 121019856 does not fit any level-4 table:
    // every such table needs 13 to divide partner-1 or partner-3, but
    // 121019856 = 9 mod 13; its rho value is 3, witnessed at shift (3, 0)
    CHECK(121'019'856 % 13 == 9);
    CHECK(rho(interval(286, 121'019'856)).total == 3);
    CHECK(gcd(121'019'856 - 3, 286) == 1);

    auto best = min_partner(286, 4);
    REQUIRE(best.has_value());
    CHECK(best->partner <= i64(sol.value));
    CHECK(rho(interval(286, best->partner)).total == 4);
}

TEST_CASE("enumerate_tables stays small and deterministic") {
    auto tables = enumerate_tables(22, 3);
    CHECK(!tables.empty());
    CHECK(tables.size() == enumerate_tables(22, 3).size());
    // the least partner over all tables is the pinned 78
    auto best = min_partner(22, 3);
    REQUIRE(best.has_value());
    bool found_78 = false;
    for (auto& t : tables) {
        auto sol = crt_solve(table_congruences(t));
        i64 candidate = i64(sol.value);
        while (candidate < 22) candidate += i64(sol.modulus);
        found_78 |= candidate == 78;
    }
    CHECK(found_78);
}
