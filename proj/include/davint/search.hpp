#pragma once

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "davint/arith.hpp"
#include "davint/errors.hpp"
#include "davint/rho.hpp"

namespace davint {

/// One cell of the shift grid: the pair of shifts (pos_shift, neg_shift)
/// applied to the two extents, with pos_shift + neg_shift <= level - 1.
struct grid_cell {
    i64 pos_shift = 0; // shift on the free partner side
    i64 neg_shift = 0; // shift on the fixed argument side

    friend bool operator==(const grid_cell&, const grid_cell&) = default;
    friend auto operator<=>(const grid_cell&, const grid_cell&) = default;
};

/// Assignment of one prime per grid cell, the prime dividing arg - neg_shift.
/// Consistent when any two cells sharing a prime p have pos_shift values
/// congruent mod p; consistent tables correspond to actual partners via the
/// Chinese remainder theorem.
struct prime_table {
    i64 arg = 0;   // the fixed extent
    i64 level = 0; // targeted lower bound on rho
    std::vector<std::pair<grid_cell, i64>> cells; // column-major: neg_shift, then pos_shift
};

/// Congruences partner = pos_shift (mod prime), one per cell, duplicates
/// merged by crt_solve.
inline std::vector<congruence> table_congruences(const prime_table& table) {
    std::vector<congruence> sys;
    for (auto& [cell, p] : table.cells) sys.push_back({cell.pos_shift % p, p});
    return sys;
}

namespace detail {

// Backtracks over prime choices cell by cell.  emit(cells) -> bool, return
// true to stop early.
struct table_search {
    i64 arg = 0;
    i64 level = 0;
    std::vector<grid_cell> cells;
    std::vector<std::vector<i64>> choices;       // prime divisors per cell
    std::vector<std::pair<grid_cell, i64>> taken;
    std::map<i64, i64> residue_of_prime;         // prime -> pos_shift mod prime

    table_search(i64 arg_, i64 level_) : arg(arg_), level(level_) {
        for (i64 t2 = 0; t2 < level; ++t2)
            for (i64 t1 = 0; t1 + t2 <= level - 1; ++t1) cells.push_back({t1, t2});
        for (auto& c : cells) {
            const i64 column_value = arg - c.neg_shift;
            choices.push_back(column_value >= 2 ? prime_divisors(column_value)
                                                : std::vector<i64>{});
        }
    }

    template <class Emit>
    bool run(Emit&& emit) {
        for (auto& ps : choices)
            if (ps.empty()) return false; // a column value of 1 blocks every table
        return backtrack(0, emit);
    }

private:
    template <class Emit>
    bool backtrack(std::size_t i, Emit&& emit) {
        if (i == cells.size()) return emit(taken);
        for (i64 p : choices[i]) {
            const i64 r = cells[i].pos_shift % p;
            auto it = residue_of_prime.find(p);
            if (it != residue_of_prime.end() && it->second != r) continue;
            const bool fresh = it == residue_of_prime.end();
            if (fresh) residue_of_prime.emplace(p, r);
            taken.push_back({cells[i], p});
            if (backtrack(i + 1, emit)) return true;
            taken.pop_back();
            if (fresh) residue_of_prime.erase(p);
        }
        return false;
    }
};

} // namespace detail

/// A consistent prime table for (arg, level) if one exists; equivalently,
/// some partner M attains rho(arg, M) >= level.  Cells are filled
/// column-major, candidate primes ascending, so the returned table is the
/// first in that deterministic order.
inline std::optional<prime_table> exists_partner(i64 arg, i64 level) {
    if (arg < 2 || level < 1) throw precondition_error("exists_partner requires arg >= 2, level >= 1");
    detail::table_search search(arg, level);
    std::optional<prime_table> out;
    search.run([&](const std::vector<std::pair<grid_cell, i64>>& cells) {
        out = prime_table{arg, level, cells};
        return true;
    });
    return out;
}

/// Every consistent prime table, in the deterministic backtracking order.
inline std::vector<prime_table> enumerate_tables(i64 arg, i64 level) {
    if (arg < 2 || level < 1) throw precondition_error("enumerate_tables requires arg >= 2, level >= 1");
    detail::table_search search(arg, level);
    std::vector<prime_table> out;
    search.run([&](const std::vector<std::pair<grid_cell, i64>>& cells) {
        out.push_back(prime_table{arg, level, cells});
        return false;
    });
    return out;
}

struct partner_result {
    i64 partner = 0;
    prime_table table;
};

/// Smallest partner M >= arg with rho(arg, M) >= level: solves the
/// congruence system of every consistent table, bumps the least solution to
/// M >= arg, verifies the rho value directly, and returns the global
/// minimum.  Exhaustive over tables since prime permutations can trade the
/// minimum between tables.
inline std::optional<partner_result> min_partner(i64 arg, i64 level) {
    std::optional<partner_result> best;
    for (auto& table : enumerate_tables(arg, level)) {
        const crt_solution sol = crt_solve(table_congruences(table));
        if (sol.modulus > u128(std::numeric_limits<i64>::max()))
            throw overflow_error("combined table modulus exceeds the integer range");
        const i64 period = i64(sol.modulus);
        i64 candidate = i64(sol.value);
        while (candidate < arg) candidate += period;
        std::optional<i64> verified;
        for (int hop = 0; hop < 4 && !verified; ++hop, candidate += period)
            if (rho(interval(arg, candidate)).total >= level) verified = candidate;
        if (!verified) throw error("table partner failed the direct rho check");
        if (!best || *verified < best->partner) best = partner_result{*verified, table};
    }
    return best;
}

/// All args up to arg_max admitting a partner at the given level, ascending.
inline std::vector<i64> min_argument_scan(i64 level, i64 arg_max) {
    if (level < 1) throw precondition_error("min_argument_scan requires level >= 1");
    if (arg_max > 10'000) throw precondition_error("min_argument_scan supports arg_max <= 10^4");
    std::vector<i64> out;
    for (i64 m = 2; m <= arg_max; ++m)
        if (exists_partner(m, level)) out.push_back(m);
    return out;
}

/// For the two sporadic level-4 arguments, checks that no partner reaches
/// level 5, so every level-4 partner has rho exactly 4.
inline bool sporadic_rho_exact_check(i64 arg) {
    if (arg != 255 && arg != 286)
        throw precondition_error("sporadic_rho_exact_check applies to 255 and 286 only");
    return !exists_partner(arg, 5).has_value();
}

} // namespace davint
