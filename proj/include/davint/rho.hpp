#pragma once

#include <algorithm>
#include <cstdlib>

#include "davint/arith.hpp"
#include "davint/errors.hpp"

namespace davint {

/// The integer interval [-neg_extent, pos_extent], both extents >= 1.
struct interval {
    i64 neg_extent = 1;
    i64 pos_extent = 1;

    interval() = default;
    interval(i64 neg, i64 pos) : neg_extent(neg), pos_extent(pos) {
        if (neg < 1 || pos < 1) throw precondition_error("interval extents must be >= 1");
    }

    i64 min_side() const { return std::min(neg_extent, pos_extent); }
    i64 max_side() const { return std::max(neg_extent, pos_extent); }
    bool contains(i64 v) const { return -neg_extent <= v && v <= pos_extent; }

    friend bool operator==(const interval&, const interval&) = default;
};

/// Minimizing decomposition total = pos_shift + neg_shift with
/// gcd(pos_extent - pos_shift, neg_extent - neg_shift) = 1.
struct rho_witness {
    i64 total = 0;
    i64 pos_shift = 0; // subtracted from the positive extent
    i64 neg_shift = 0; // subtracted from the negative extent

    friend bool operator==(const rho_witness&, const rho_witness&) = default;
};

/// Least total shift t such that some split t = t1 + t2 makes the shrunken
/// extents coprime.  Scans t ascending and, within a t, the positive-side
/// shift ascending, so the reported witness is deterministic.
inline rho_witness rho(const interval& iv) {
    const i64 m = iv.neg_extent, M = iv.pos_extent;
    const i64 t_max = std::max<i64>(iv.min_side() - 1, 0);
    for (i64 t = 0; t <= t_max; ++t) {
        for (i64 t1 = 0; t1 <= t; ++t1) {
            const i64 t2 = t - t1;
            if (M - t1 < 1 || m - t2 < 1) continue;
            if (gcd(M - t1, m - t2) == 1) return {t, t1, t2};
        }
    }
    // unreachable: the shift t = min-1 always reduces one side to 1
    throw error("rho scan failed to terminate");
}

/// sup over x in [1, pos], y in [1, neg] of (x + y) / gcd(x, y), computed by
/// the exhaustive double loop.  The supremum is attained on a coprime pair,
/// so the result is an integer.
inline i64 chi(const interval& iv) {
    i64 best_num = 0, best_den = 1;
    for (i64 x = 1; x <= iv.pos_extent; ++x) {
        for (i64 y = 1; y <= iv.neg_extent; ++y) {
            const i64 num = x + y;
            const i64 den = gcd(x, y);
            if (num * best_den > best_num * den) {
                best_num = num;
                best_den = den;
            }
        }
    }
    if (best_num % best_den != 0) throw error("chi supremum is not integral");
    return best_num / best_den;
}

/// lcm(1..neg_extent): a period of M -> rho(neg_extent, M) on M >= neg_extent,
/// since each coprimality condition in the scan depends only on M modulo a
/// value <= neg_extent.
inline u128 rho_period(i64 neg_extent) {
    if (neg_extent < 1) throw precondition_error("rho_period requires extent >= 1");
    u128 period = 1;
    for (i64 k = 2; k <= neg_extent; ++k) period = lcm_checked(period, u128(k));
    return period;
}

} // namespace davint
