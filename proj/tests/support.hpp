#pragma once

// Test-side oracles and generators, kept independent of the library
// implementations they check.

#include <functional>
#include <random>
#include <vector>

#include "davint/rho.hpp"
#include "davint/zseq.hpp"

namespace davint::test_support {

/// Calls f on every nonempty multiset over the nonzero values of the
/// interval with length at most max_len.
template <class F>
void each_multiset(const interval& iv, i64 max_len, F&& f) {
    std::vector<i64> values;
    for (i64 v = -iv.neg_extent; v <= iv.pos_extent; ++v)
        if (v != 0) values.push_back(v);
    zseq current;
    auto rec = [&](auto&& self, std::size_t i, i64 left) -> void {
        if (i == values.size()) {
            if (!current.empty()) f(current);
            return;
        }
        self(self, i + 1, left);
        for (i64 take = 1; take <= left; ++take) {
            zseq next = current;
            next.add(values[i], take);
            std::swap(current, next);
            self(self, i + 1, left - take);
            std::swap(current, next);
        }
    };
    rec(rec, 0, max_len);
}

/// Minimality by unrestricted enumeration of proper nonempty sub-multisets.
/// No size-halving trick and no pruning: the brute oracle.
inline bool is_minimal_unrestricted(const zseq& s) {
    if (s.sum() != 0 || s.empty()) return false;
    std::vector<std::pair<i64, i64>> vals(s.counts().begin(), s.counts().end());
    const i64 n = s.length();
    bool found = false;
    auto rec = [&](auto&& self, std::size_t i, i64 taken, i64 sum) -> void {
        if (found) return;
        if (i == vals.size()) {
            if (taken >= 1 && taken < n && sum == 0) found = true;
            return;
        }
        for (i64 take = 0; take <= vals[i].second; ++take)
            self(self, i + 1, taken + take, sum + take * vals[i].first);
    };
    rec(rec, 0, 0, 0);
    return !found;
}

/// Re-scan: no total shift smaller than the witness admits a coprime split.
inline bool rho_witness_is_least(const interval& iv, const rho_witness& w) {
    for (i64 t = 0; t < w.total; ++t)
        for (i64 t1 = 0; t1 <= t; ++t1)
            if (gcd(iv.pos_extent - t1, iv.neg_extent - (t - t1)) == 1) return false;
    return true;
}

/// Random minimal zero-sum sequences over small intervals, by rejection.
inline std::vector<std::pair<interval, zseq>> random_minimal_sequences(int count, std::mt19937& rng) {
    std::vector<std::pair<interval, zseq>> out;
    std::uniform_int_distribution<i64> extent(1, 6);
    std::uniform_int_distribution<i64> len_dist(2, 10);
    while (int(out.size()) < count) {
        const interval iv(extent(rng), extent(rng));
        std::uniform_int_distribution<i64> value(-iv.neg_extent, iv.pos_extent);
        const i64 n = len_dist(rng);
        zseq s;
        bool ok = true;
        for (i64 k = 0; k < n && ok; ++k) {
            i64 v = value(rng);
            if (v == 0) {
                ok = false;
                break;
            }
            s.add(v);
        }
        if (!ok || s.sum() != 0) continue;
        if (!is_minimal(s)) continue;
        out.emplace_back(iv, s);
    }
    return out;
}

} // namespace davint::test_support
