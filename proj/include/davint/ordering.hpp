#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "davint/errors.hpp"
#include "davint/rho.hpp"
#include "davint/zseq.hpp"

namespace davint {

enum class ordering_case {
    l2,
    l3_i,
    l3_ii,
    l3_iii,
    l4_i,
    l4_ii,
    l4_iii,
    l4_iv,
    l4_v,
    l4_vi,
};

inline const char* label_token(ordering_case c) {
    switch (c) {
        case ordering_case::l2: return "L2";
        case ordering_case::l3_i: return "L3_i";
        case ordering_case::l3_ii: return "L3_ii";
        case ordering_case::l3_iii: return "L3_iii";
        case ordering_case::l4_i: return "L4_i";
        case ordering_case::l4_ii: return "L4_ii";
        case ordering_case::l4_iii: return "L4_iii";
        case ordering_case::l4_iv: return "L4_iv";
        case ordering_case::l4_v: return "L4_v";
        case ordering_case::l4_vi: return "L4_vi";
    }
    return "?";
}

/// A permutation of the sequence, the partial-sum window it achieves, and the
/// case label of the construction that produced it.  Entries are
/// (value, occurrence index); each occurrence of the multiset appears once.
struct ordering_result {
    std::vector<std::pair<i64, i64>> order;
    i64 window_lo = 0;
    i64 window_hi = 0;
    ordering_case label = ordering_case::l2;
};

namespace detail {

// Materialized occurrences of a multiset with used-markers and the canonical
// tie-breaks: greedy picks take the smallest value first, designated elements
// the smallest absolute value first.
struct occurrence_pool {
    std::vector<std::pair<i64, i64>> items; // (value, occurrence index)
    std::vector<bool> used;

    explicit occurrence_pool(const zseq& s) {
        for (auto& [v, c] : s.counts())
            for (i64 k = 0; k < c; ++k) items.emplace_back(v, k);
        used.assign(items.size(), false);
    }

    template <class Pred>
    int pick_smallest_value(Pred&& pred) const {
        int best = -1;
        for (int i = 0; i < int(items.size()); ++i) {
            if (used[i] || !pred(i)) continue;
            if (best < 0 || items[i] < items[best]) best = i;
        }
        return best;
    }

    template <class Pred>
    int pick_smallest_abs(Pred&& pred) const {
        int best = -1;
        auto key = [&](int i) {
            return std::tuple(std::abs(items[i].first), items[i].first, items[i].second);
        };
        for (int i = 0; i < int(items.size()); ++i) {
            if (used[i] || !pred(i)) continue;
            if (best < 0 || key(i) < key(best)) best = i;
        }
        return best;
    }

    // unused indices with positive value
    std::vector<int> unused_positive() const {
        std::vector<int> out;
        for (int i = 0; i < int(items.size()); ++i)
            if (!used[i] && items[i].first > 0) out.push_back(i);
        return out;
    }
};

inline void validate_ordering_input(const zseq& s, const interval& iv, i64 min_extent,
                                    int min_off_extreme, const char* op) {
    if (iv.neg_extent < min_extent || iv.pos_extent < min_extent)
        throw precondition_error(std::string(op) + ": interval extents must be >= " +
                                 std::to_string(min_extent));
    for (auto& [v, c] : s.counts())
        if (!iv.contains(v))
            throw precondition_error(std::string(op) + ": sequence leaves the interval");
    if (!is_zero_sum(s) || !is_minimal(s))
        throw precondition_error(std::string(op) + ": sequence is not a minimal zero-sum sequence");
    int off = 0;
    for (auto& [v, c] : s.counts())
        if (v != -iv.neg_extent && v != iv.pos_extent) off += int(c);
    if (off < min_off_extreme)
        throw precondition_error(std::string(op) + ": needs at least " +
                                 std::to_string(min_off_extreme) +
                                 " elements different from both interval endpoints");
}

inline bool is_off_extreme(i64 v, const interval& iv) {
    return v != -iv.neg_extent && v != iv.pos_extent;
}

// Two-rule greedy: start at a designated off-extreme element, then always take
// an unused element whose sign opposes the running sum.
inline std::vector<std::pair<i64, i64>> greedy_opposite_sign(const zseq& s, const interval& iv) {
    occurrence_pool pool(s);
    int start = pool.pick_smallest_abs([&](int i) { return is_off_extreme(pool.items[i].first, iv); });
    if (start < 0) throw precondition_error("no element distinct from both endpoints");
    std::vector<std::pair<i64, i64>> order;
    pool.used[start] = true;
    order.push_back(pool.items[start]);
    i64 sum = pool.items[start].first;
    const std::size_t n = pool.items.size();
    while (order.size() < n) {
        if (sum == 0) throw error("partial sum hit zero before the end on minimal input");
        int next = sum > 0 ? pool.pick_smallest_value([&](int i) { return pool.items[i].first < 0; })
                           : pool.pick_smallest_value([&](int i) { return pool.items[i].first > 0; });
        if (next < 0) throw error("greedy ran out of elements of the required sign");
        pool.used[next] = true;
        order.push_back(pool.items[next]);
        sum += pool.items[next].first;
    }
    return order;
}

} // namespace detail

/// Orders a minimal zero-sum sequence that has an element distinct from both
/// endpoints so that every partial sum stays in [-(neg-1), pos-1].
inline ordering_result order_lemma2(const zseq& s, const interval& iv) {
    detail::validate_ordering_input(s, iv, 1, 1, "order_lemma2");
    ordering_result res;
    res.order = detail::greedy_opposite_sign(s, iv);
    res.window_lo = -(iv.neg_extent - 1);
    res.window_hi = iv.pos_extent - 1;
    res.label = ordering_case::l2;
    return res;
}

namespace detail {

// Four-rule construction, mixed-sign variant: designated first element is a
// positive off-extreme d1, the reserved element d2 a negative off-extreme.
// Yields partial sums in [-(neg-2), pos-1].
inline std::vector<std::pair<i64, i64>> run_lemma3_mixed(const zseq& s, const interval& iv) {
    occurrence_pool pool(s);
    int d1 = pool.pick_smallest_abs(
        [&](int i) { return pool.items[i].first > 0 && is_off_extreme(pool.items[i].first, iv); });
    int d2 = pool.pick_smallest_abs(
        [&](int i) { return pool.items[i].first < 0 && is_off_extreme(pool.items[i].first, iv); });
    if (d1 < 0 || d2 < 0) throw error("mixed-sign construction without both signs");
    std::vector<std::pair<i64, i64>> order;
    pool.used[d1] = true;
    order.push_back(pool.items[d1]);
    i64 sum = pool.items[d1].first;
    const std::size_t n = pool.items.size();
    while (order.size() < n) {
        int next = -1;
        if (sum < 0) {
            next = pool.pick_smallest_value([&](int i) { return pool.items[i].first > 0; });
        } else if (sum == 1) {
            next = pool.used[d2] ? -1 : d2;
        } else { // sum > 1
            next = pool.pick_smallest_value(
                [&](int i) { return pool.items[i].first < 0 && i != d2; });
            if (next < 0 && !pool.used[d2]) next = d2;
        }
        if (next < 0) throw error("four-rule construction stalled");
        pool.used[next] = true;
        order.push_back(pool.items[next]);
        sum += pool.items[next].first;
    }
    return order;
}

// Four-rule construction, one-sign variant (all off-extreme elements
// positive): d1 is the smallest positive element (<= pos-2 here), d2 another
// positive off-extreme.  Yields partial sums in [-(neg-1), pos-2].
inline std::vector<std::pair<i64, i64>> run_lemma3_positive(const zseq& s, const interval& iv) {
    occurrence_pool pool(s);
    int d1 = pool.pick_smallest_abs([&](int i) { return pool.items[i].first > 0; });
    if (d1 < 0 || pool.items[d1].first > iv.pos_extent - 2)
        throw error("one-sign construction requires an element <= pos-2");
    int d2 = pool.pick_smallest_abs([&](int i) {
        return i != d1 && pool.items[i].first > 0 && is_off_extreme(pool.items[i].first, iv);
    });
    if (d2 < 0) throw error("one-sign construction requires a second off-extreme element");
    std::vector<std::pair<i64, i64>> order;
    pool.used[d1] = true;
    order.push_back(pool.items[d1]);
    i64 sum = pool.items[d1].first;
    const std::size_t n = pool.items.size();
    while (order.size() < n) {
        int next = -1;
        if (sum > 0) {
            next = pool.pick_smallest_value([&](int i) { return pool.items[i].first < 0; });
        } else if (sum == -1) {
            next = pool.used[d2] ? -1 : d2;
        } else { // sum < -1
            next = pool.pick_smallest_value(
                [&](int i) { return pool.items[i].first > 0 && i != d2; });
            if (next < 0 && !pool.used[d2]) next = d2;
        }
        if (next < 0) throw error("four-rule construction stalled");
        pool.used[next] = true;
        order.push_back(pool.items[next]);
        sum += pool.items[next].first;
    }
    return order;
}

inline std::vector<std::pair<i64, i64>> negate_order(std::vector<std::pair<i64, i64>> order) {
    for (auto& [v, occ] : order) v = -v;
    return order;
}

} // namespace detail

/// Lemma-3 style ordering: structural case first (all off-extreme elements
/// equal to pos-1 or all equal to -(neg-1), label L3_iii with the Lemma-2
/// window), otherwise the four-rule construction narrowed by one on the side
/// the off-extreme elements avoid.
inline ordering_result order_lemma3(const zseq& s, const interval& iv) {
    detail::validate_ordering_input(s, iv, 2, 2, "order_lemma3");
    const i64 m = iv.neg_extent, M = iv.pos_extent;
    bool all_top = true, all_bottom = true, any_pos = false, any_neg = false;
    for (auto& [v, c] : s.counts()) {
        if (!detail::is_off_extreme(v, iv)) continue;
        all_top &= v == M - 1;
        all_bottom &= v == -(m - 1);
        any_pos |= v > 0;
        any_neg |= v < 0;
    }
    ordering_result res;
    if (all_top || all_bottom) {
        res.order = detail::greedy_opposite_sign(s, iv);
        res.window_lo = -(m - 1);
        res.window_hi = M - 1;
        res.label = ordering_case::l3_iii;
        return res;
    }
    if (any_pos && any_neg) {
        res.order = detail::run_lemma3_mixed(s, iv);
        res.window_lo = -(m - 2);
        res.window_hi = M - 1;
        res.label = ordering_case::l3_ii;
    } else if (any_pos) {
        res.order = detail::run_lemma3_positive(s, iv);
        res.window_lo = -(m - 1);
        res.window_hi = M - 2;
        res.label = ordering_case::l3_i;
    } else {
        // mirror: negate, swap extents, run the positive variant, negate back
        res.order = detail::negate_order(detail::run_lemma3_positive(s.negated(), interval(M, m)));
        res.window_lo = -(m - 2);
        res.window_hi = M - 1;
        res.label = ordering_case::l3_ii;
    }
    return res;
}

namespace detail {

// Seven-rule construction (all off-extreme elements positive) for the
// lemma-4 ordering: designated d1 <= pos-3, d2 <= pos-2, d3 a further
// positive off-extreme.  Yields partial sums in [-(neg-1), pos-3].
inline std::vector<std::pair<i64, i64>> run_lemma4_positive(const zseq& s, const interval& iv) {
    occurrence_pool pool(s);
    const i64 M = iv.pos_extent;
    int d1 = pool.pick_smallest_abs(
        [&](int i) { return pool.items[i].first > 0 && pool.items[i].first <= M - 3; });
    if (d1 < 0) throw error("seven-rule construction requires an element <= pos-3");
    int d2 = pool.pick_smallest_abs(
        [&](int i) { return i != d1 && pool.items[i].first > 0 && pool.items[i].first <= M - 2; });
    if (d2 < 0) throw error("seven-rule construction requires a second element <= pos-2");
    int d3 = pool.pick_smallest_abs([&](int i) {
        return i != d1 && i != d2 && pool.items[i].first > 0 &&
               is_off_extreme(pool.items[i].first, iv);
    });
    if (d3 < 0) throw error("seven-rule construction requires a third off-extreme element");

    std::vector<std::pair<i64, i64>> order;
    pool.used[d1] = true;
    order.push_back(pool.items[d1]);
    i64 sum = pool.items[d1].first;
    const std::size_t n = pool.items.size();
    while (order.size() < n) {
        int next = -1;
        if (sum > 0) {
            next = pool.pick_smallest_value([&](int i) { return pool.items[i].first < 0; });
        } else if (sum == -1) {
            next = pool.used[d2] ? -1 : d2;
        } else if (sum == -2) {
            next = pool.used[d3] ? (pool.used[d2] ? -1 : d2) : d3;
        } else { // sum < -2
            next = pool.pick_smallest_value(
                [&](int i) { return pool.items[i].first > 0 && i != d2 && i != d3; });
            if (next < 0 && !pool.used[d3]) next = d3;
            if (next < 0 && !pool.used[d2]) next = d2;
        }
        if (next < 0) throw error("seven-rule construction stalled");
        pool.used[next] = true;
        order.push_back(pool.items[next]);
        sum += pool.items[next].first;
    }
    return order;
}

// Five-rule construction (off-extreme elements of both signs) for the
// lemma-4 ordering: starts at a designated positive d2 avoiding the four
// extreme values, with d1 a negative off-extreme and d3 another positive
// off-extreme held in reserve.  Yields partial sums in [-(neg-2), pos-2].
inline std::vector<std::pair<i64, i64>> run_lemma4_mixed(const zseq& s, const interval& iv) {
    occurrence_pool pool(s);
    const i64 M = iv.pos_extent;
    int d2 = pool.pick_smallest_abs(
        [&](int i) { return pool.items[i].first >= 1 && pool.items[i].first <= M - 2; });
    if (d2 < 0) throw error("five-rule construction requires a positive element <= pos-2");
    int d1 = pool.pick_smallest_abs(
        [&](int i) { return pool.items[i].first < 0 && is_off_extreme(pool.items[i].first, iv); });
    if (d1 < 0) throw error("five-rule construction requires a negative off-extreme element");
    int d3 = pool.pick_smallest_abs([&](int i) {
        return i != d2 && pool.items[i].first > 0 && is_off_extreme(pool.items[i].first, iv);
    });
    if (d3 < 0) throw error("five-rule construction requires a second positive off-extreme element");

    std::vector<std::pair<i64, i64>> order;
    pool.used[d2] = true;
    order.push_back(pool.items[d2]);
    i64 sum = pool.items[d2].first;
    const std::size_t n = pool.items.size();
    while (order.size() < n) {
        int next = -1;
        if (sum == 1) {
            next = pool.used[d1] ? -1 : d1;
        } else if (sum > 1) {
            // keep d1 in reserve for the sum-1 rule unless it is the last negative
            next = pool.pick_smallest_value(
                [&](int i) { return pool.items[i].first < 0 && i != d1; });
            if (next < 0 && !pool.used[d1]) next = d1;
        } else if (sum == -1) {
            next = pool.used[d3] ? -1 : d3;
        } else { // sum < -1
            next = pool.pick_smallest_value(
                [&](int i) { return pool.items[i].first > 0 && i != d3; });
            if (next < 0 && !pool.used[d3]) next = d3;
        }
        if (next < 0) throw error("five-rule construction stalled");
        pool.used[next] = true;
        order.push_back(pool.items[next]);
        sum += pool.items[next].first;
    }
    return order;
}

} // namespace detail

/// Lemma-4 style ordering.  Structural cases are tested first, with
/// precedence iv < v < vi; constructive cases narrow the window by three in
/// total.  Structural labels carry the Lemma-2 window.
inline ordering_result order_lemma4(const zseq& s, const interval& iv) {
    detail::validate_ordering_input(s, iv, 4, 3, "order_lemma4");
    const i64 m = iv.neg_extent, M = iv.pos_extent;

    bool all_top2 = true, all_bottom2 = true, all_outer = true;
    i64 off_count = 0, not_top1 = 0, not_bottom1 = 0;
    bool any_pos = false, any_neg = false;
    for (auto& [v, c] : s.counts()) {
        if (!detail::is_off_extreme(v, iv)) continue;
        off_count += c;
        all_top2 &= v == M - 1 || v == M - 2;
        all_bottom2 &= v == -(m - 1) || v == -(m - 2);
        all_outer &= v == M - 1 || v == -(m - 1);
        if (v != M - 1) not_top1 += c;
        if (v != -(m - 1)) not_bottom1 += c;
        any_pos |= v > 0;
        any_neg |= v < 0;
    }

    ordering_result res;
    auto structural = [&](ordering_case label) {
        res.order = detail::greedy_opposite_sign(s, iv);
        res.window_lo = -(m - 1);
        res.window_hi = M - 1;
        res.label = label;
        return res;
    };
    if (all_top2 || all_bottom2) return structural(ordering_case::l4_iv);
    if (all_outer) return structural(ordering_case::l4_v);
    if (not_top1 <= 1 || not_bottom1 <= 1) return structural(ordering_case::l4_vi);

    if (!any_neg) {
        res.order = detail::run_lemma4_positive(s, iv);
        res.window_lo = -(m - 1);
        res.window_hi = M - 3;
        res.label = ordering_case::l4_i;
        return res;
    }
    if (!any_pos) {
        res.order = detail::negate_order(detail::run_lemma4_positive(s.negated(), interval(M, m)));
        res.window_lo = -(m - 3);
        res.window_hi = M - 1;
        res.label = ordering_case::l4_iii;
        return res;
    }

    // mixed signs: try the primal orientation, else mirror
    const auto has_primal = [&](const zseq& seq, const interval& box) {
        i64 pos_off = 0, neg_off = 0;
        bool candidate = false;
        for (auto& [v, c] : seq.counts()) {
            if (v == -box.neg_extent || v == box.pos_extent) continue;
            if (v > 0) pos_off += c;
            if (v < 0) neg_off += c;
            if (v >= 1 && v <= box.pos_extent - 2) candidate = true;
        }
        return candidate && pos_off >= 2 && neg_off >= 1;
    };
    res.window_lo = -(m - 2);
    res.window_hi = M - 2;
    res.label = ordering_case::l4_ii;
    if (has_primal(s, iv)) {
        res.order = detail::run_lemma4_mixed(s, iv);
    } else {
        res.order = detail::negate_order(detail::run_lemma4_mixed(s.negated(), interval(M, m)));
    }
    return res;
}

/// Checks that the ordering covers the multiset exactly, keeps every prefix
/// sum inside the window, produces pairwise distinct prefix sums, no zero
/// proper prefix, and a zero total.
inline bool verify_window(const zseq& s, const ordering_result& res) {
    std::map<i64, i64> seen;
    std::set<std::pair<i64, i64>> occurrences;
    for (auto& [v, occ] : res.order) {
        if (!occurrences.insert({v, occ}).second) return false;
        if (occ < 0 || occ >= s.multiplicity(v)) return false;
        seen[v] += 1;
    }
    for (auto& [v, c] : s.counts())
        if (seen[v] != c) return false;
    if (i64(res.order.size()) != s.length()) return false;

    std::set<i64> sums;
    i64 sum = 0;
    for (std::size_t k = 0; k < res.order.size(); ++k) {
        sum += res.order[k].first;
        if (sum < res.window_lo || sum > res.window_hi) return false;
        if (!sums.insert(sum).second) return false;
        if (sum == 0 && k + 1 != res.order.size()) return false;
    }
    return sum == 0;
}

/// Exhaustive fallback: depth-first search for any ordering whose prefix sums
/// stay inside [lo, hi], with memoization on failed (counts, sum) states.
/// Backs the constructions above as an independent cross-check.
inline std::optional<std::vector<std::pair<i64, i64>>> find_window_order(const zseq& s, i64 lo,
                                                                         i64 hi) {
    std::vector<std::pair<i64, i64>> vals(s.counts().begin(), s.counts().end());
    const std::size_t k = vals.size();
    std::vector<i64> remaining(k);
    i64 total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        remaining[i] = vals[i].second;
        total += vals[i].second;
    }
    std::vector<std::pair<i64, i64>> order;
    std::set<std::vector<i64>> dead; // (remaining..., sum) states with no completion

    auto dfs = [&](auto&& self, i64 sum, i64 left) -> bool {
        if (left == 0) return sum == 0;
        std::vector<i64> key = remaining;
        key.push_back(sum);
        if (dead.count(key)) return false;
        for (std::size_t i = 0; i < k; ++i) {
            if (remaining[i] == 0) continue;
            i64 next = sum + vals[i].first;
            if (next < lo || next > hi) continue;
            if (next == 0 && left > 1) continue;
            remaining[i] -= 1;
            order.emplace_back(vals[i].first, vals[i].second - remaining[i] - 1);
            if (self(self, next, left - 1)) return true;
            order.pop_back();
            remaining[i] += 1;
        }
        dead.insert(std::move(key));
        return false;
    };
    if (!dfs(dfs, 0, total)) return std::nullopt;
    return order;
}

} // namespace davint
