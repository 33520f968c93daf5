#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "davint/errors.hpp"
#include "davint/rho.hpp"
#include "davint/zseq.hpp"

namespace davint {

inline constexpr i64 default_desk_limit = 16;

/// Closed formula: neg + pos - rho(neg, pos).
inline i64 davenport_formula(const interval& iv) {
    return iv.neg_extent + iv.pos_extent - rho(iv).total;
}

namespace detail {

// Count-vector DFS over the nonzero values of the interval, largest absolute
// value first.  Pruning uses only sum reachability (remaining length times
// extreme remaining values) plus the final minimality filter, so the search
// is a direct implementation of the definition and stays independent of the
// closed formula.
struct length_search {
    std::vector<i64> values;   // |v| descending, positive before negative at ties
    std::vector<i64> max_suffix, min_suffix;
    std::vector<i64> chosen;
    i64 minimality_budget = default_minimality_budget;

    explicit length_search(const interval& iv) {
        for (i64 v = 1; v <= iv.pos_extent; ++v) values.push_back(v);
        for (i64 v = -1; v >= -iv.neg_extent; --v) values.push_back(v);
        std::sort(values.begin(), values.end(), [](i64 a, i64 b) {
            i64 aa = std::abs(a), bb = std::abs(b);
            return aa != bb ? aa > bb : a > b;
        });
        const std::size_t k = values.size();
        max_suffix.assign(k + 1, 0);
        min_suffix.assign(k + 1, 0);
        for (std::size_t i = k; i-- > 0;) {
            max_suffix[i] = std::max(max_suffix[i + 1], values[i]);
            min_suffix[i] = std::min(min_suffix[i + 1], values[i]);
        }
        chosen.assign(k, 0);
    }

    zseq current() const {
        zseq s;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (chosen[i] > 0) s.add(values[i], chosen[i]);
        return s;
    }

    // visit(zseq) -> bool; return true to stop the search
    template <class Visit>
    bool each_zero_sum_of_length(i64 target, Visit&& visit) {
        return dfs(0, target, 0, visit);
    }

private:
    template <class Visit>
    bool dfs(std::size_t i, i64 len_left, i64 sum, Visit&& visit) {
        if (len_left == 0) {
            if (sum != 0) return false;
            return visit(current());
        }
        if (i == values.size()) return false;
        if (sum + len_left * max_suffix[i] < 0) return false;
        if (sum + len_left * min_suffix[i] > 0) return false;
        for (i64 take = len_left; take >= 0; --take) {
            chosen[i] = take;
            if (dfs(i + 1, len_left - take, sum + take * values[i], visit)) {
                chosen[i] = 0;
                return true;
            }
        }
        chosen[i] = 0;
        return false;
    }
};

inline void check_desk_limit(const interval& iv, i64 desk_limit, const char* op) {
    if (iv.neg_extent + iv.pos_extent > desk_limit)
        throw budget_error(std::string(op) + ": extents " + std::to_string(iv.neg_extent) + "+" +
                           std::to_string(iv.pos_extent) + " exceed the enumeration budget " +
                           std::to_string(desk_limit));
}

inline std::mutex& davenport_cache_mutex() {
    static std::mutex m;
    return m;
}

inline std::map<std::pair<i64, i64>, i64>& davenport_oracle_cache() {
    static std::map<std::pair<i64, i64>, i64> cache;
    return cache;
}

} // namespace detail

/// Exact maximal length of a minimal zero-sum sequence over the interval,
/// found by scanning candidate lengths downward from neg + pos and deciding
/// existence by exhaustive search.  Deliberately ignores the closed formula.
inline i64 davenport_oracle(const interval& iv, i64 desk_limit = default_desk_limit) {
    detail::check_desk_limit(iv, desk_limit, "davenport_oracle");
    {
        std::scoped_lock lk(detail::davenport_cache_mutex());
        auto& cache = detail::davenport_oracle_cache();
        auto it = cache.find({iv.neg_extent, iv.pos_extent});
        if (it != cache.end()) return it->second;
    }
    detail::length_search search(iv);
    i64 result = 0;
    for (i64 len = iv.neg_extent + iv.pos_extent; len >= 2; --len) {
        bool found = search.each_zero_sum_of_length(
            len, [&](const zseq& s) { return is_minimal(s, std::max(default_minimality_budget, len)); });
        if (found) {
            result = len;
            break;
        }
    }
    if (result == 0) throw error("davenport_oracle found no minimal zero-sum sequence");
    std::scoped_lock lk(detail::davenport_cache_mutex());
    detail::davenport_oracle_cache().emplace(std::pair{iv.neg_extent, iv.pos_extent}, result);
    return result;
}

/// All minimal zero-sum sequences of maximal length, in canonical order
/// (lexicographic on the ascending (value, multiplicity) pairs).
inline std::vector<zseq> enumerate_extremal(const interval& iv, i64 desk_limit = default_desk_limit) {
    detail::check_desk_limit(iv, desk_limit, "enumerate_extremal");
    const i64 len = davenport_oracle(iv, desk_limit);
    std::vector<zseq> out;
    detail::length_search search(iv);
    search.each_zero_sum_of_length(len, [&](const zseq& s) {
        if (is_minimal(s, std::max(default_minimality_budget, len))) out.push_back(s);
        return false; // keep going, collect everything
    });
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// pos^a * (-neg)^b as a multiset, or nullopt when a value or count degenerates
inline std::optional<zseq> two_value_form(i64 pos_value, i64 pos_count, i64 neg_value, i64 neg_count) {
    if (pos_value == 0 || neg_value == 0 || pos_count < 1 || neg_count < 1) return std::nullopt;
    zseq s;
    s.add(pos_value, pos_count);
    s.add(-neg_value, neg_count);
    return s;
}

} // namespace detail

/// Inverse statement at the top length: if the oracle reaches neg + pos, the
/// extents are coprime and the unique extremal sequence is
/// pos^neg * (-neg)^pos.
inline bool check_inverse_rho0(const interval& iv, i64 desk_limit = default_desk_limit) {
    if (davenport_oracle(iv, desk_limit) != iv.neg_extent + iv.pos_extent) return true;
    if (gcd(iv.neg_extent, iv.pos_extent) != 1) return false;
    auto extremal = enumerate_extremal(iv, desk_limit);
    auto expected = detail::two_value_form(iv.pos_extent, iv.neg_extent, iv.neg_extent, iv.pos_extent);
    return expected && extremal.size() == 1 && extremal[0] == *expected;
}

/// Inverse statement one below the top: every extremal sequence is
/// pos^(neg-1) * (-(neg-1))^pos with gcd(neg-1, pos) = 1, or
/// (pos-1)^neg * (-neg)^(pos-1) with gcd(neg, pos-1) = 1.
inline bool check_inverse_rho1(const interval& iv, i64 desk_limit = default_desk_limit) {
    const i64 m = iv.neg_extent, M = iv.pos_extent;
    if (davenport_oracle(iv, desk_limit) != m + M - 1) return true;
    std::optional<zseq> form_a, form_b;
    if (m >= 2 && gcd(m - 1, M) == 1) form_a = detail::two_value_form(M, m - 1, m - 1, M);
    if (M >= 2 && gcd(m, M - 1) == 1) form_b = detail::two_value_form(M - 1, m, m, M - 1);
    for (const zseq& s : enumerate_extremal(iv, desk_limit)) {
        const bool ok = (form_a && s == *form_a) || (form_b && s == *form_b);
        if (!ok) return false;
    }
    return true;
}

/// Length bounds for minimal zero-sum sequences drawing only on the top two
/// positive values and the bottom value: enumerates every
/// pos^a * (pos-1)^b * (-neg)^c that is a minimal zero-sum sequence of length
/// at most neg + pos and checks length <= neg+pos-2 whenever a > 0, and
/// length <= neg+pos-3 whenever gcd(neg, pos-1) != 1.
inline bool check_top_value_structure(const interval& iv, i64 desk_limit = default_desk_limit) {
    const i64 m = iv.neg_extent, M = iv.pos_extent;
    if (gcd(m, M) == 1)
        throw precondition_error("check_top_value_structure requires non-coprime extents");
    detail::check_desk_limit(iv, desk_limit, "check_top_value_structure");
    const i64 total = m + M;
    const bool tight = gcd(m, M - 1) != 1;
    for (i64 a = 0; a <= total; ++a) {
        for (i64 b = 0; a + b <= total; ++b) {
            const i64 mass = a * M + b * (M - 1);
            if (mass % m != 0) continue;
            const i64 c = mass / m;
            const i64 len = a + b + c;
            if (len < 2 || len > total) continue;
            zseq s;
            if (a > 0) s.add(M, a);
            if (b > 0) s.add(M - 1, b);
            if (c > 0) s.add(-m, c);
            if (!is_minimal(s, std::max(default_minimality_budget, len))) continue;
            if (a > 0 && len > total - 2) return false;
            if (tight && len > total - 3) return false;
        }
    }
    return true;
}

/// Summary record tying the formula value to the optional oracle results.
struct davenport_report {
    interval iv;
    i64 formula_value = 0;
    std::optional<i64> oracle_value;
    std::optional<i64> extremal_count;
};

inline davenport_report make_davenport_report(const interval& iv, bool with_oracle,
                                              bool with_extremal,
                                              i64 desk_limit = default_desk_limit) {
    davenport_report rep;
    rep.iv = iv;
    rep.formula_value = davenport_formula(iv);
    if (with_oracle || with_extremal) rep.oracle_value = davenport_oracle(iv, desk_limit);
    if (with_extremal) rep.extremal_count = i64(enumerate_extremal(iv, desk_limit).size());
    return rep;
}

} // namespace davint
