#pragma once

#include <cctype>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "davint/arith.hpp"
#include "davint/errors.hpp"
#include "davint/rho.hpp"

namespace davint {

/// Unordered multiset of nonzero integers, stored as value -> multiplicity.
/// Canonical order is values ascending; serialization follows it.
class zseq {
public:
    zseq() = default;

    void add(i64 value, i64 mult = 1) {
        if (value == 0) throw zero_value_error("sequence value 0 is not allowed");
        if (mult < 1) throw zero_multiplicity_error("multiplicity must be >= 1");
        counts_[value] += mult;
    }

    const std::map<i64, i64>& counts() const { return counts_; }
    bool empty() const { return counts_.empty(); }
    bool contains(i64 v) const { return counts_.count(v) != 0; }

    i64 multiplicity(i64 v) const {
        auto it = counts_.find(v);
        return it == counts_.end() ? 0 : it->second;
    }

    i64 length() const {
        i64 n = 0;
        for (auto& [v, c] : counts_) n += c;
        return n;
    }

    i64 sum() const {
        i64 s = 0;
        for (auto& [v, c] : counts_) s += v * c;
        return s;
    }

    i64 min_value() const {
        if (empty()) throw precondition_error("empty sequence has no min");
        return counts_.begin()->first;
    }

    i64 max_value() const {
        if (empty()) throw precondition_error("empty sequence has no max");
        return counts_.rbegin()->first;
    }

    zseq negated() const {
        zseq out;
        for (auto& [v, c] : counts_) out.counts_[-v] = c;
        return out;
    }

    std::string serialize() const {
        std::string out;
        for (auto& [v, c] : counts_) {
            if (!out.empty()) out += ',';
            out += std::to_string(v);
            if (c > 1) {
                out += '^';
                out += std::to_string(c);
            }
        }
        return out;
    }

    friend bool operator==(const zseq&, const zseq&) = default;
    friend bool operator<(const zseq& a, const zseq& b) { return a.counts_ < b.counts_; }

private:
    std::map<i64, i64> counts_;
};

/// Grammar: seq := term (',' term)*;  term := int ('^' uint)?.
/// The exponent binds to the signed value: "-6^5" is five copies of -6.
inline zseq parse_seq(const std::string& text) {
    zseq out;
    std::size_t pos = 0;
    const auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    const auto read_int = [&](bool allow_sign) -> i64 {
        skip_ws();
        std::size_t start = pos;
        if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits_from = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits_from) throw parse_error("expected an integer at position " + std::to_string(start));
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(text.c_str() + start, &end, 10);
        if (errno == ERANGE) throw parse_error("integer out of range at position " + std::to_string(start));
        return v;
    };
    if (text.empty()) throw parse_error("empty sequence text");
    while (true) {
        i64 value = read_int(true);
        i64 mult = 1;
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            mult = read_int(false);
            if (mult == 0) throw zero_multiplicity_error("multiplicity 0 in term");
        }
        if (value == 0) throw zero_value_error("value 0 in term");
        out.add(value, mult);
        skip_ws();
        if (pos == text.size()) break;
        if (text[pos] != ',') throw parse_error("unexpected character '" + std::string(1, text[pos]) +
                                                "' at position " + std::to_string(pos));
        ++pos;
    }
    return out;
}

inline bool is_zero_sum(const zseq& s) { return s.sum() == 0; }

inline constexpr i64 default_minimality_budget = 40;

namespace detail {

// Searches for a nonempty zero-sum sub-multiset of size <= floor(n/2).
// The complement of a zero-sum sub-multiset is zero-sum, so this restriction
// loses nothing.
struct minimality_search {
    std::vector<std::pair<i64, i64>> vals; // (value, count), |value| descending
    std::vector<i64> pos_mass, neg_mass;   // suffix sums of positive / negative content
    std::vector<i64> max_pos, max_neg_abs; // suffix maxima
    i64 half = 0;

    explicit minimality_search(const zseq& s) {
        vals.assign(s.counts().begin(), s.counts().end());
        std::sort(vals.begin(), vals.end(), [](auto& a, auto& b) {
            i64 aa = std::abs(a.first), bb = std::abs(b.first);
            return aa != bb ? aa > bb : a.first > b.first;
        });
        const std::size_t k = vals.size();
        pos_mass.assign(k + 1, 0);
        neg_mass.assign(k + 1, 0);
        max_pos.assign(k + 1, 0);
        max_neg_abs.assign(k + 1, 0);
        for (std::size_t i = k; i-- > 0;) {
            auto [v, c] = vals[i];
            pos_mass[i] = pos_mass[i + 1] + (v > 0 ? v * c : 0);
            neg_mass[i] = neg_mass[i + 1] + (v < 0 ? v * c : 0);
            max_pos[i] = std::max(max_pos[i + 1], v > 0 ? v : 0);
            max_neg_abs[i] = std::max(max_neg_abs[i + 1], v < 0 ? -v : 0);
        }
        half = s.length() / 2;
    }

    bool has_proper_zero_subset(std::size_t i, i64 taken, i64 sum) const {
        if (sum == 0 && taken >= 1) return true;
        if (i == vals.size()) return false;
        const i64 cap = half - taken;
        if (cap <= 0) return false;
        if (sum > 0 && (sum + neg_mass[i] > 0 || sum > cap * max_neg_abs[i])) return false;
        if (sum < 0 && (sum + pos_mass[i] < 0 || -sum > cap * max_pos[i])) return false;
        const auto [v, c] = vals[i];
        for (i64 take = std::min(c, cap); take >= 0; --take) {
            if (has_proper_zero_subset(i + 1, taken + take, sum + take * v)) return true;
        }
        return false;
    }
};

} // namespace detail

/// True iff s is a zero-sum sequence with no proper nonempty zero-sum
/// sub-multiset.  Returns false for non-zero-sum input.  Decided by DFS over
/// count vectors with partial-sum pruning, restricted to sub-multisets of
/// size <= length/2.
inline bool is_minimal(const zseq& s, i64 budget = default_minimality_budget) {
    if (!is_zero_sum(s)) return false;
    const i64 n = s.length();
    if (n == 0) return false;
    if (n > budget) throw budget_error("minimality check: length " + std::to_string(n) +
                                       " exceeds budget " + std::to_string(budget));
    detail::minimality_search search(s);
    return !search.has_proper_zero_subset(0, 0, 0);
}

namespace detail {

// gcd of all elements of s except one occurrence of `excluded`
inline i64 gcd_excluding_one(const zseq& s, i64 excluded) {
    if (!is_zero_sum(s)) throw not_zero_sum_error("sequence does not sum to zero");
    if (!s.contains(excluded)) throw not_present_error("value " + std::to_string(excluded) +
                                                       " does not occur in the sequence");
    i64 d = 0;
    for (auto& [v, c] : s.counts()) {
        i64 eff = v == excluded ? c - 1 : c;
        if (eff > 0) d = gcd(d, std::abs(v));
    }
    return d == 0 ? 1 : d;
}

} // namespace detail

/// Divides every element by the gcd of all elements but one occurrence of
/// `excluded_value`.  That gcd also divides the excluded element, and the
/// quotient sequence is again a minimal zero-sum sequence.
inline zseq reduce_by_gcd(const zseq& s, i64 excluded_value) {
    const i64 d = detail::gcd_excluding_one(s, excluded_value);
    if (d == 1) return s;
    zseq out;
    for (auto& [v, c] : s.counts()) {
        if (v % d != 0) throw error("reduce_by_gcd: divisor does not divide every element");
        out.add(v / d, c);
    }
    return out;
}

/// Closed criterion for the two-value sequence pos^alpha * (-neg)^beta to be
/// a minimal zero-sum sequence: alpha = neg/g and beta = pos/g for
/// g = gcd(neg, pos).
inline bool two_value_check(i64 neg_extent, i64 pos_extent, i64 alpha, i64 beta) {
    if (neg_extent < 1 || pos_extent < 1 || alpha < 1 || beta < 1)
        throw precondition_error("two_value_check arguments must be >= 1");
    const i64 g = gcd(neg_extent, pos_extent);
    return alpha == neg_extent / g && beta == pos_extent / g;
}

/// The extremal minimal zero-sum sequence attaining length
/// neg_extent + pos_extent - rho: with witness (t, t1, t2), the multiset of
/// (pos - t1) copies of -(neg - t2) and (neg - t2) copies of (pos - t1).
inline zseq extremal_construct(const interval& iv) {
    const rho_witness w = rho(iv);
    const i64 pos_value = iv.pos_extent - w.pos_shift;
    const i64 neg_value = iv.neg_extent - w.neg_shift;
    zseq out;
    out.add(pos_value, neg_value);
    out.add(-neg_value, pos_value);
    return out;
}

/// Upper bound (max S - min S) / d on the length of a minimal zero-sum
/// sequence, with d the gcd of all elements but one occurrence of
/// `excluded_value`.
inline i64 seq_length_bound(const zseq& s, i64 excluded_value) {
    const i64 d = detail::gcd_excluding_one(s, excluded_value);
    const i64 span = s.max_value() - s.min_value();
    if (span % d != 0) throw error("seq_length_bound: span not divisible by common divisor");
    return span / d;
}

} // namespace davint
