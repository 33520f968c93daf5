#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "davint/arith.hpp"
#include "davint/errors.hpp"
#include "davint/rho.hpp"

namespace davint {

inline constexpr double robin_constant = 1.3841;

/// Relative guard band for floating-point bound assertions.
inline bool leq_with_guard(double a, double b, double rel = 1e-9) {
    return a <= b + rel * std::max(std::abs(a), std::abs(b));
}

/// Maximal gap between consecutive integers coprime to n, scanned over one
/// full period (residues 1..n+1; both ends are coprime to n, so the scan is
/// complete).  g(1) = 1.
inline i64 jacobsthal_gap(i64 n) {
    if (n < 1) throw precondition_error("jacobsthal requires n >= 1");
    if (n == 1) return 1;
    const auto primes = prime_divisors(n);
    i64 g = 0, prev = 1; // 1 is coprime to every n
    for (i64 i = 2; i <= n + 1; ++i) {
        bool shares = false;
        for (i64 p : primes) {
            if (i % p == 0) {
                shares = true;
                break;
            }
        }
        if (!shares) {
            g = std::max(g, i - prev);
            prev = i;
        }
    }
    return g;
}

/// jacobsthal_gap for every n in 1..n_max, computed with a reused mark buffer.
inline std::vector<i64> jacobsthal_gaps_up_to(i64 n_max) {
    if (n_max < 1) throw precondition_error("jacobsthal_gaps_up_to requires n_max >= 1");
    std::vector<i64> g(std::size_t(n_max) + 1, 0);
    g[1] = 1;
    std::vector<std::uint32_t> stamp(std::size_t(n_max) + 2, 0);
    for (i64 n = 2; n <= n_max; ++n) {
        for (i64 p : prime_divisors(n))
            for (i64 j = p; j <= n + 1; j += p) stamp[j] = std::uint32_t(n);
        i64 best = 0, prev = 1;
        for (i64 i = 2; i <= n + 1; ++i) {
            if (stamp[i] == std::uint32_t(n)) continue;
            best = std::max(best, i - prev);
            prev = i;
        }
        g[n] = best;
    }
    return g;
}

struct jacobsthal_report {
    i64 n = 1;
    i64 g = 1;
    int omega = 0;
    i64 kanold_bound = 1;                    // 2^omega
    double stevens_bound = 0;                // 2 * omega^(2 + 2e ln omega), +inf for omega = 0
    std::optional<double> robin_omega_bound; // 1.3841 ln n / ln ln n, defined for n >= 3
};

inline jacobsthal_report jacobsthal(i64 n) {
    jacobsthal_report rep;
    rep.n = n;
    rep.g = jacobsthal_gap(n);
    rep.omega = omega(n);
    if (rep.omega >= 63) throw overflow_error("kanold bound exceeds 64-bit range");
    rep.kanold_bound = i64{1} << rep.omega;
    if (rep.omega == 0) {
        rep.stevens_bound = std::numeric_limits<double>::infinity();
    } else {
        const double w = double(rep.omega);
        rep.stevens_bound = 2.0 * std::pow(w, 2.0 + 2.0 * std::exp(1.0) * std::log(w));
    }
    if (n >= 3)
        rep.robin_omega_bound = robin_constant * std::log(double(n)) / std::log(std::log(double(n)));
    return rep;
}

/// Sharp effective bound min(g(neg), g(pos)) - 1 on rho, from sliding a
/// window of consecutive shifted extents.
inline i64 rho_upper_bound(const interval& iv) {
    return std::min(jacobsthal_gap(iv.neg_extent), jacobsthal_gap(iv.pos_extent)) - 1;
}

/// rho_upper_bound together with the two published closed-form bounds it
/// refines: 15 for min extent <= 2309, and 2^(c0 ln x / ln ln x) - 1 for
/// min extent >= 16.
struct rho_bound_report {
    i64 sharp = 0;
    std::optional<i64> small_case_bound;  // 15, when min extent <= 2309
    std::optional<double> power_bound;    // when min extent >= 16
};

inline rho_bound_report rho_bound_details(const interval& iv) {
    rho_bound_report rep;
    rep.sharp = rho_upper_bound(iv);
    const i64 x = iv.min_side();
    if (x <= 2309) rep.small_case_bound = 15;
    if (x >= 16) {
        const double lx = std::log(double(x));
        rep.power_bound = std::pow(2.0, robin_constant * lx / std::log(lx)) - 1.0;
    }
    return rep;
}

/// Exact-arithmetic test of rho <= sqrt(min extent + 5) - 3, evaluated by
/// squaring: (rho + 3)^2 <= min extent + 5.
inline bool bounds_gate(const interval& iv) {
    const i64 r = rho(iv).total;
    return (r + 3) * (r + 3) <= iv.min_side() + 5;
}

/// Verifies the two crossover facts behind the gate:
///  (a) 15 <= sqrt(x+5) - 3 exactly for every integer 319 <= x <= 2400,
///      i.e. 18^2 <= x + 5, with x = 318 failing;
///  (b) 2^(c0 ln x / ln ln x) <= sqrt(x+5) - 2 at x = 1150 and on a log grid
///      up to 10^9, the margin growing along the grid.
inline bool crossover_check() {
    for (i64 x = 319; x <= 2400; ++x)
        if (!(18 * 18 <= x + 5)) return false;
    if (18 * 18 <= 318 + 5) return false;

    const auto power_term = [](double x) {
        return std::pow(2.0, robin_constant * std::log(x) / std::log(std::log(x)));
    };
    const auto margin = [&](double x) { return std::sqrt(x + 5.0) - 2.0 - power_term(x); };
    if (!leq_with_guard(power_term(1150.0), std::sqrt(1150.0 + 5.0) - 2.0)) return false;

    double prev_margin = margin(1150.0);
    const double ratio = std::pow(10.0, 1.0 / 16.0);
    for (double x = 1150.0 * ratio; x <= 1.0e9; x *= ratio) {
        if (!leq_with_guard(power_term(x), std::sqrt(x + 5.0) - 2.0)) return false;
        const double cur = margin(x);
        if (!leq_with_guard(prev_margin, cur)) return false;
        prev_margin = cur;
    }
    return true;
}

} // namespace davint
