#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "davint/errors.hpp"

namespace davint {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

inline std::string to_string(i128 v) {
    if (v < 0) return "-" + to_string(u128(-v));
    return to_string(u128(v));
}

/// gcd on non-negative 64-bit integers; gcd(0,0) = 0, gcd(x,0) = x.
inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

/// lcm with explicit overflow detection against the 128-bit budget.
inline u128 lcm_checked(u128 a, u128 b) {
    if (a == 0 || b == 0) return 0;
    u128 x = a, y = b;
    while (y != 0) {
        u128 r = x % y;
        x = y;
        y = r;
    }
    u128 q = a / x;
    if (q > ~u128{0} / b) throw overflow_error("lcm exceeds 128-bit budget");
    return q * b;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

struct factorization {
    i64 n = 1;
    std::vector<std::pair<i64, int>> factors; // (prime, exponent), primes ascending
};

namespace detail {

inline constexpr i64 spf_sieve_limit = 10'000'000;

// Smallest-prime-factor sieve, built once on first use and immutable afterwards.
inline const std::vector<std::uint32_t>& spf_sieve() {
    static const std::vector<std::uint32_t> sieve = [] {
        std::vector<std::uint32_t> spf(spf_sieve_limit + 1, 0);
        for (i64 i = 2; i <= spf_sieve_limit; ++i) {
            if (spf[i] == 0) {
                for (i64 j = i; j <= spf_sieve_limit; j += i) {
                    if (spf[j] == 0) spf[j] = std::uint32_t(i);
                }
            }
        }
        return spf;
    }();
    return sieve;
}

} // namespace detail

/// Canonical factorization of n >= 1; n = 1 yields an empty factor list.
/// Sieve-backed up to 10^7, trial division above.
inline factorization factorize(i64 n) {
    if (n < 1) throw precondition_error("factorize requires n >= 1");
    factorization out;
    out.n = n;
    if (n <= detail::spf_sieve_limit) {
        const auto& spf = detail::spf_sieve();
        while (n > 1) {
            i64 p = spf[n];
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.factors.emplace_back(p, e);
        }
        return out;
    }
    for (i64 p : {i64{2}, i64{3}}) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.factors.emplace_back(p, e);
        }
    }
    for (i64 p = 5; p <= n / p; p += 6) {
        for (i64 q : {p, p + 2}) {
            if (n % q == 0) {
                int e = 0;
                while (n % q == 0) {
                    n /= q;
                    ++e;
                }
                out.factors.emplace_back(q, e);
            }
        }
    }
    if (n > 1) out.factors.emplace_back(n, 1);
    return out;
}

/// Number of distinct prime divisors; omega(1) = 0.
inline int omega(i64 n) { return int(factorize(n).factors.size()); }

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

/// Distinct prime divisors of n, ascending.
inline std::vector<i64> prime_divisors(i64 n) {
    std::vector<i64> ps;
    for (auto& [p, e] : factorize(n).factors) ps.push_back(p);
    return ps;
}

// ---------------------------------------------------------------------------
// Chinese remainder theorem
// ---------------------------------------------------------------------------

struct congruence {
    i64 residue = 0; // 0 <= residue < modulus
    i64 modulus = 1; // >= 2

    friend bool operator==(const congruence&, const congruence&) = default;
    friend auto operator<=>(const congruence&, const congruence&) = default;
};

struct crt_solution {
    u128 value = 0;   // least non-negative solution
    u128 modulus = 1; // lcm of the input moduli
};

namespace detail {

// modular inverse of a mod m for gcd(a, m) = 1
inline i64 mod_inverse(i64 a, i64 m) {
    i64 t = 0, new_t = 1;
    i64 r = m, new_r = a % m;
    while (new_r != 0) {
        i64 q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw conflict_error("modular inverse does not exist");
    return t < 0 ? t + m : t;
}

} // namespace detail

/// Least non-negative solution of a system of congruences with pairwise
/// coprime moduli (after merging duplicate congruences), plus the combined
/// modulus.  Moduli sharing a factor raise conflict_error; products beyond
/// the 128-bit budget raise overflow_error.
inline crt_solution crt_solve(std::vector<congruence> sys) {
    if (sys.empty()) throw precondition_error("crt_solve requires at least one congruence");
    for (const auto& c : sys) {
        if (c.modulus < 2) throw precondition_error("crt modulus must be >= 2");
        if (c.residue < 0 || c.residue >= c.modulus)
            throw precondition_error("crt residue must satisfy 0 <= r < m");
    }
    std::sort(sys.begin(), sys.end());
    sys.erase(std::unique(sys.begin(), sys.end()), sys.end());
    for (std::size_t i = 0; i < sys.size(); ++i) {
        for (std::size_t j = i + 1; j < sys.size(); ++j) {
            i64 g = gcd(sys[i].modulus, sys[j].modulus);
            if (g > 1) {
                if (sys[i].residue % g != sys[j].residue % g)
                    throw conflict_error("incompatible congruences share the factor " + std::to_string(g));
                throw conflict_error("moduli are not pairwise coprime (shared factor " + std::to_string(g) + ")");
            }
        }
    }
    u128 x = u128(sys[0].residue);
    u128 L = u128(sys[0].modulus);
    for (std::size_t i = 1; i < sys.size(); ++i) {
        i64 m = sys[i].modulus;
        if (L > ~u128{0} / u128(m)) throw overflow_error("combined crt modulus exceeds 128-bit budget");
        i64 l_mod_m = i64(L % u128(m));
        i64 delta = (sys[i].residue - i64(x % u128(m))) % m;
        if (delta < 0) delta += m;
        i64 k = i64((i128(delta) * detail::mod_inverse(l_mod_m, m)) % m);
        x += L * u128(k);
        L *= u128(m);
    }
    return {x, L};
}

} // namespace davint
