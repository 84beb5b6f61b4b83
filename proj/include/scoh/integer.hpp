#pragma once

// Exact integer helpers. All group orders, matrix entries and residues are
// arbitrary precision; fixed-width arithmetic is only used for primes and
// for factoring numbers that are known to fit in 64 bits.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace scoh {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer ipow(Integer base, std::uint64_t exp) {
    Integer result = 1;
    while (exp != 0) {
        if (exp & 1U) result *= base;
        exp >>= 1U;
        if (exp != 0) base *= base;
    }
    return result;
}

/// Representative of a in [0, m); m > 0.
inline Integer floor_mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Integer floor_div(const Integer& a, const Integer& m) {
    Integer q = a / m;
    if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
    return q;
}

struct ExtendedGcd {
    Integer g;  // >= 0
    Integer x;
    Integer y;  // a*x + b*y == g
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

/// Inverse of a modulo m, if gcd(a, m) == 1.
inline std::optional<Integer> mod_inverse(const Integer& a, const Integer& m) {
    auto [g, x, y] = extended_gcd(floor_mod(a, m), m);
    if (g != 1) return std::nullopt;
    return floor_mod(x, m);
}

inline std::optional<std::uint64_t> to_u64(const Integer& v) {
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    return v.convert_to<std::uint64_t>();
}

/// Largest v with p^v | n, for n != 0.
inline std::uint64_t valuation_of(Integer n, std::uint64_t p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    if (n < 0) n = -n;
    std::uint64_t v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e != 0) {
        if (e & 1U) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1U;
    }
    return r;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

}  // namespace detail

/// Deterministic Miller-Rabin for the full 64-bit range.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

// Brent's variant of Pollard rho; n is odd and composite.
inline std::uint64_t pollard_rho(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        std::uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// Distinct prime divisors of n (n >= 1), ascending.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) {
        std::vector<std::uint64_t> rest;
        detail::factor_into(n, rest);
        out.insert(out.end(), rest.begin(), rest.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace scoh
