#pragma once

/**
 * @file arith.hpp
 * @brief Exact integer and prime-field arithmetic.
 *
 * Everything is int64_t with __int128 intermediates. Quantities that can grow
 * (p^(k-1), a_p^2, 4 p^(k-1)) go through the checked helpers, which throw
 * errc::overflow instead of wrapping. Primality is deterministic trial
 * division; the moduli handled here are small.
 */

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "galcert/error.hpp"

namespace galcert {

using i64 = std::int64_t;
using i128 = __int128;

// Largest modulus accepted by PrimeModulus. Keeps trial division below ~46k
// steps and every product of two residues well inside 64 bits.
inline constexpr i64 max_modulus = i64{1} << 31;

// =============================================================================
// Checked integer helpers
// =============================================================================

constexpr i64 checked_narrow(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw error(errc::overflow, "integer overflow: value exceeds 64 bits");
    return static_cast<i64>(v);
}

constexpr i64 checked_add(i64 a, i64 b) { return checked_narrow(i128{a} + b); }
constexpr i64 checked_sub(i64 a, i64 b) { return checked_narrow(i128{a} - b); }
constexpr i64 checked_mul(i64 a, i64 b) { return checked_narrow(i128{a} * b); }

/// base^exp over the integers, exp >= 0. Throws on overflow.
constexpr i64 checked_pow(i64 base, i64 exp) {
    if (exp < 0) throw error(errc::invalid_argument, "negative exponent");
    i64 result = 1;
    for (i64 i = 0; i < exp; ++i) result = checked_mul(result, base);
    return result;
}

/// Canonical representative of a in [0, m), m > 0.
constexpr i64 reduce_mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

constexpr i64 gcd(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// =============================================================================
// Primality, square roots, factorization
// =============================================================================

constexpr bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (i64 d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

/// floor(sqrt(n)); r*r <= n < (r+1)*(r+1).
constexpr i64 isqrt(i64 n) {
    if (n < 0) throw error(errc::invalid_argument, "isqrt of negative integer");
    if (n < 2) return n;
    // Newton iteration from above; converges monotonically to the floor.
    i64 x = n;
    i64 y = x / 2 + x % 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

struct PrimePower {
    i64 prime;
    int exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    i64 input = 1;
    std::vector<PrimePower> factors; // strictly increasing primes

    /// Exponent of `p` in the input (0 when absent).
    int exponent_of(i64 p) const {
        for (const auto& f : factors)
            if (f.prime == p) return f.exponent;
        return 0;
    }

    std::vector<i64> primes() const {
        std::vector<i64> out;
        out.reserve(factors.size());
        for (const auto& f : factors) out.push_back(f.prime);
        return out;
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Complete factorization by trial division up to isqrt(n).
inline Factorization trial_factor(i64 n) {
    if (n < 2) throw error(errc::invalid_argument, "trial_factor requires n >= 2, got " + std::to_string(n));
    Factorization out;
    out.input = n;
    i64 rest = n;
    for (i64 d = 2; d <= rest / d; d += (d == 2 ? 1 : 2)) {
        int e = 0;
        while (rest % d == 0) {
            rest /= d;
            ++e;
        }
        if (e > 0) out.factors.push_back({d, e});
    }
    if (rest > 1) out.factors.push_back({rest, 1});
    return out;
}

/// p-adic valuation of n != 0.
constexpr int valuation(i64 n, i64 p) {
    if (n == 0) throw error(errc::invalid_argument, "valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// =============================================================================
// Prime moduli and residues
// =============================================================================

/// An odd prime, validated once at construction.
class PrimeModulus {
public:
    explicit constexpr PrimeModulus(i64 ell) : value_(ell) {
        if (ell <= 2 || ell > max_modulus || !is_prime(ell))
            throw error(errc::not_prime, "modulus must be an odd prime below 2^31, got " + std::to_string(ell));
    }

    constexpr i64 value() const { return value_; }
    constexpr i64 reduce(i64 a) const { return reduce_mod(a, value_); }
    constexpr i64 mul(i64 a, i64 b) const {
        return static_cast<i64>(reduce_mod128(i128{a} * b));
    }

    friend constexpr bool operator==(PrimeModulus, PrimeModulus) = default;

private:
    constexpr i128 reduce_mod128(i128 a) const {
        i128 r = a % value_;
        return r < 0 ? r + value_ : r;
    }

    i64 value_;
};

/// Element of F_ell, stored as its canonical representative in [0, ell).
class Residue {
public:
    constexpr Residue(i64 a, PrimeModulus m) : value_(m.reduce(a)), modulus_(m) {}

    constexpr i64 value() const { return value_; }
    constexpr PrimeModulus modulus() const { return modulus_; }

    constexpr Residue operator+(Residue rhs) const { return {value_ + rhs.value_, modulus_}; }
    constexpr Residue operator-(Residue rhs) const { return {value_ - rhs.value_, modulus_}; }
    constexpr Residue operator*(Residue rhs) const { return {modulus_.mul(value_, rhs.value_), modulus_}; }
    constexpr Residue operator-() const { return {-value_, modulus_}; }

    friend constexpr bool operator==(Residue, Residue) = default;

private:
    i64 value_;
    PrimeModulus modulus_;
};

/// base^exp mod ell by square-and-multiply. 0^0 is 1 by convention.
constexpr Residue mod_pow(i64 base, i64 exp, PrimeModulus ell) {
    if (exp < 0) throw error(errc::invalid_argument, "mod_pow requires a non-negative exponent");
    i64 result = 1;
    i64 b = ell.reduce(base);
    while (exp > 0) {
        if (exp & 1) result = ell.mul(result, b);
        b = ell.mul(b, b);
        exp >>= 1;
    }
    return {result, ell};
}

inline Residue mod_pow(i64 base, i64 exp, i64 ell) { return mod_pow(base, exp, PrimeModulus(ell)); }

/// Inverse via the extended Euclidean algorithm.
constexpr Residue mod_inv(i64 a, PrimeModulus ell) {
    i64 r0 = ell.value(), r1 = ell.reduce(a);
    if (r1 == 0) throw error(errc::not_invertible, "not invertible: " + std::to_string(a) + " is 0 mod " + std::to_string(ell.value()));
    i64 s0 = 0, s1 = 1;
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    return {s0, ell};
}

inline Residue mod_inv(i64 a, i64 ell) { return mod_inv(a, PrimeModulus(ell)); }

/// Legendre symbol (a / ell) in {-1, 0, 1}, computed with the binary
/// reciprocity algorithm (no exponentiation).
constexpr int legendre(i64 a, PrimeModulus ell) {
    i64 n = ell.value();
    i64 x = ell.reduce(a);
    if (x == 0) return 0;
    int sign = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(x, n);
        if (x % 4 == 3 && n % 4 == 3) sign = -sign;
        x %= n;
    }
    return n == 1 ? sign : 0;
}

inline int legendre(i64 a, i64 ell) { return legendre(a, PrimeModulus(ell)); }

// =============================================================================
// Hasse interval
// =============================================================================

/// floor(2 sqrt(p)), the largest |t| allowed by the Hasse bound.
constexpr i64 hasse_bound(i64 p) { return isqrt(checked_mul(4, p)); }

/// { t : t^2 <= 4p } as an ordered set.
inline std::set<i64> hasse_interval(i64 p) {
    if (!is_prime(p)) throw error(errc::not_prime, "hasse_interval requires a prime, got " + std::to_string(p));
    const i64 b = hasse_bound(p);
    std::set<i64> out;
    for (i64 t = -b; t <= b; ++t) out.insert(t);
    return out;
}

} // namespace galcert
