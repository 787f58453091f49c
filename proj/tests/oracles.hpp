#pragma once

// Brute-force reference routines used only by the tests. None of these call
// into galcert; they exist to produce expected values independently.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

inline i64 canon(i64 a, i64 m) { return ((a % m) + m) % m; }

/// base^exp mod m by exp-fold multiplication.
inline i64 repeated_product(i64 base, i64 exp, i64 m) {
    i64 r = 1 % m;
    for (i64 i = 0; i < exp; ++i) r = canon(r * canon(base, m), m);
    return r;
}

/// The b in [1, m) with a*b = 1 mod m, by search.
inline i64 search_inverse(i64 a, i64 m) {
    for (i64 b = 1; b < m; ++b)
        if (canon(a * b, m) == 1) return b;
    return -1;
}

/// Nonzero squares mod m, by squaring every residue.
inline std::set<i64> squares(i64 m) {
    std::set<i64> out;
    for (i64 x = 1; x < m; ++x) out.insert(x * x % m);
    return out;
}

inline int legendre_by_squares(i64 a, i64 m) {
    const i64 r = canon(a, m);
    if (r == 0) return 0;
    return squares(m).contains(r) ? 1 : -1;
}

inline bool prime_by_divisors(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d < n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Largest r with r*r <= n, counting up.
inline i64 counting_isqrt(i64 n) {
    i64 r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Repeatedly strip the smallest divisor.
inline std::vector<std::pair<i64, int>> strip_factor(i64 n) {
    std::vector<std::pair<i64, int>> out;
    for (i64 d = 2; n > 1; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    return out;
}

/// Affine solutions of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 plus infinity,
/// testing each (x, y) pair directly with canonicalized integer arithmetic.
inline i64 point_count(i64 p, i64 a1, i64 a2, i64 a3, i64 a4, i64 a6) {
    i64 n = 1;
    for (i64 x = 0; x < p; ++x)
        for (i64 y = 0; y < p; ++y)
            if (canon(y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6, p) == 0) ++n;
    return n;
}

/// p + 1 + sum_x ((x^3 + a4 x + a6) / p) for short Weierstrass curves, odd p.
inline i64 character_sum_count(i64 p, i64 a4, i64 a6) {
    i64 n = p + 1;
    for (i64 x = 0; x < p; ++x) n += legendre_by_squares(x * x * x + a4 * x + a6, p);
    return n;
}

} // namespace oracle
