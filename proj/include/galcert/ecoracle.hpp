#pragma once

/**
 * @file ecoracle.hpp
 * @brief Brute-force elliptic curve oracle over small prime fields.
 *
 * Curves are general Weierstrass models
 *     y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6,
 * so p = 2 and p = 3 need no special casing. Point counts are exhaustive.
 * Nothing here depends on the certification code; it exists to cross-check it.
 */

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "galcert/arith.hpp"
#include "galcert/parallel.hpp"
#include "galcert/repmodel.hpp"

namespace galcert {

inline constexpr i64 oracle_prime_budget = 50;
inline constexpr i64 point_count_limit = 1 << 16;
inline constexpr i64 curve_coefficient_limit = 10000;

using WeierstrassCoefficients = std::array<i64, 5>; // a1, a2, a3, a4, a6

/// Discriminant of a general Weierstrass model over Z.
inline i128 weierstrass_discriminant(const WeierstrassCoefficients& a) {
    const i128 a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
    const i128 b2 = a1 * a1 + 4 * a2;
    const i128 b4 = 2 * a4 + a1 * a3;
    const i128 b6 = a3 * a3 + 4 * a6;
    const i128 b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

inline std::string to_decimal(i128 v) {
    if (v == 0) return "0";
    const bool negative = v < 0;
    std::string digits;
    while (v != 0) {
        const int d = static_cast<int>(v % 10);
        digits.insert(digits.begin(), static_cast<char>('0' + (d < 0 ? -d : d)));
        v /= 10;
    }
    return negative ? "-" + digits : digits;
}

class CurveFp {
public:
    CurveFp(i64 p, const WeierstrassCoefficients& a) : p_(p) {
        if (!is_prime(p)) throw error(errc::not_prime, "curve field characteristic must be prime");
        if (p >= point_count_limit) throw error(errc::oracle_scale, "oracle scale exceeded: p = " + std::to_string(p));
        for (std::size_t i = 0; i < a.size(); ++i) a_[i] = reduce_mod(a[i], p);
        if (weierstrass_discriminant(a_) % p == 0)
            throw error(errc::singular_curve, "singular curve over F_" + std::to_string(p));
    }

    i64 p() const { return p_; }
    const WeierstrassCoefficients& coefficients() const { return a_; }

    /// Value of y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6) mod p.
    i64 equation(i64 x, i64 y) const {
        const auto& [a1, a2, a3, a4, a6] = a_;
        const i64 lhs = (y * y + a1 * x % p_ * y + a3 * y) % p_;
        const i64 rhs = (((x * x % p_) * x) + a2 * (x * x % p_) + a4 * x + a6) % p_;
        return reduce_mod(lhs - rhs, p_);
    }

private:
    i64 p_;
    WeierstrassCoefficients a_{};
};

/// #E(F_p), point at infinity included, by enumerating every (x, y).
inline i64 count_points(const CurveFp& e) {
    i64 n = 1;
    for (i64 x = 0; x < e.p(); ++x)
        for (i64 y = 0; y < e.p(); ++y)
            if (e.equation(x, y) == 0) ++n;
    return n;
}

/// Frobenius trace p + 1 - #E(F_p).
inline i64 frobenius_trace(const CurveFp& e) { return e.p() + 1 - count_points(e); }

/// Every trace attained by a nonsingular general Weierstrass curve over F_p
/// with all coefficients in [0, coefficient_bound). Exhaustive.
inline std::set<i64> trace_set(i64 p, std::optional<i64> coefficient_bound = std::nullopt, unsigned workers = 1) {
    if (!is_prime(p)) throw error(errc::not_prime, "trace_set requires a prime");
    if (p > oracle_prime_budget)
        throw error(errc::oracle_scale, "oracle scale exceeded: p = " + std::to_string(p) + " > " +
                                            std::to_string(oracle_prime_budget));
    const i64 bound = std::clamp<i64>(coefficient_bound.value_or(p), 1, p);

    // roots[b][c] = #{ y in F_p : y^2 + b y = c }, by enumerating y.
    std::vector<std::vector<i64>> roots(p, std::vector<i64>(p, 0));
    for (i64 b = 0; b < p; ++b)
        for (i64 y = 0; y < p; ++y) ++roots[b][(y * y + b * y) % p];

    std::vector<i64> shards;
    for (i64 s = 0; s < bound * bound; ++s) shards.push_back(s);

    auto shard_traces = [&](i64 shard) {
        const i64 a1 = shard / bound, a2 = shard % bound;
        std::set<i64> found;
        for (i64 a3 = 0; a3 < bound; ++a3)
            for (i64 a4 = 0; a4 < bound; ++a4)
                for (i64 a6 = 0; a6 < bound; ++a6) {
                    if (weierstrass_discriminant({a1, a2, a3, a4, a6}) % p == 0) continue;
                    i64 n = 1;
                    for (i64 x = 0; x < p; ++x) {
                        const i64 fx = ((x * x % p) * x + a2 * x * x + a4 * x + a6) % p;
                        n += roots[(a1 * x + a3) % p][fx];
                    }
                    found.insert(p + 1 - n);
                }
        return found;
    };

    std::set<i64> out;
    for (const auto& part : parallel_map(shards, workers, shard_traces)) out.insert(part.begin(), part.end());
    return out;
}

class CurveQ {
public:
    explicit CurveQ(const WeierstrassCoefficients& a) : a_(a) {
        for (i64 c : a)
            if (c > curve_coefficient_limit || c < -curve_coefficient_limit)
                throw error(errc::invalid_argument, "curve coefficient out of range: " + std::to_string(c));
        disc_ = weierstrass_discriminant(a);
        if (disc_ == 0) throw error(errc::singular_curve, "singular curve: discriminant is zero");
    }

    const WeierstrassCoefficients& coefficients() const { return a_; }
    i128 discriminant() const { return disc_; }
    bool good_reduction_at(i64 p) const { return disc_ % p != 0; }

    /// The model reduced mod p; p must not divide the discriminant.
    CurveFp reduce(i64 p) const { return CurveFp(p, a_); }

private:
    WeierstrassCoefficients a_;
    i128 disc_;
};

struct FalsifyWitness {
    i64 prime;
    i64 curve_trace;          // p + 1 - #E(F_p), over Z
    i64 representation_trace; // residue mod ell

    friend bool operator==(const FalsifyWitness&, const FalsifyWitness&) = default;
};

struct FalsifyResult {
    std::optional<FalsifyWitness> witness; // absent: no witness found (not a proof of isomorphism)
    std::vector<i64> compared;             // primes actually compared, ascending
};

/// Looks for a prime where E mod p and rho' disagree on Frobenius trace mod ell.
/// Primes dividing the model's discriminant are skipped; no minimal model is
/// computed, so skipping is conservative.
inline FalsifyResult falsify_curve(const CurveQ& curve, const ResidualRep& rho, std::vector<i64> budget) {
    if (rho.det_exponent != 1)
        throw error(errc::invalid_argument, "falsify_curve needs a representation with determinant chi");
    std::sort(budget.begin(), budget.end());
    budget.erase(std::unique(budget.begin(), budget.end()), budget.end());

    FalsifyResult out;
    for (i64 p : budget) {
        if (!is_prime(p) || p == rho.ell.value() || !curve.good_reduction_at(p)) continue;
        const auto tr = rho.trace(p);
        if (!tr) continue;
        out.compared.push_back(p);
        const i64 curve_trace = frobenius_trace(curve.reduce(p));
        if (rho.ell.reduce(curve_trace) != tr->value()) {
            out.witness = FalsifyWitness{p, curve_trace, tr->value()};
            return out;
        }
    }
    if (out.compared.empty())
        throw error(errc::insufficient_overlap, "insufficient overlap: no budget prime is good for both curve and representation");
    return out;
}

/// All trace-map primes of rho as the default budget.
inline FalsifyResult falsify_curve(const CurveQ& curve, const ResidualRep& rho) {
    std::vector<i64> budget;
    for (const auto& [p, tr] : rho.traces) budget.push_back(p);
    return falsify_curve(curve, rho, std::move(budget));
}

/// Re-derives a witness: point count by the Legendre character sum when
/// possible (odd p, a1 = a3 = 0), by enumeration otherwise.
inline bool check_falsify_witness(const CurveQ& curve, const ResidualRep& rho, const FalsifyWitness& w) {
    if (!is_prime(w.prime) || w.prime == rho.ell.value() || !curve.good_reduction_at(w.prime)) return false;
    const auto tr = rho.trace(w.prime);
    if (!tr || tr->value() != w.representation_trace) return false;
    const auto& a = curve.coefficients();
    i64 trace = 0;
    if (w.prime > 2 && reduce_mod(a[0], w.prime) == 0 && reduce_mod(a[2], w.prime) == 0) {
        // y^2 = x^3 + a2 x^2 + a4 x + a6: #E = p + 1 + sum_x (f(x) / p)
        const PrimeModulus pm(w.prime);
        i64 sum = 0;
        for (i64 x = 0; x < w.prime; ++x) {
            const i64 fx = pm.reduce(x * x * x + a[1] * x * x + a[3] * x + a[4]);
            sum += legendre(fx, pm);
        }
        trace = -sum;
    } else {
        trace = frobenius_trace(curve.reduce(w.prime));
    }
    return trace == w.curve_trace && rho.ell.reduce(trace) != w.representation_trace;
}

} // namespace galcert
