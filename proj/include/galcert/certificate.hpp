#pragma once

/**
 * @file certificate.hpp
 * @brief Verdicts with self-contained witnesses, and their re-verification.
 *
 * `check()` recomputes every witness from its recorded integers along routes
 * that differ from the ones used to produce it: Euler's criterion instead of
 * the reciprocity-based Legendre symbol, naive multiplication instead of
 * square-and-multiply, product reconstruction instead of trial division, and a
 * direct t^2 <= 4p scan instead of isqrt for the Hasse set.
 */

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "galcert/arith.hpp"

namespace galcert {

enum class Verdict { irreducible, non_elliptic, inconclusive };
enum class Method { discriminant_non_residue, reducibility_obstruction, trace_obstruction, conductor_bound };

constexpr std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::irreducible: return "Irreducible";
    case Verdict::non_elliptic: return "NonElliptic";
    case Verdict::inconclusive: return "Inconclusive";
    }
    return "?";
}

constexpr std::string_view to_string(Method m) {
    switch (m) {
    case Method::discriminant_non_residue: return "DiscriminantNonResidue";
    case Method::reducibility_obstruction: return "ReducibilityObstruction";
    case Method::trace_obstruction: return "TraceObstruction";
    case Method::conductor_bound: return "ConductorBound";
    }
    return "?";
}

/// Characteristic polynomial x^2 - t x + p^m has discriminant t^2 - 4 p^m mod ell.
struct DiscriminantWitness {
    i64 prime;
    i64 det_exponent;
    i64 trace;
    i64 discriminant; // residue mod ell
    int symbol;       // Legendre symbol of `discriminant`
};

/// Reducible shape eps + eps^-1 chi^(k-1) with eps(p) = 1 forces
/// a_p = 1 + p^(k-1) mod ell; `value` is that difference over Z.
struct ObstructionWitness {
    i64 prime;
    int weight;
    i64 eigenvalue;
    i64 support_modulus;                      // p = 1 mod this kills eps(p)
    i64 value;                                // 1 + p^(k-1) - a_p
    std::optional<Factorization> factorization; // of |value|; absent when |value| < 2
    std::vector<i64> exceptional;             // primes the argument cannot exclude
    i64 alternate_sign_value;                 // 1 + p^(k-1) + a_p, for audit only
};

/// Frobenius trace outside the set an elliptic curve could produce at p.
struct TraceWitness {
    i64 prime;
    i64 source_trace;   // untwisted trace mod ell
    i64 twist_exponent; // trace = source_trace * p^twist_exponent
    i64 trace;
    std::vector<i64> excluded; // Hasse residues together with +-(p+1), sorted
    bool extended;             // p != 2
};

struct ConductorViolation {
    i64 prime;
    int exponent;
    int bound;

    friend bool operator==(const ConductorViolation&, const ConductorViolation&) = default;
};

struct ConductorWitness {
    i64 conductor;
    bool established; // conductor known exactly, not just as a divisor
    std::vector<PrimePower> factors;
    std::optional<ConductorViolation> violation;
};

using Witness = std::variant<DiscriminantWitness, ObstructionWitness, TraceWitness, ConductorWitness>;

struct Provenance {
    std::string form_id;
    std::optional<i64> root;
    i64 twist_exponent = 0;
};

struct Certificate {
    Verdict verdict;
    Method method;
    std::optional<i64> ell; // absent for ell-independent conductor certificates
    Witness witness;
    Provenance inputs;
};

/// Largest exponent of p allowed in the conductor of an elliptic curve over Q.
constexpr int curve_conductor_exponent_bound(i64 p) {
    if (p == 2) return 8;
    if (p == 3) return 5;
    return 2;
}

namespace detail {

inline i64 naive_pow_mod(i64 base, i64 exp, i64 m) {
    i64 r = 1 % m;
    const i64 b = reduce_mod(base, m);
    for (i64 i = 0; i < exp; ++i) r = static_cast<i64>((i128{r} * b) % m);
    return r;
}

inline int euler_symbol(i64 a, i64 ell) {
    const i64 r = naive_pow_mod(a, (ell - 1) / 2, ell);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

inline std::vector<i64> excluded_residues_by_scan(i64 p, i64 ell) {
    std::set<i64> out;
    for (i64 t = 0; t * t <= 4 * p; ++t) {
        out.insert(reduce_mod(t, ell));
        out.insert(reduce_mod(-t, ell));
    }
    out.insert(reduce_mod(p + 1, ell));
    out.insert(reduce_mod(-(p + 1), ell));
    return {out.begin(), out.end()};
}

inline bool check_factorization(const Factorization& f) {
    i128 prod = 1;
    i64 last = 1;
    for (const auto& [q, e] : f.factors) {
        if (q <= last || e < 1 || !is_prime(q)) return false;
        last = q;
        for (int i = 0; i < e; ++i) {
            prod *= q;
            if (prod > f.input) return false;
        }
    }
    return prod == f.input;
}

inline bool check(const DiscriminantWitness& w, Verdict v, i64 ell) {
    if (w.prime == ell || !is_prime(w.prime)) return false;
    const i64 tr = reduce_mod(w.trace, ell);
    const i64 disc = reduce_mod(tr * tr - 4 * naive_pow_mod(w.prime, w.det_exponent, ell), ell);
    if (disc != w.discriminant) return false;
    if (euler_symbol(disc, ell) != w.symbol) return false;
    return v == (w.symbol == -1 ? Verdict::irreducible : Verdict::inconclusive);
}

inline bool check(const ObstructionWitness& w, Verdict v, i64 ell) {
    i128 pk = 1;
    for (int i = 1; i < w.weight; ++i) pk *= w.prime;
    if (i128{w.value} != 1 + pk - w.eigenvalue) return false;
    if (i128{w.alternate_sign_value} != 1 + pk + w.eigenvalue) return false;
    if (w.support_modulus < 1 || reduce_mod(w.prime, w.support_modulus) != 1 % w.support_modulus) return false;
    if (w.value == 0) return v == Verdict::inconclusive && !w.factorization && w.exceptional.empty();

    const i64 magnitude = w.value < 0 ? -w.value : w.value;
    std::set<i64> expected{w.prime};
    if (magnitude >= 2) {
        if (!w.factorization || w.factorization->input != magnitude || !check_factorization(*w.factorization))
            return false;
        for (const auto& [q, e] : w.factorization->factors)
            if (q >= 5) expected.insert(q);
    } else if (w.factorization) {
        return false;
    }
    if (std::vector<i64>(expected.begin(), expected.end()) != w.exceptional) return false;
    const bool covered = ell > 5 && !expected.contains(ell) && reduce_mod(magnitude, ell) != 0;
    return v == (covered ? Verdict::irreducible : Verdict::inconclusive);
}

inline bool check(const TraceWitness& w, Verdict v, i64 ell) {
    if (reduce_mod(w.prime, ell) == 1 || w.prime == ell || !is_prime(w.prime)) return false;
    if (w.extended != (w.prime != 2)) return false;
    const i64 twisted = static_cast<i64>((i128{reduce_mod(w.source_trace, ell)} *
                                          naive_pow_mod(w.prime, w.twist_exponent, ell)) % ell);
    if (twisted != w.trace) return false;
    const auto excluded = excluded_residues_by_scan(w.prime, ell);
    if (excluded != w.excluded) return false;
    const bool outside = std::find(excluded.begin(), excluded.end(), w.trace) == excluded.end();
    return v == (outside ? Verdict::non_elliptic : Verdict::inconclusive);
}

inline bool check(const ConductorWitness& w, Verdict v, std::optional<i64> ell) {
    if (w.conductor < 1) return false;
    i128 prod = 1;
    i64 last = 1;
    std::optional<ConductorViolation> first;
    for (const auto& [q, e] : w.factors) {
        if (q <= last || e < 1 || !is_prime(q)) return false;
        if (ell && q == *ell) return false;
        last = q;
        for (int i = 0; i < e; ++i) prod *= q;
        if (!first && e > curve_conductor_exponent_bound(q)) first = ConductorViolation{q, e, curve_conductor_exponent_bound(q)};
    }
    if (prod != w.conductor || first != w.violation) return false;
    return v == (w.established && first ? Verdict::non_elliptic : Verdict::inconclusive);
}

} // namespace detail

/// Recompute the witness arithmetic; true iff the verdict follows from it.
inline bool check(const Certificate& c) {
    return std::visit(
        [&](const auto& w) -> bool {
            using W = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<W, ConductorWitness>) {
                if (c.method != Method::conductor_bound) return false;
                if (c.ell && !(c.ell > 2 && is_prime(*c.ell))) return false;
                return detail::check(w, c.verdict, c.ell);
            } else {
                if (!c.ell || *c.ell <= 2 || !is_prime(*c.ell)) return false;
                if constexpr (std::is_same_v<W, DiscriminantWitness>) {
                    if (c.method != Method::discriminant_non_residue) return false;
                } else if constexpr (std::is_same_v<W, ObstructionWitness>) {
                    if (c.method != Method::reducibility_obstruction) return false;
                } else {
                    if (c.method != Method::trace_obstruction) return false;
                    if (c.inputs.twist_exponent != w.twist_exponent) return false;
                }
                return detail::check(w, c.verdict, *c.ell);
            }
        },
        c.witness);
}

} // namespace galcert
