#pragma once

/**
 * @file certify.hpp
 * @brief Irreducibility and non-ellipticity proofs for residual representations.
 *
 * Each operation returns a Certificate whose witness `check()` can recompute.
 * Inconclusive is an ordinary outcome: these methods are sound but not
 * complete.
 */

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "galcert/arith.hpp"
#include "galcert/certificate.hpp"
#include "galcert/repmodel.hpp"

namespace galcert {

namespace detail {

inline Provenance provenance_of(const ResidualRep& rho) {
    Provenance out;
    if (rho.source) out.form_id = rho.source->id;
    if (rho.embedding) out.root = rho.embedding->root();
    out.twist_exponent = rho.twist_exponent;
    return out;
}

} // namespace detail

/// Irreducible iff trace(p)^2 - 4 p^m is a non-square mod ell, where chi^m is
/// the determinant. Assumes rho is odd, so irreducible and absolutely
/// irreducible coincide.
inline Certificate irreducibility_by_discriminant(const ResidualRep& rho, i64 p) {
    const PrimeModulus ell = rho.ell;
    const Residue tr = rho.require_trace(p);
    const Residue disc = tr * tr - Residue(4, ell) * mod_pow(p, rho.det_exponent, ell);
    const int symbol = legendre(disc.value(), ell);
    return Certificate{
        .verdict = symbol == -1 ? Verdict::irreducible : Verdict::inconclusive,
        .method = Method::discriminant_non_residue,
        .ell = ell.value(),
        .witness = DiscriminantWitness{p, rho.det_exponent, tr.value(), disc.value(), symbol},
        .inputs = detail::provenance_of(rho),
    };
}

/// Largest c with c^2 | N. A character eps with cond(eps)^2 | N has
/// cond(eps) | c, so eps(p) = 1 whenever p = 1 mod c.
inline i64 character_support_modulus(i64 level) {
    if (level < 2) return 1;
    i64 c = 1;
    for (const auto& [q, e] : trial_factor(level).factors) c = checked_mul(c, checked_pow(q, e / 2));
    return c;
}

struct ObstructionResult {
    Certificate certificate;
    std::vector<i64> exceptional;
};

/// If rho were reducible it would be eps + eps^-1 chi^(k-1) with eps unramified
/// outside the level. At a witness prime p = 1 mod the support modulus this
/// gives a_p = 1 + p^(k-1) mod ell, so only primes dividing that difference
/// (plus p itself) survive. The certificate is Irreducible for rho.ell when
/// rho.ell > 5 lies outside the exceptional set.
inline ObstructionResult reducibility_obstruction(const ResidualRep& rho, i64 p) {
    if (!rho.source) throw error(errc::insufficient_data, "insufficient data: representation has no source form");
    const NewformData& f = *rho.source;
    const auto a = f.eigenvalue(p);
    if (!a) throw error(errc::insufficient_data, "insufficient data: no eigenvalue at p = " + std::to_string(p));
    if (!a->is_rational_value())
        throw error(errc::not_rational, "reducibility obstruction needs a rational a_" + std::to_string(p));
    const i64 support = character_support_modulus(f.level);
    if (reduce_mod(p, support) != 1 % support)
        throw error(errc::invalid_witness, "witness prime invalid for trivializing eps: " + std::to_string(p) +
                                               " is not 1 mod " + std::to_string(support));

    const i64 pk = checked_pow(p, f.weight - 1);
    ObstructionWitness w{
        .prime = p,
        .weight = f.weight,
        .eigenvalue = a->x(),
        .support_modulus = support,
        .value = checked_sub(checked_add(1, pk), a->x()),
        .factorization = std::nullopt,
        .exceptional = {},
        .alternate_sign_value = checked_add(checked_add(1, pk), a->x()),
    };

    Verdict verdict = Verdict::inconclusive;
    if (w.value != 0) {
        const i64 magnitude = w.value < 0 ? checked_sub(0, w.value) : w.value;
        std::set<i64> exceptional{p};
        if (magnitude >= 2) {
            w.factorization = trial_factor(magnitude);
            for (const auto& [q, e] : w.factorization->factors)
                if (q >= 5) exceptional.insert(q);
        }
        w.exceptional.assign(exceptional.begin(), exceptional.end());
        if (rho.ell.value() > 5 && !exceptional.contains(rho.ell.value())) verdict = Verdict::irreducible;
    }

    std::vector<i64> exceptional = w.exceptional;
    return {Certificate{
                .verdict = verdict,
                .method = Method::reducibility_obstruction,
                .ell = rho.ell.value(),
                .witness = std::move(w),
                .inputs = detail::provenance_of(rho),
            },
            std::move(exceptional)};
}

/// Residues mod ell of every trace an elliptic curve over Q can have at p when
/// rho' = rho_{E,ell}: the Hasse interval (good reduction) and +-(p+1)
/// (semistable reduction, via level raising). Sorted.
inline std::vector<i64> excluded_trace_set(i64 p, PrimeModulus ell) {
    std::set<i64> out;
    for (i64 t : hasse_interval(p)) out.insert(ell.reduce(t));
    out.insert(ell.reduce(p + 1));
    out.insert(ell.reduce(-(p + 1)));
    return {out.begin(), out.end()};
}

/// Needs det = chi and p unramified with p != 1 mod ell (so that an elliptic
/// curve matching rho' is either good or semistable at p).
inline Certificate non_elliptic_trace_test(const ResidualRep& rho, i64 p) {
    const PrimeModulus ell = rho.ell;
    if (rho.det_exponent != 1)
        throw error(errc::invalid_argument, "trace test needs determinant chi; twist first (det exponent " +
                                                std::to_string(rho.det_exponent) + ")");
    if (ell.reduce(p) == 1)
        throw error(errc::ramification_dichotomy, "ramification dichotomy unavailable: " + std::to_string(p) +
                                                      " = 1 mod " + std::to_string(ell.value()));
    const Residue tr = rho.require_trace(p);
    const Residue source = tr * mod_pow(mod_inv(p, ell).value(), rho.twist_exponent, ell);
    auto excluded = excluded_trace_set(p, ell);
    const bool outside = !std::binary_search(excluded.begin(), excluded.end(), tr.value());
    return Certificate{
        .verdict = outside ? Verdict::non_elliptic : Verdict::inconclusive,
        .method = Method::trace_obstruction,
        .ell = ell.value(),
        .witness = TraceWitness{p, source.value(), rho.twist_exponent, tr.value(), std::move(excluded), p != 2},
        .inputs = detail::provenance_of(rho),
    };
}

/// Compares each exponent of N with the elliptic-curve conductor bounds
/// (2^8, 3^5, p^2). Only meaningful when N is the exact conductor; the first
/// violation by increasing prime is reported.
inline Certificate conductor_bound_test(i64 conductor, bool established = true) {
    if (conductor < 1) throw error(errc::invalid_argument, "conductor must be positive");
    ConductorWitness w{conductor, established, {}, std::nullopt};
    if (conductor >= 2) w.factors = trial_factor(conductor).factors;
    for (const auto& [q, e] : w.factors) {
        const int bound = curve_conductor_exponent_bound(q);
        if (e > bound) {
            w.violation = ConductorViolation{q, e, bound};
            break;
        }
    }
    const bool fires = established && w.violation.has_value();
    return Certificate{
        .verdict = fires ? Verdict::non_elliptic : Verdict::inconclusive,
        .method = Method::conductor_bound,
        .ell = std::nullopt,
        .witness = std::move(w),
        .inputs = {},
    };
}

/// Conductor test on rho's Serre conductor; fires only when that conductor is
/// known exactly.
inline Certificate conductor_bound_test(const ResidualRep& rho) {
    Certificate c = conductor_bound_test(rho.serre_conductor, rho.conductor_is_equality);
    c.ell = rho.ell.value();
    c.inputs = detail::provenance_of(rho);
    return c;
}

enum class SerreBound { applies, does_not_apply, unknown };

constexpr std::string_view to_string(SerreBound s) {
    switch (s) {
    case SerreBound::applies: return "applies";
    case SerreBound::does_not_apply: return "does_not_apply";
    case SerreBound::unknown: return "unknown";
    }
    return "?";
}

/// Whether the generic conductor bound for mod-ell representations at p
/// coincides with the elliptic-curve bound. Only the three congruence
/// conditions below are encoded; anything else is `unknown`.
inline SerreBound serre_bound_predicate(i64 ell, i64 p) {
    if (!is_prime(ell) || ell == 2) throw error(errc::not_prime, "ell must be an odd prime");
    if (!is_prime(p)) throw error(errc::not_prime, "p must be prime");
    if (p == 2) return reduce_mod(ell, 8) == 7 ? SerreBound::does_not_apply : SerreBound::unknown;
    const i64 m = p == 3 ? 9 : p;
    const i64 r = reduce_mod(ell, m);
    return (r == 1 || r == m - 1) ? SerreBound::does_not_apply : SerreBound::applies;
}

} // namespace galcert
