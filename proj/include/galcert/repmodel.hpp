#pragma once

/**
 * @file repmodel.hpp
 * @brief Newform eigenvalue systems and the mod-ell representations they induce.
 *
 * A residual representation is described only by what the certifier needs:
 * its traces at Frobenius for good primes, the exponent m of its determinant
 * chi^m, and its Serre conductor. Eigenvalue maps are sparse; a missing prime
 * is reported as errc::insufficient_data, never filled in.
 */

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galcert/arith.hpp"
#include "galcert/quadfield.hpp"

namespace galcert {

struct NewformData {
    std::string id;
    i64 level = 1;
    int weight = 2;
    CoefficientField field = CoefficientField::rational();
    std::map<i64, QuadInt> eigenvalues; // good primes only
    bool conductor_equality = false;    // level is known to equal the residual conductor
    std::string notes;

    std::vector<i64> bad_primes() const {
        return level >= 2 ? trial_factor(level).primes() : std::vector<i64>{};
    }

    std::optional<QuadInt> eigenvalue(i64 p) const {
        auto it = eigenvalues.find(p);
        if (it == eigenvalues.end()) return std::nullopt;
        return it->second;
    }
};

/// Structural invariants; throws errc::schema with the offending prime.
inline void validate(const NewformData& f) {
    if (f.level < 1) throw error(errc::schema, "level must be positive");
    if (f.weight < 2) throw error(errc::schema, "weight must be at least 2");
    for (const auto& [p, a] : f.eigenvalues) {
        const std::string where = "eigenvalues/" + std::to_string(p);
        if (!is_prime(p)) throw error(errc::schema, where + ": key is not prime");
        if (f.level % p == 0) throw error(errc::schema, where + ": prime divides the level");
        if (!(a.field() == f.field) && !a.is_rational_value())
            throw error(errc::schema, where + ": value does not belong to the coefficient field");
    }
}

/// Primes whose stored a_p violates |a_p| <= 2 p^((k-1)/2), checked as
/// a_p^2 <= 4 p^(k-1) whenever a_p^2 is rational. Empty when the data is sane.
inline std::vector<i64> ramanujan_violations(const NewformData& f) {
    std::vector<i64> out;
    for (const auto& [p, a] : f.eigenvalues) {
        if (a.x() != 0 && a.y() != 0) continue;
        if (norm_discriminant(a, p, f.weight) > 0) out.push_back(p);
    }
    return out;
}

/// Exponent t of a twist by chi^t, read mod (ell - 1).
struct TwistSpec {
    i64 exponent = 0;
};

struct ResidualRep {
    PrimeModulus ell;
    i64 det_exponent;                  // determinant is chi^det_exponent, in [0, ell-2]
    std::map<i64, i64> traces;         // p -> trace(Frob p) in [0, ell), p coprime to N*ell
    i64 serre_conductor;               // prime-to-ell part of the level
    bool conductor_is_equality;        // false: only "divides" is known
    std::optional<EmbeddingChoice> embedding;
    i64 twist_exponent = 0;            // cumulative twist applied to the source, mod (ell - 1)
    std::shared_ptr<const NewformData> source;

    std::optional<Residue> trace(i64 p) const {
        auto it = traces.find(p);
        if (it == traces.end()) return std::nullopt;
        return Residue(it->second, ell);
    }

    Residue require_trace(i64 p) const {
        auto t = trace(p);
        if (!t)
            throw error(errc::insufficient_data, "insufficient data: no trace at p = " + std::to_string(p) +
                                                     " for ell = " + std::to_string(ell.value()));
        return *t;
    }
};

/// The mod-ell representation attached to f. For a quadratic coefficient field
/// ell must split; `root` selects the embedding (default: the smaller root).
inline ResidualRep residual_rep(std::shared_ptr<const NewformData> f, PrimeModulus ell,
                                std::optional<i64> root = std::nullopt) {
    if (f->level % ell.value() == 0)
        throw error(errc::bad_reduction, "bad reduction prime: " + std::to_string(ell.value()) + " divides level " +
                                             std::to_string(f->level));

    std::optional<EmbeddingChoice> embedding;
    if (!f->field.is_rational()) {
        const auto [low, high] = embedding_choices(f->field.d(), ell);
        if (!root) {
            embedding = low;
        } else {
            embedding = EmbeddingChoice(ell, f->field.d(), ell.reduce(*root));
        }
    } else if (root) {
        throw error(errc::invalid_argument, "embedding root given for a rational coefficient field");
    }

    std::map<i64, i64> traces;
    for (const auto& [p, a] : f->eigenvalues) {
        if (p == ell.value()) continue;
        traces.emplace(p, embedding ? reduce(a, *embedding).value() : reduce(a, ell).value());
    }

    return ResidualRep{
        .ell = ell,
        .det_exponent = reduce_mod(f->weight - 1, ell.value() - 1),
        .traces = std::move(traces),
        .serre_conductor = f->level,
        .conductor_is_equality = f->conductor_equality,
        .embedding = embedding,
        .twist_exponent = 0,
        .source = std::move(f),
    };
}

inline ResidualRep residual_rep(const NewformData& f, i64 ell, std::optional<i64> root = std::nullopt) {
    return residual_rep(std::make_shared<const NewformData>(f), PrimeModulus(ell), root);
}

/// rho tensor chi^t: trace(p) -> trace(p) * p^t, determinant exponent + 2t.
inline ResidualRep twist(const ResidualRep& rho, TwistSpec t) {
    const i64 order = rho.ell.value() - 1;
    const i64 e = reduce_mod(t.exponent, order);
    ResidualRep out = rho;
    for (auto& [p, tr] : out.traces) tr = rho.ell.mul(tr, mod_pow(p, e, rho.ell).value());
    out.det_exponent = reduce_mod(rho.det_exponent + 2 * e, order);
    out.twist_exponent = reduce_mod(rho.twist_exponent + e, order);
    return out;
}

/// The twist exponent taking chi^m to chi: smallest t >= 0 with
/// m + 2t = 1 mod (ell - 1). For m = 3 this is (ell - 3) / 2; for m = 1 it is 0.
inline i64 det_chi_twist_exponent(i64 m, PrimeModulus ell) {
    if (m % 2 == 0)
        throw error(errc::no_twist, "no determinant-chi twist exists for even determinant exponent " + std::to_string(m));
    const i64 half = (ell.value() - 1) / 2;
    return reduce_mod((1 - m) / 2, half);
}

inline ResidualRep twist_to_det_chi(const ResidualRep& rho) {
    return twist(rho, TwistSpec{det_chi_twist_exponent(rho.det_exponent, rho.ell)});
}

/// Sorted trace-map primes satisfying `pred`.
template <typename Predicate>
std::vector<i64> available_witness_primes(const ResidualRep& rho, Predicate pred) {
    std::vector<i64> out;
    for (const auto& [p, tr] : rho.traces)
        if (pred(p)) out.push_back(p);
    return out;
}

} // namespace galcert
