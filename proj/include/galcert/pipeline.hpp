#pragma once

/**
 * @file pipeline.hpp
 * @brief End-to-end certification of one newform at one or many ell.
 *
 * For each ell (and each embedding, when the coefficient field is quadratic):
 *   1. reducibility obstruction at eligible witness primes, when ell > max(5, k+1);
 *   2. discriminant test at every witness prime if (1) did not settle it;
 *   3. twist to determinant chi, then the trace test at every witness prime
 *      p != 1 mod ell;
 *   4. conductor test when the level is the exact residual conductor.
 * Every attempt is kept, so the output is a full audit trail.
 */

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galcert/certify.hpp"
#include "galcert/parallel.hpp"
#include "galcert/repmodel.hpp"

namespace galcert {

struct CertifyOptions {
    std::vector<i64> witness_primes; // empty: every prime in the trace map
    std::optional<i64> root;         // fixes the embedding; otherwise both are run
};

struct EllCertification {
    i64 ell = 0;
    std::optional<i64> root;
    i64 det_exponent = 0;
    std::optional<i64> twist_exponent;
    std::vector<Certificate> irreducibility;
    std::vector<Certificate> non_ellipticity;
    std::vector<std::string> notes;
    std::optional<std::string> error; // set when this ell could not be processed

    bool irreducible() const {
        return std::any_of(irreducibility.begin(), irreducibility.end(),
                           [](const Certificate& c) { return c.verdict == Verdict::irreducible; });
    }

    bool non_elliptic() const {
        return std::any_of(non_ellipticity.begin(), non_ellipticity.end(),
                           [](const Certificate& c) { return c.verdict == Verdict::non_elliptic; });
    }

    bool proved() const { return !error && irreducible() && non_elliptic(); }
};

namespace detail {

inline std::vector<i64> witness_primes_for(const ResidualRep& rho, const CertifyOptions& options,
                                           std::vector<std::string>& notes) {
    if (options.witness_primes.empty())
        return available_witness_primes(rho, [](i64) { return true; });
    std::vector<i64> out;
    for (i64 p : options.witness_primes) {
        if (rho.trace(p)) {
            out.push_back(p);
        } else {
            notes.push_back("insufficient data: no trace at witness prime " + std::to_string(p));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline EllCertification certify_embedding(const ResidualRep& rho, const CertifyOptions& options) {
    const NewformData& f = *rho.source;
    const i64 ell = rho.ell.value();
    EllCertification out;
    out.ell = ell;
    if (rho.embedding) out.root = rho.embedding->root();
    out.det_exponent = rho.det_exponent;

    const auto witnesses = witness_primes_for(rho, options, out.notes);

    if (ell > std::max<i64>(5, f.weight + 1)) {
        const i64 support = character_support_modulus(f.level);
        for (const auto& [p, a] : f.eigenvalues) {
            if (!a.is_rational_value() || reduce_mod(p, support) != 1 % support) continue;
            out.irreducibility.push_back(reducibility_obstruction(rho, p).certificate);
            if (out.irreducibility.back().verdict == Verdict::irreducible) break;
        }
    } else {
        out.notes.push_back("reducibility obstruction skipped: needs ell > max(5, k + 1)");
    }
    if (!out.irreducible()) {
        for (i64 p : witnesses) out.irreducibility.push_back(irreducibility_by_discriminant(rho, p));
    }

    if (rho.det_exponent % 2 == 1) {
        const ResidualRep twisted = twist_to_det_chi(rho);
        out.twist_exponent = twisted.twist_exponent;
        for (i64 p : witnesses) {
            if (reduce_mod(p, ell) == 1) {
                out.notes.push_back("trace test skipped at p = " + std::to_string(p) + ": p = 1 mod ell");
                continue;
            }
            out.non_ellipticity.push_back(non_elliptic_trace_test(twisted, p));
        }
        if (rho.conductor_is_equality) {
            out.non_ellipticity.push_back(conductor_bound_test(twisted));
        } else {
            out.notes.push_back("conductor test skipped: level only known to be a multiple of the conductor");
        }
    } else {
        out.notes.push_back("no determinant-chi twist exists for even determinant exponent " +
                            std::to_string(rho.det_exponent));
    }
    return out;
}

} // namespace detail

/// Certificates for one ell; one entry per embedding (both roots unless
/// `options.root` fixes one). Throws on bad-reduction, ramified or inert ell.
inline std::vector<EllCertification> certify_ell(const std::shared_ptr<const NewformData>& f, i64 ell_value,
                                                 const CertifyOptions& options = {}) {
    const PrimeModulus ell(ell_value);
    std::vector<EllCertification> out;
    if (f->field.is_rational() || options.root) {
        out.push_back(detail::certify_embedding(residual_rep(f, ell, options.root), options));
    } else {
        // residual_rep rejects bad-reduction ell before the embedding lookup
        if (f->level % ell_value == 0) residual_rep(f, ell);
        const auto [low, high] = embedding_choices(f->field.d(), ell);
        out.push_back(detail::certify_embedding(residual_rep(f, ell, low.root()), options));
        out.push_back(detail::certify_embedding(residual_rep(f, ell, high.root()), options));
    }
    return out;
}

/// Runs certify_ell over every ell, recording per-ell errors instead of
/// aborting. Output is ordered by ell regardless of `workers`.
inline std::vector<EllCertification> certify_range(const std::shared_ptr<const NewformData>& f,
                                                   const std::vector<i64>& ells, const CertifyOptions& options,
                                                   unsigned workers = 1) {
    auto per_ell = parallel_map(ells, workers, [&](i64 ell) {
        try {
            return certify_ell(f, ell, options);
        } catch (const error& e) {
            EllCertification failed;
            failed.ell = ell;
            failed.error = e.what();
            return std::vector<EllCertification>{failed};
        }
    });
    std::vector<EllCertification> out;
    for (auto& v : per_ell)
        for (auto& c : v) out.push_back(std::move(c));
    return out;
}

} // namespace galcert
