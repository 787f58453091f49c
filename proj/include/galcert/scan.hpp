#pragma once

/**
 * @file scan.hpp
 * @brief Prime-range scan of the closed-form non-ellipticity condition.
 *
 * With a_2 = 1 and det = chi, an elliptic origin forces
 * 2^((ell-3)/2) = 0, +-1, +-2, +-3 mod ell; squaring gives
 * 2^(ell-3) in {1, 4, 9} mod ell, and Fermat turns 2^(ell-3) into 4^-1.
 * The scan evaluates both sides independently for every prime in range.
 */

#include <string>
#include <vector>

#include "galcert/arith.hpp"
#include "galcert/parallel.hpp"

namespace galcert {

inline std::vector<i64> primes_in_range(i64 lo, i64 hi) {
    std::vector<i64> out;
    for (i64 n = std::max<i64>(lo, 2); n <= hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

struct ScanEntry {
    i64 ell;
    i64 power;   // 2^(ell-3) mod ell
    i64 inverse; // 4^-1 mod ell
    bool member; // power in {1, 4, 9} mod ell

    friend bool operator==(const ScanEntry&, const ScanEntry&) = default;
};

struct ScanReport {
    i64 ell_min;
    i64 ell_max;
    std::vector<ScanEntry> entries;  // ascending ell
    std::vector<i64> membership;     // ells where the obstruction fails
    bool fermat_consistent = true;   // power == inverse for every entry
};

inline ScanEntry scan_prime(i64 ell_value) {
    const PrimeModulus ell(ell_value);
    const i64 power = mod_pow(2, ell_value - 3, ell).value();
    const i64 inverse = mod_inv(4, ell).value();
    const bool member = power == ell.reduce(1) || power == ell.reduce(4) || power == ell.reduce(9);
    return {ell_value, power, inverse, member};
}

inline ScanReport closed_form_scan(i64 ell_min, i64 ell_max, unsigned workers = 1) {
    if (ell_min <= 5)
        throw error(errc::invalid_argument, "range must exceed 5: ell_min = " + std::to_string(ell_min));
    if (ell_max < ell_min)
        throw error(errc::invalid_argument, "empty range: ell_max < ell_min");
    if (ell_max > max_modulus) throw error(errc::invalid_argument, "ell_max too large");

    ScanReport report{ell_min, ell_max, {}, {}, true};
    report.entries = parallel_map(primes_in_range(ell_min, ell_max), workers, scan_prime);
    for (const auto& e : report.entries) {
        if (e.member) report.membership.push_back(e.ell);
        if (e.power != e.inverse) report.fermat_consistent = false;
    }
    return report;
}

} // namespace galcert
