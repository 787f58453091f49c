#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace galcert {

enum class errc {
    invalid_argument,
    not_prime,
    not_invertible,
    overflow,
    ramified,
    inert,
    field_mismatch,
    not_rational,
    bad_reduction,
    insufficient_data,
    invalid_witness,
    no_twist,
    ramification_dichotomy,
    singular_curve,
    oracle_scale,
    insufficient_overlap,
    schema,
};

constexpr std::string_view to_string(errc code) {
    switch (code) {
    case errc::invalid_argument: return "invalid argument";
    case errc::not_prime: return "not prime";
    case errc::not_invertible: return "not invertible";
    case errc::overflow: return "overflow";
    case errc::ramified: return "ramified";
    case errc::inert: return "inert";
    case errc::field_mismatch: return "field mismatch";
    case errc::not_rational: return "not rational";
    case errc::bad_reduction: return "bad reduction prime";
    case errc::insufficient_data: return "insufficient data";
    case errc::invalid_witness: return "invalid witness";
    case errc::no_twist: return "no twist";
    case errc::ramification_dichotomy: return "ramification dichotomy unavailable";
    case errc::singular_curve: return "singular curve";
    case errc::oracle_scale: return "oracle scale exceeded";
    case errc::insufficient_overlap: return "insufficient overlap";
    case errc::schema: return "schema violation";
    }
    return "unknown";
}

/// Every failure in the library is reported through this type; `code()` lets
/// callers (and the CLI) distinguish error classes without parsing messages.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace galcert
