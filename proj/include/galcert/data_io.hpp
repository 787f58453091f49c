#pragma once

/**
 * @file data_io.hpp
 * @brief Form records on the wire, expectation tables, and report output.
 *
 * Form record (strict: unknown keys are rejected):
 *
 *     {
 *       "id": "name",
 *       "level": 25,
 *       "weight": 4,
 *       "field": {"type": "rational"} | {"type": "quadratic", "d": 2},
 *       "eigenvalues": {"2": {"x": 1, "y": 0}, ...},   // a_p = x + y sqrt(d)
 *       "claimed_conductor_equality": false,            // optional
 *       "notes": "..."                                  // optional
 *     }
 *
 * Reports are nlohmann::ordered_json built in a fixed key order, so both the
 * JSON and the text rendering are byte-deterministic.
 */

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "galcert/certificate.hpp"
#include "galcert/ecoracle.hpp"
#include "galcert/pipeline.hpp"
#include "galcert/repmodel.hpp"
#include "galcert/scan.hpp"
#include "galcert/verify.hpp"

namespace galcert {

using json = nlohmann::ordered_json;

enum class Format { text, json };

struct LoadedForm {
    NewformData form;
    std::vector<std::string> warnings;
};

namespace detail {

inline void require_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed,
                         std::initializer_list<std::string_view> required) {
    if (!j.is_object()) throw error(errc::schema, path + ": expected object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw error(errc::schema, path + "/" + key + ": unknown key");
    }
    for (auto key : required) {
        if (!j.contains(key)) throw error(errc::schema, path + "/" + std::string(key) + ": missing required key");
    }
}

inline i64 get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw error(errc::schema, path + ": expected integer");
    return j.get<i64>();
}

inline std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw error(errc::schema, path + ": expected string");
    return j.get<std::string>();
}

inline std::vector<i64> get_int_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw error(errc::schema, path + ": expected array");
    std::vector<i64> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], path + "/" + std::to_string(i)));
    return out;
}

inline i64 parse_prime_key(const std::string& key, const std::string& path) {
    if (key.empty() || key.size() > 18 || key.find_first_not_of("0123456789") != std::string::npos || key[0] == '0')
        throw error(errc::schema, path + ": key must be a decimal prime");
    return std::stoll(key);
}

inline std::optional<ConductorViolation> get_violation(const json& j, const std::string& path) {
    if (j.is_null()) return std::nullopt;
    const auto v = get_int_array(j, path);
    if (v.size() != 3) throw error(errc::schema, path + ": expected [prime, exponent, bound]");
    return ConductorViolation{v[0], static_cast<int>(v[1]), static_cast<int>(v[2])};
}

} // namespace detail

// =============================================================================
// Form records
// =============================================================================

inline LoadedForm form_from_json(const json& j) {
    using namespace detail;
    require_keys(j, "", {"id", "level", "weight", "field", "eigenvalues", "claimed_conductor_equality", "notes"},
                 {"id", "level", "weight", "field", "eigenvalues"});
    LoadedForm out;
    NewformData& f = out.form;
    f.id = get_string(j["id"], "/id");
    f.level = get_int(j["level"], "/level");
    const i64 weight = get_int(j["weight"], "/weight");
    if (weight < 2 || weight > 64) throw error(errc::schema, "/weight: must be in [2, 64]");
    f.weight = static_cast<int>(weight);
    if (f.level < 1) throw error(errc::schema, "/level: must be positive");

    const json& field = j["field"];
    require_keys(field, "/field", {"type", "d"}, {"type"});
    const std::string type = get_string(field["type"], "/field/type");
    if (type == "rational") {
        if (field.contains("d")) throw error(errc::schema, "/field/d: not allowed for a rational field");
        f.field = CoefficientField::rational();
    } else if (type == "quadratic") {
        if (!field.contains("d")) throw error(errc::schema, "/field/d: missing required key");
        const i64 d = get_int(field["d"], "/field/d");
        if (d <= 1 || !is_square_free(d)) throw error(errc::schema, "/field/d: must be square-free and > 1");
        f.field = CoefficientField::quadratic(d);
    } else {
        throw error(errc::schema, "/field/type: expected \"rational\" or \"quadratic\"");
    }

    const json& eig = j["eigenvalues"];
    if (!eig.is_object()) throw error(errc::schema, "/eigenvalues: expected object");
    for (const auto& [key, value] : eig.items()) {
        const std::string path = "/eigenvalues/" + key;
        const i64 p = parse_prime_key(key, path);
        if (!is_prime(p)) throw error(errc::schema, path + ": key is not prime");
        if (f.level % p == 0) throw error(errc::schema, path + ": prime divides the level");
        require_keys(value, path, {"x", "y"}, {"x"});
        const i64 x = get_int(value["x"], path + "/x");
        const i64 y = value.contains("y") ? get_int(value["y"], path + "/y") : 0;
        if (f.field.is_rational() && y != 0) throw error(errc::schema, path + "/y: must be 0 over a rational field");
        f.eigenvalues.emplace(p, QuadInt(x, y, f.field));
    }

    if (j.contains("claimed_conductor_equality")) {
        if (!j["claimed_conductor_equality"].is_boolean())
            throw error(errc::schema, "/claimed_conductor_equality: expected boolean");
        f.conductor_equality = j["claimed_conductor_equality"].get<bool>();
    }
    if (j.contains("notes")) f.notes = get_string(j["notes"], "/notes");

    validate(f);
    for (i64 p : ramanujan_violations(f))
        out.warnings.push_back("warning: a_" + std::to_string(p) + " exceeds the Ramanujan bound; check the data");
    return out;
}

inline LoadedForm load(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw error(errc::schema, std::string("malformed JSON: ") + e.what());
    }
    return form_from_json(j);
}

inline LoadedForm load(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load(in);
}

inline LoadedForm load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::invalid_argument, "cannot open " + path);
    return load(in);
}

inline json to_json(const NewformData& f) {
    json j;
    j["id"] = f.id;
    j["level"] = f.level;
    j["weight"] = f.weight;
    json field;
    if (f.field.is_rational()) {
        field["type"] = "rational";
    } else {
        field["type"] = "quadratic";
        field["d"] = f.field.d();
    }
    j["field"] = field;
    json eig = json::object();
    for (const auto& [p, a] : f.eigenvalues) eig[std::to_string(p)] = json{{"x", a.x()}, {"y", a.y()}};
    j["eigenvalues"] = eig;
    j["claimed_conductor_equality"] = f.conductor_equality;
    j["notes"] = f.notes;
    return j;
}

// =============================================================================
// Expectations
// =============================================================================

inline Expectations expectations_from_json(const json& j) {
    using namespace detail;
    require_keys(j, "", {"version", "rational", "quadratic", "serre_predicates"},
                 {"version", "rational", "quadratic", "serre_predicates"});
    Expectations x;
    x.version = static_cast<int>(get_int(j["version"], "/version"));

    const json& r = j["rational"];
    require_keys(r, "/rational", {"form", "obstruction", "discriminant_fallback", "sample", "trace_test", "closed_form_scan"},
                 {"form", "obstruction", "discriminant_fallback", "sample", "trace_test", "closed_form_scan"});
    auto& er = x.rational;
    er.form_id = get_string(r["form"], "/rational/form");
    const json& ob = r["obstruction"];
    require_keys(ob, "/rational/obstruction", {"prime", "value", "factorization", "exceptional", "alternate_sign_value"},
                 {"prime", "value", "factorization", "exceptional", "alternate_sign_value"});
    er.obstruction_prime = get_int(ob["prime"], "/rational/obstruction/prime");
    er.obstruction_value = get_int(ob["value"], "/rational/obstruction/value");
    for (std::size_t i = 0; i < ob["factorization"].size(); ++i) {
        const auto pair = get_int_array(ob["factorization"][i], "/rational/obstruction/factorization/" + std::to_string(i));
        if (pair.size() != 2) throw error(errc::schema, "/rational/obstruction/factorization: expected [prime, exponent]");
        er.factorization.push_back({pair[0], static_cast<int>(pair[1])});
    }
    er.exceptional = get_int_array(ob["exceptional"], "/rational/obstruction/exceptional");
    er.alternate_sign_value = get_int(ob["alternate_sign_value"], "/rational/obstruction/alternate_sign_value");
    for (const auto& fb : r["discriminant_fallback"]) {
        require_keys(fb, "/rational/discriminant_fallback", {"ell", "prime", "residue"}, {"ell", "prime", "residue"});
        er.discriminant_fallback.push_back({get_int(fb["ell"], "/ell"), get_int(fb["prime"], "/prime"),
                                            get_int(fb["residue"], "/residue")});
    }
    require_keys(r["sample"], "/rational/sample", {"ell_min", "ell_max"}, {"ell_min", "ell_max"});
    er.sample_min = get_int(r["sample"]["ell_min"], "/rational/sample/ell_min");
    er.sample_max = get_int(r["sample"]["ell_max"], "/rational/sample/ell_max");
    require_keys(r["trace_test"], "/rational/trace_test", {"prime", "inconclusive"}, {"prime", "inconclusive"});
    er.trace_prime = get_int(r["trace_test"]["prime"], "/rational/trace_test/prime");
    er.trace_inconclusive = get_int_array(r["trace_test"]["inconclusive"], "/rational/trace_test/inconclusive");
    const json& sc = r["closed_form_scan"];
    require_keys(sc, "/rational/closed_form_scan", {"ell_min", "ell_max", "membership"}, {"ell_min", "ell_max", "membership"});
    er.scan_min = get_int(sc["ell_min"], "/rational/closed_form_scan/ell_min");
    er.scan_max = get_int(sc["ell_max"], "/rational/closed_form_scan/ell_max");
    er.scan_membership = get_int_array(sc["membership"], "/rational/closed_form_scan/membership");

    const json& q = j["quadratic"];
    require_keys(q, "/quadratic", {"form", "ell", "d", "roots", "discriminant", "form_conductor_violation", "conductors"},
                 {"form", "ell", "d", "roots", "discriminant", "form_conductor_violation", "conductors"});
    auto& eq = x.quadratic;
    eq.form_id = get_string(q["form"], "/quadratic/form");
    eq.ell = get_int(q["ell"], "/quadratic/ell");
    eq.d = get_int(q["d"], "/quadratic/d");
    eq.roots = get_int_array(q["roots"], "/quadratic/roots");
    require_keys(q["discriminant"], "/quadratic/discriminant", {"prime", "residue"}, {"prime", "residue"});
    eq.discriminant_prime = get_int(q["discriminant"]["prime"], "/quadratic/discriminant/prime");
    eq.discriminant_residue = get_int(q["discriminant"]["residue"], "/quadratic/discriminant/residue");
    eq.form_conductor_violation = get_violation(q["form_conductor_violation"], "/quadratic/form_conductor_violation");
    for (const auto& c : q["conductors"]) {
        require_keys(c, "/quadratic/conductors", {"conductor", "violation"}, {"conductor", "violation"});
        eq.conductors.push_back({get_int(c["conductor"], "/quadratic/conductors/conductor"),
                                 get_violation(c["violation"], "/quadratic/conductors/violation")});
    }

    for (const auto& s : j["serre_predicates"]) {
        require_keys(s, "/serre_predicates", {"ell", "p_min", "p_max", "result"}, {"ell", "p_min", "p_max", "result"});
        const std::string result = get_string(s["result"], "/serre_predicates/result");
        SerreBound b;
        if (result == "applies") b = SerreBound::applies;
        else if (result == "does_not_apply") b = SerreBound::does_not_apply;
        else if (result == "unknown") b = SerreBound::unknown;
        else throw error(errc::schema, "/serre_predicates/result: unknown value " + result);
        x.serre.push_back({get_int(s["ell"], "/ell"), get_int(s["p_min"], "/p_min"), get_int(s["p_max"], "/p_max"), b});
    }
    return x;
}

// =============================================================================
// Report serialization
// =============================================================================

inline json to_json(const std::vector<PrimePower>& factors) {
    json out = json::array();
    for (const auto& [q, e] : factors) out.push_back(json::array({q, e}));
    return out;
}

inline json to_json(const Certificate& c) {
    json j;
    j["verdict"] = to_string(c.verdict);
    j["method"] = to_string(c.method);
    j["ell"] = c.ell ? json(*c.ell) : json(nullptr);
    json w = std::visit(
        [](const auto& wit) -> json {
            using W = std::decay_t<decltype(wit)>;
            json o;
            if constexpr (std::is_same_v<W, DiscriminantWitness>) {
                o["prime"] = wit.prime;
                o["det_exponent"] = wit.det_exponent;
                o["trace"] = wit.trace;
                o["discriminant"] = wit.discriminant;
                o["legendre"] = wit.symbol;
            } else if constexpr (std::is_same_v<W, ObstructionWitness>) {
                o["prime"] = wit.prime;
                o["weight"] = wit.weight;
                o["eigenvalue"] = wit.eigenvalue;
                o["support_modulus"] = wit.support_modulus;
                o["value"] = wit.value;
                o["factorization"] = wit.factorization ? to_json(wit.factorization->factors) : json(nullptr);
                o["exceptional"] = wit.exceptional;
                o["alternate_sign_value"] = wit.alternate_sign_value;
            } else if constexpr (std::is_same_v<W, TraceWitness>) {
                o["prime"] = wit.prime;
                o["source_trace"] = wit.source_trace;
                o["twist_exponent"] = wit.twist_exponent;
                o["trace"] = wit.trace;
                o["excluded"] = wit.excluded;
                o["extended"] = wit.extended;
            } else {
                o["conductor"] = wit.conductor;
                o["established"] = wit.established;
                o["factorization"] = to_json(wit.factors);
                o["violation"] = wit.violation ? json::array({wit.violation->prime, wit.violation->exponent,
                                                              wit.violation->bound})
                                               : json(nullptr);
            }
            return o;
        },
        c.witness);
    j["witness"] = w;
    json in;
    in["form"] = c.inputs.form_id;
    in["root"] = c.inputs.root ? json(*c.inputs.root) : json(nullptr);
    in["twist_exponent"] = c.inputs.twist_exponent;
    j["inputs"] = in;
    j["check"] = check(c);
    return j;
}

inline json to_json(const EllCertification& e) {
    json j;
    j["ell"] = e.ell;
    j["root"] = e.root ? json(*e.root) : json(nullptr);
    if (e.error) {
        j["error"] = *e.error;
        return j;
    }
    j["det_exponent"] = e.det_exponent;
    j["twist_exponent"] = e.twist_exponent ? json(*e.twist_exponent) : json(nullptr);
    j["irreducible"] = e.irreducible();
    j["non_elliptic"] = e.non_elliptic();
    json irr = json::array();
    for (const auto& c : e.irreducibility) irr.push_back(to_json(c));
    j["irreducibility"] = irr;
    json ne = json::array();
    for (const auto& c : e.non_ellipticity) ne.push_back(to_json(c));
    j["non_ellipticity"] = ne;
    j["notes"] = e.notes;
    return j;
}

inline json to_json(const ScanReport& s) {
    json j;
    j["ell_min"] = s.ell_min;
    j["ell_max"] = s.ell_max;
    j["primes_scanned"] = s.entries.size();
    j["membership"] = s.membership;
    j["fermat_consistent"] = s.fermat_consistent;
    return j;
}

inline json to_json(const PaperReport& r) {
    json j;
    j["all_ok"] = r.all_ok();
    json steps = json::array();
    for (const auto& s : r.steps) {
        json o;
        o["id"] = s.id;
        o["ell"] = s.ell ? json(*s.ell) : json(nullptr);
        o["ok"] = s.ok;
        o["expected"] = s.expected;
        o["observed"] = s.observed;
        json certs = json::array();
        for (const auto& c : s.certificates) certs.push_back(to_json(c));
        o["certificates"] = certs;
        steps.push_back(o);
    }
    j["steps"] = steps;
    j["scan"] = r.scan ? to_json(*r.scan) : json(nullptr);
    return j;
}

inline json to_json(const FalsifyResult& r) {
    json j;
    j["compared"] = r.compared;
    if (r.witness) {
        j["witness"] = json{{"prime", r.witness->prime},
                            {"curve_trace", r.witness->curve_trace},
                            {"representation_trace", r.witness->representation_trace}};
    } else {
        j["witness"] = "no witness found";
    }
    return j;
}

namespace detail {

inline std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
}

inline bool is_flat(const json& v) {
    if (v.is_primitive()) return true;
    if (!v.is_array()) return false;
    return std::all_of(v.begin(), v.end(), [](const json& e) {
        return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const json& x) { return x.is_primitive(); }));
    });
}

inline std::string flat_text(const json& v) {
    if (!v.is_array()) return scalar_text(v);
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += flat_text(v[i]);
    }
    return out + "]";
}

inline void render_text(const json& v, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (const auto& [key, value] : v.items()) {
            if (is_flat(value)) {
                out += pad + key + ": " + flat_text(value) + "\n";
            } else if (value.empty()) {
                out += pad + key + ": {}\n";
            } else {
                out += pad + key + ":\n";
                render_text(value, indent + 2, out);
            }
        }
    } else if (v.is_array()) {
        for (const auto& e : v) {
            if (is_flat(e)) {
                out += pad + "- " + flat_text(e) + "\n";
            } else {
                out += pad + "-\n";
                render_text(e, indent + 2, out);
            }
        }
    } else {
        out += pad + scalar_text(v) + "\n";
    }
}

} // namespace detail

/// Canonical serialization: stable key order, no timestamps. An empty report
/// is "{}" in JSON and the empty string in text.
inline std::string dump_report(const json& report, Format format) {
    if (format == Format::json) return (report.is_null() ? json::object() : report).dump(2) + "\n";
    std::string out;
    if (!report.is_null()) detail::render_text(report, 0, out);
    return out;
}

} // namespace galcert
