// galcert: certify that mod-ell representations attached to newforms are
// irreducible and do not come from elliptic curves over Q.
//
// Exit codes: 0 proved, 2 inconclusive, 1 error.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "galcert/bundled.hpp"
#include "galcert/data_io.hpp"
#include "galcert/ecoracle.hpp"
#include "galcert/pipeline.hpp"
#include "galcert/scan.hpp"
#include "galcert/verify.hpp"

namespace {

using namespace galcert;

constexpr int exit_proved = 0;
constexpr int exit_error = 1;
constexpr int exit_inconclusive = 2;

LoadedForm resolve_form(const std::string& input) {
    if (std::filesystem::exists(input)) return load_file(input);
    if (auto text = bundled_form_text(std::filesystem::path(input).filename().string())) return load(*text);
    throw error(errc::invalid_argument, "no such file or bundled dataset: " + input);
}

Format parse_format(const std::string& s) { return s == "json" ? Format::json : Format::text; }

std::vector<i64> ell_list(std::optional<i64> ell, std::optional<i64> lo, std::optional<i64> hi) {
    if (ell) {
        if (lo || hi) throw error(errc::invalid_argument, "--ell cannot be combined with --ell-min/--ell-max");
        return {*ell};
    }
    if (!lo || !hi) throw error(errc::invalid_argument, "give --ell or both --ell-min and --ell-max");
    auto primes = primes_in_range(*lo, *hi);
    if (primes.empty()) throw error(errc::invalid_argument, "no primes in the requested range");
    if (primes.front() <= 5) throw error(errc::invalid_argument, "range must exceed 5");
    return primes;
}

WeierstrassCoefficients parse_curve(const std::string& csv) {
    WeierstrassCoefficients a{};
    std::stringstream ss(csv);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= a.size()) throw error(errc::invalid_argument, "curve needs exactly five coefficients a1,a2,a3,a4,a6");
        std::size_t used = 0;
        try {
            a[i] = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw error(errc::invalid_argument, "bad curve coefficient: " + item);
        ++i;
    }
    if (i != a.size()) throw error(errc::invalid_argument, "curve needs exactly five coefficients a1,a2,a3,a4,a6");
    return a;
}

std::string paper_report_text(const PaperReport& r) {
    std::ostringstream os;
    for (const auto& s : r.steps) {
        os << (s.ok ? "[ok]   " : "[FAIL] ") << s.id;
        if (s.ell) os << " ell=" << *s.ell;
        os << ": " << s.observed << "\n";
    }
    os << (r.all_ok() ? "all expectations met" : "expectation mismatch") << "\n";
    return os.str();
}

struct VerifyArgs {
    std::vector<std::string> inputs;
    std::optional<std::string> expectations;
    std::optional<i64> ell_min;
    std::optional<i64> ell_max;
    std::string format = "text";
    unsigned workers = 1;
};

int cmd_verify_paper(const VerifyArgs& a) {
    Expectations x = a.expectations ? [&] {
        std::ifstream in(*a.expectations);
        if (!in) throw error(errc::invalid_argument, "cannot open " + *a.expectations);
        return expectations_from_json(json::parse(in));
    }()
                                    : bundled_expectations();

    std::map<std::string, NewformData> forms;
    forms[x.rational.form_id] = bundled_form(x.rational.form_id);
    forms[x.quadratic.form_id] = bundled_form(x.quadratic.form_id);
    for (const auto& in : a.inputs) {
        auto loaded = resolve_form(in);
        for (const auto& w : loaded.warnings) std::cerr << w << "\n";
        if (!forms.contains(loaded.form.id))
            throw error(errc::invalid_argument, "input id " + loaded.form.id + " does not replace a bundled dataset");
        forms[loaded.form.id] = std::move(loaded.form);
    }

    VerifyOptions options{a.ell_min, a.ell_max, a.workers};
    const auto report = full_paper_verification(forms[x.rational.form_id], forms[x.quadratic.form_id], x, options);
    if (parse_format(a.format) == Format::json) {
        std::cout << dump_report(to_json(report), Format::json);
    } else {
        std::cout << paper_report_text(report);
    }
    if (!report.all_ok()) {
        for (const auto& s : report.steps) {
            if (s.ok) continue;
            std::cerr << "mismatch " << s.id;
            if (s.ell) std::cerr << " ell=" << *s.ell;
            std::cerr << "\n  expected: " << s.expected << "\n  observed: " << s.observed << "\n";
        }
        return exit_error;
    }
    return exit_proved;
}

struct CertifyArgs {
    std::string input;
    std::optional<i64> ell;
    std::optional<i64> ell_min;
    std::optional<i64> ell_max;
    std::vector<i64> witness_primes;
    std::optional<i64> root;
    std::string format = "text";
    unsigned workers = 1;
};

int cmd_certify(const CertifyArgs& a) {
    auto loaded = resolve_form(a.input);
    for (const auto& w : loaded.warnings) std::cerr << w << "\n";
    const auto form = std::make_shared<const NewformData>(std::move(loaded.form));
    const auto ells = ell_list(a.ell, a.ell_min, a.ell_max);

    CertifyOptions options{a.witness_primes, a.root};
    const auto results = certify_range(form, ells, options, a.workers);

    json report;
    report["form"] = form->id;
    report["warnings"] = loaded.warnings;
    json rows = json::array();
    std::vector<i64> proved, inconclusive, failed;
    for (const auto& r : results) {
        rows.push_back(to_json(r));
        if (r.error) {
            failed.push_back(r.ell);
        } else if (r.proved()) {
            proved.push_back(r.ell);
        } else {
            inconclusive.push_back(r.ell);
        }
    }
    report["results"] = rows;
    report["summary"] = json{{"proved", proved}, {"inconclusive", inconclusive}, {"errors", failed}};
    std::cout << dump_report(report, parse_format(a.format));

    for (const auto& r : results)
        if (r.error) std::cerr << "error at ell=" << r.ell << ": " << *r.error << "\n";
    if (!failed.empty()) return exit_error;
    return inconclusive.empty() ? exit_proved : exit_inconclusive;
}

int cmd_scan(i64 lo, i64 hi, const std::string& format, unsigned workers) {
    const auto scan = closed_form_scan(lo, hi, workers);
    std::cout << dump_report(to_json(scan), parse_format(format));
    bool only_seven = std::all_of(scan.membership.begin(), scan.membership.end(), [](i64 ell) { return ell == 7; });
    return only_seven && scan.fermat_consistent ? exit_proved : exit_error;
}

int cmd_oracle(i64 p, const std::string& format, unsigned workers) {
    const auto traces = trace_set(p, std::nullopt, workers);
    const auto hasse = hasse_interval(p);
    json report;
    report["p"] = p;
    report["traces"] = std::vector<i64>(traces.begin(), traces.end());
    report["hasse_interval"] = json::array({*hasse.begin(), *hasse.rbegin()});
    report["complete"] = traces == hasse;
    std::cout << dump_report(report, parse_format(format));
    return exit_proved;
}

struct FalsifyArgs {
    std::string curve;
    std::string input;
    i64 ell = 0;
    std::vector<i64> witness_primes;
    std::optional<i64> root;
    std::string format = "text";
};

int cmd_falsify(const FalsifyArgs& a) {
    const CurveQ curve(parse_curve(a.curve));
    auto loaded = resolve_form(a.input);
    for (const auto& w : loaded.warnings) std::cerr << w << "\n";
    const auto form = std::make_shared<const NewformData>(std::move(loaded.form));
    const ResidualRep twisted = twist_to_det_chi(residual_rep(form, PrimeModulus(a.ell), a.root));
    const auto result = a.witness_primes.empty() ? falsify_curve(curve, twisted)
                                                 : falsify_curve(curve, twisted, a.witness_primes);
    json report;
    report["curve"] = curve.coefficients();
    report["discriminant"] = to_decimal(curve.discriminant());
    report["ell"] = a.ell;
    report["twist_exponent"] = twisted.twist_exponent;
    const json outcome = to_json(result);
    for (const auto& [k, v] : outcome.items()) report[k] = v;
    std::cout << dump_report(report, parse_format(a.format));
    return result.witness ? exit_proved : exit_inconclusive;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certificates for irreducible, non-elliptic mod-ell Galois representations"};
    app.require_subcommand(1);

    auto add_common = [](CLI::App* sub, std::string& format, unsigned& workers) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    };

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify-paper", "Reproduce both bundled constructions against the expectations table");
    verify_cmd->add_option("-i,--input", verify.inputs, "Replacement dataset (matched to a bundled one by id)");
    verify_cmd->add_option("--expectations", verify.expectations, "Expectations table (JSON)");
    verify_cmd->add_option("--ell-min", verify.ell_min, "Smallest sampled ell");
    verify_cmd->add_option("--ell-max", verify.ell_max, "Largest sampled ell");
    add_common(verify_cmd, verify.format, verify.workers);

    CertifyArgs certify;
    auto* certify_cmd = app.add_subcommand("certify", "Certify a form at one ell or a range of ell");
    certify_cmd->add_option("-i,--input", certify.input, "Form record (path or bundled dataset name)")->required();
    certify_cmd->add_option("--ell", certify.ell, "Single prime ell");
    certify_cmd->add_option("--ell-min", certify.ell_min, "Range start");
    certify_cmd->add_option("--ell-max", certify.ell_max, "Range end");
    certify_cmd->add_option("--witness-prime", certify.witness_primes, "Witness primes (default: all available)");
    certify_cmd->add_option("--root", certify.root, "Square root of d mod ell selecting the embedding");
    add_common(certify_cmd, certify.format, certify.workers);

    i64 scan_lo = 0, scan_hi = 0;
    std::string scan_format = "text";
    unsigned scan_workers = 1;
    auto* scan_cmd = app.add_subcommand("scan", "Scan primes for the closed-form obstruction");
    scan_cmd->add_option("ell_min", scan_lo, "Range start (> 5)")->required();
    scan_cmd->add_option("ell_max", scan_hi, "Range end")->required();
    add_common(scan_cmd, scan_format, scan_workers);

    i64 oracle_p = 0;
    std::string oracle_format = "text";
    unsigned oracle_workers = 1;
    auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate Frobenius traces of all curves over F_p");
    oracle_cmd->add_option("p", oracle_p, "Prime p <= 50")->required();
    add_common(oracle_cmd, oracle_format, oracle_workers);

    FalsifyArgs falsify;
    unsigned falsify_workers = 1;
    auto* falsify_cmd = app.add_subcommand("falsify", "Find a prime where a curve over Q disagrees with the representation");
    falsify_cmd->add_option("--curve", falsify.curve, "a1,a2,a3,a4,a6")->required();
    falsify_cmd->add_option("-i,--input", falsify.input, "Form record (path or bundled dataset name)")->required();
    falsify_cmd->add_option("--ell", falsify.ell, "Prime ell")->required();
    falsify_cmd->add_option("--witness-prime", falsify.witness_primes, "Primes to compare (default: all available)");
    falsify_cmd->add_option("--root", falsify.root, "Square root of d mod ell selecting the embedding");
    add_common(falsify_cmd, falsify.format, falsify_workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_error;
    }

    try {
        if (*verify_cmd) return cmd_verify_paper(verify);
        if (*certify_cmd) return cmd_certify(certify);
        if (*scan_cmd) return cmd_scan(scan_lo, scan_hi, scan_format, scan_workers);
        if (*oracle_cmd) return cmd_oracle(oracle_p, oracle_format, oracle_workers);
        if (*falsify_cmd) return cmd_falsify(falsify);
    } catch (const galcert::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
