#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "galcert/bundled.hpp"
#include "galcert/verify.hpp"

using namespace galcert;

namespace {

PaperReport run(VerifyOptions options = {}, NewformData rational = bundled_form("schoen_s4_25")) {
    return full_paper_verification(rational, bundled_form("s2_512_sqrt2"), bundled_expectations(), options);
}

std::string read_golden(const std::string& name) {
    std::ifstream in(std::string(GALCERT_GOLDEN_DIR) + "/" + name, std::ios::binary);
    EXPECT_TRUE(in) << "missing golden file " << name;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const VerificationStep* find_step(const PaperReport& r, const std::string& id, std::optional<i64> ell = {}) {
    for (const auto& s : r.steps)
        if (s.id == id && (!ell || s.ell == ell)) return &s;
    return nullptr;
}

} // namespace

TEST(Verify, DefaultRunIsGreen) {
    const auto r = run();
    EXPECT_TRUE(r.all_ok());
    ASSERT_TRUE(r.scan);
    EXPECT_EQ(r.scan->membership, (std::vector<i64>{7}));
    for (const auto& s : r.steps) {
        EXPECT_TRUE(s.ok) << s.id << " " << s.observed;
        for (const auto& c : s.certificates) EXPECT_TRUE(check(c)) << s.id;
    }
    ASSERT_NE(find_step(r, "rational.trace_test", 11), nullptr);
    ASSERT_NE(find_step(r, "rational.trace_test", 997), nullptr);
    ASSERT_NE(find_step(r, "quadratic.conductor_bound"), nullptr);
    ASSERT_NE(find_step(r, "serre_predicate"), nullptr);
}

TEST(Verify, SevenIsRecordedInconclusiveNotFailure) {
    const auto r = run(VerifyOptions{std::nullopt, 7, 1});
    EXPECT_TRUE(r.all_ok());
    const auto* s = find_step(r, "rational.trace_test", 7);
    ASSERT_NE(s, nullptr);
    EXPECT_TRUE(s->ok);
    ASSERT_FALSE(s->certificates.empty());
    EXPECT_EQ(s->certificates.front().verdict, Verdict::inconclusive);
}

TEST(Verify, TamperedDatasetMismatches) {
    auto tampered = bundled_form("schoen_s4_25");
    tampered.eigenvalues[2] = QuadInt(2);
    const auto r = run({}, tampered);
    EXPECT_FALSE(r.all_ok());
}

TEST(Verify, TamperedObstructionPrimeMismatches) {
    auto tampered = bundled_form("schoen_s4_25");
    tampered.eigenvalues[11] = QuadInt(43);
    const auto r = run({}, tampered);
    EXPECT_FALSE(r.all_ok());
    const auto* s = find_step(r, "rational.obstruction");
    ASSERT_NE(s, nullptr);
    EXPECT_FALSE(s->ok);
}

TEST(Verify, JsonMatchesGolden) {
    EXPECT_EQ(dump_report(to_json(run()), Format::json), read_golden("verify_paper.json"));
}

TEST(Verify, TextMatchesGolden) {
    EXPECT_EQ(dump_report(to_json(run()), Format::text), read_golden("verify_paper.txt"));
}

TEST(Verify, ByteIdenticalAcrossWorkersAndRuns) {
    const auto reference = dump_report(to_json(run()), Format::json);
    for (unsigned w : {1u, 2u, 3u, 8u}) {
        EXPECT_EQ(dump_report(to_json(run(VerifyOptions{std::nullopt, std::nullopt, w})), Format::json), reference) << w;
    }
}
