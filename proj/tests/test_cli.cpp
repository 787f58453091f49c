#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

namespace {

struct Outcome {
    int exit_code;
    std::string out;
};

Outcome run(const std::string& args) {
    const std::string cmd = std::string(GALCERT_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

} // namespace

TEST(Cli, VerifyPaper) {
    const auto r = run("verify-paper");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(contains(r.out, "all expectations met"));
    EXPECT_TRUE(contains(r.out, "quadratic.conductor_bound"));
}

TEST(Cli, VerifyPaperEllMaxSeven) {
    const auto r = run("verify-paper --ell-max 7");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(contains(r.out, "rational.trace_test ell=7"));
}

TEST(Cli, VerifyPaperJsonIsDeterministic) {
    const auto one = run("verify-paper --format json --workers 1");
    const auto four = run("verify-paper --format json --workers 4");
    EXPECT_EQ(one.exit_code, 0);
    EXPECT_EQ(one.out, four.out);
    EXPECT_EQ(one.out, run("verify-paper --format json").out);
    std::ifstream golden(std::string(GALCERT_GOLDEN_DIR) + "/verify_paper.json", std::ios::binary);
    const std::string expected((std::istreambuf_iterator<char>(golden)), std::istreambuf_iterator<char>());
    EXPECT_EQ(one.out, expected);
}

TEST(Cli, VerifyPaperTamperedExitsOne) {
    const auto path = write_temp("galcert_tampered.json", R"({
  "id": "schoen_s4_25", "level": 25, "weight": 4, "field": {"type": "rational"},
  "eigenvalues": {"2": {"x": 2}, "3": {"x": 7}, "7": {"x": 6}, "11": {"x": -43}}
})");
    EXPECT_EQ(run("verify-paper -i " + path).exit_code, 1);
}

TEST(Cli, Certify) {
    const auto ok = run("certify -i schoen_s4_25.json --ell 11");
    EXPECT_EQ(ok.exit_code, 0);
    EXPECT_EQ(run("certify -i s2_512_sqrt2.json --ell 7").exit_code, 0);
    EXPECT_EQ(run("certify -i schoen_s4_25.json --ell 7").exit_code, 2);
    EXPECT_EQ(run("certify -i schoen_s4_25.json --ell 5").exit_code, 1);
    EXPECT_EQ(run("certify -i s2_512_sqrt2.json --ell 11").exit_code, 1);
    EXPECT_EQ(run("certify -i no_such_file.json --ell 11").exit_code, 1);
}

TEST(Cli, CertifyRangeIsWorkerIndependent) {
    const auto a = run("certify -i schoen_s4_25 --ell-min 11 --ell-max 200 --format json --workers 1");
    const auto b = run("certify -i schoen_s4_25 --ell-min 11 --ell-max 200 --format json --workers 6");
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Scan) {
    const auto r = run("scan 7 10000 --format json");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(contains(r.out, "\"membership\": [\n    7\n  ]"));
    EXPECT_EQ(run("scan 11 97").exit_code, 0);
    EXPECT_EQ(run("scan 3 5").exit_code, 1);
}

TEST(Cli, Oracle) {
    const auto r = run("oracle 2 --format json");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(contains(r.out, "-2"));
    EXPECT_EQ(run("oracle 53").exit_code, 1);
}

TEST(Cli, Falsify) {
    const auto r = run("falsify --curve 0,0,1,0,0 -i schoen_s4_25.json --ell 11 --format json");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(contains(r.out, "\"representation_trace\": 5"));
    EXPECT_EQ(run("falsify --curve 0,0,0,0,0 -i schoen_s4_25.json --ell 11").exit_code, 1);
    EXPECT_EQ(run("falsify --curve 0,0,1,0 -i schoen_s4_25.json --ell 11").exit_code, 1);
}
