#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(LIPFREE_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(LIPFREE_DATA) + "/" + name; }

}  // namespace

TEST(Cli, ValidateExitCodes) {
    EXPECT_EQ(run("validate --space " + data("square.json")).status, 0);
    EXPECT_EQ(run("validate --space " + data("broken.json")).status, 1);
    EXPECT_EQ(run("validate --space " + data("missing.json")).status, 2);
    EXPECT_EQ(run("validate").status, 2);
}

TEST(Cli, FreeNormOfMolecule) {
    auto r = run("freenorm --space " + data("square.json") + " --element " + data("molecule_ab.json"));
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["norm"], "1");
}

TEST(Cli, CertifyReportIsByteIdentical) {
    const std::string args = "certify example1 --N 12 --n 2 --samples 5 --seed 4";
    auto a = run(args);
    auto b = run(args);
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["verified"], true);
    EXPECT_NE(a.out, run("certify example1 --N 12 --n 2 --samples 5 --seed 5").out);
}

TEST(Cli, FloatModeRuns) {
    auto r = run("certify daug-rec --k 6 --stages 6 --mode float");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["parameters"]["mode"], "float");
}

TEST(Cli, ScanCsvHeader) {
    auto r = run("scan-dichotomy --space " + data("square.json") + " --function " + data("f_diag.json") + " --csv");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("eps,slice_molecules,", 0), 0u);
}
