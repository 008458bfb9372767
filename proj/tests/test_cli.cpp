#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
    int status;
    std::string out;
};

Result run(const std::string& args) {
    std::string cmd = std::string(BPU_SSEQ_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t k = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), k);
    int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

} // namespace

TEST(Cli, ComputeJsonContainsDegreeThree) {
    auto r = run("compute --p 3 --n 6 --format json");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("{\"degree\":3,\"p_primary\":\"Z/3\""), std::string::npos);
}

TEST(Cli, TheoremZeroTable) {
    auto r = run("verify-theorem --p 3 --n 4");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, InvalidPrime) {
    auto r = run("compute --p 2 --n 4");
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find("p must be an odd prime"), std::string::npos);
    EXPECT_EQ(run("compute --p 9 --n 4").status, 2);
}

TEST(Cli, InvalidWindowAndArgs) {
    EXPECT_EQ(run("compute --p 3 --n 4 --t-max 16").status, 2);
    EXPECT_EQ(run("compute --p 3 --n 4 --t-max 7").status, 2);
    EXPECT_EQ(run("compute --p 3 --n 0").status, 2);
    EXPECT_EQ(run("compute --p 3").status, 2);
    EXPECT_EQ(run("compute --p 3 --n 3 --format xml").status, 2);
    EXPECT_EQ(run("frobnicate --p 3 --n 3").status, 2);
}

TEST(Cli, AxiomOffLeavesUnresolved) {
    auto r = run("verify-theorem --p 3 --n 3 --no-vistoli");
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.out.find("has-unresolved-differentials"), std::string::npos);
    EXPECT_EQ(run("compute --p 3 --n 3 --no-vistoli").status, 1);
}

TEST(Cli, VerificationCommands) {
    EXPECT_EQ(run("verify-lemma-cbar --p 5 --n 10").status, 0);
    EXPECT_EQ(run("verify-lemma-cbar --p 3 --n 4 --t 1").status, 1);
    EXPECT_EQ(run("verify-witnesses --p 7 --n 7").status, 0);
    EXPECT_EQ(run("verify-witnesses --p 3 --n 4").status, 1);
    EXPECT_EQ(run("verify-props --p 3 --n 9").status, 0);
    EXPECT_EQ(run("verify-theorem --p 5 --n 10 --format json").status, 0);
}

TEST(Cli, ChartText) {
    auto r = run("chart --p 3 --n 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("E_inf"), std::string::npos);
    EXPECT_NE(r.out.find("d_3:"), std::string::npos);
    EXPECT_EQ(run("chart --p 3 --n 2 --sequence K").status, 0);
}
