// Drives the coxfix binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + COXFIX_CLI + "\" " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& f) { return std::string(COXFIX_TEST_DATA) + "/" + f; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, Catalog) {
  const auto r = run("catalog");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("H3"), std::string::npos);
}

TEST(Cli, BasicSuitesPass) {
  for (const std::string args : {"verify bruhat-sphere --group A3", "verify fold-bruhat --group A3 --perm=3,2,1",
                                 "verify rank-formula --group 'I2(9)' --theta id",
                                 "verify twisted-gorenstein --group A3 --theta 3,2,1",
                                 "verify w0-theorem --group D5"}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << args << "\n" << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << args;
    EXPECT_NE(r.out.find("PASS"), std::string::npos) << args;
  }
}

TEST(Cli, MatrixFileGroup) {
  const auto r = run("verify bruhat-sphere --group " + data("a3.txt"));
  EXPECT_EQ(r.code, 0) << r.out;
  const auto aff = run("verify rank-formula --group " + data("affA2.txt") + " -L 6 --top-length 4");
  EXPECT_EQ(aff.code, 0) << aff.out;
}

TEST(Cli, ConfigurationErrorsExitTwo) {
  EXPECT_EQ(run("verify no-such-suite --group A3").code, 2);
  EXPECT_EQ(run("verify bruhat-sphere --group X9").code, 2);
  EXPECT_EQ(run("verify fold-matrix --group A3 --perm=3,1,2").code, 2);  // not a diagram automorphism
  EXPECT_EQ(run("verify lemmas --group A3 --theta 1,1,2").code, 2);
  EXPECT_EQ(run("verify ltheta-dyer --group A3 --theta 3,2,1").code, 2);
  EXPECT_EQ(run("verify fold-matrix --group E6 --perm=6,2,5,4,3,1").code, 2);  // needs --extended
  EXPECT_EQ(run("verify").code, 2);
  const auto bad = run("verify bruhat-sphere --group " + data("bad_diagonal.txt"));
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("line 3"), std::string::npos) << bad.out;
}

TEST(Cli, FoldMatrixExpectation) {
  EXPECT_EQ(run("verify fold-matrix --group A5 --perm=5,4,3,2,1 --expect B3").code, 0);
  EXPECT_EQ(run("verify fold-matrix --group A5 --perm=5,4,3,2,1 --expect A3").code, 1);
}

TEST(Cli, TsvIsDeterministic) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "coxfix_cli_a.tsv", b = dir / "coxfix_cli_b.tsv";
  const std::string args = "verify bruhat-sphere --group A4 --samples 50 --seed 7 -o ";
  ASSERT_EQ(run(args + a.string()).code, 0);
  ASSERT_EQ(run(args + b.string()).code, 0);
  const auto ta = slurp(a);
  EXPECT_EQ(ta, slurp(b));
  EXPECT_EQ(ta.rfind("suite\tgroup\tparams\tcheck-id\tstatus\twitness\n", 0), 0U);
  EXPECT_NE(ta.find("theta=id"), std::string::npos);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
