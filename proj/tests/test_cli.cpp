#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::map<std::string, std::string> kv;
};

CliRun run(const std::string& args) {
  CliRun r;
  std::string cmd = std::string(CHISTAR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) r.out += buf;
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    auto eq = line.find(" = ");
    if (eq != std::string::npos) r.kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("chistar_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out() const { return "--out " + dir_.string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, PsiOneFile) {
  CliRun r = run("psi 1 " + out());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.kv["status"], "PASS");
  EXPECT_EQ(slurp(dir_ / "psi_1.txt"), "tripoly N=1\n1 0 0 : 1\n0 0 1 : -1\n");
  EXPECT_TRUE(fs::exists(dir_ / "psi_1.report"));
}

TEST_F(Cli, VerifyPsiAfterBuild) {
  ASSERT_EQ(run("psi 2 " + out()).code, 0);
  CliRun r = run("verify psi --n 2 " + out());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.kv["status"], "PASS");
  EXPECT_EQ(r.kv["evaluations"], "80");
}

TEST_F(Cli, MissingPolynomialIsBuilt) {
  CliRun r = run("verify chi --n 2 " + out());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "psi_2.txt"));
  EXPECT_EQ(r.kv["g[1 0 / 1 2].fails"], "PASS");
  EXPECT_EQ(r.kv["g[2 0 / 0 1].holds"], "PASS");
}

TEST_F(Cli, EvalJAtI) {
  CliRun r = run("eval --fn j --tau i " + out());
  EXPECT_EQ(r.code, 0);
  std::string v = r.kv["value"];
  ASSERT_FALSE(v.empty());
  double re = std::stod(v.substr(0, v.find(' ')));
  EXPECT_NEAR(re, 1728.0, 1e-9);
  // full digits: the real part is 1728 to far beyond 30 digits
  EXPECT_EQ(v.rfind("1728", 0), 0u);
  EXPECT_EQ(v.find("1727.9"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("nosuchcommand").code, 2);
  EXPECT_EQ(run("eval --fn j").code, 2);
  EXPECT_EQ(run("--prec 10 eval --fn j --tau i").code, 2);
  CliRun bad = run("eval --fn j --tau 1-1i " + out());
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.kv["error"], "DomainError");
  CliRun disc = run("cm --disc 5 " + out());
  EXPECT_EQ(disc.code, 1);
  EXPECT_EQ(disc.kv["error"], "InvalidDiscriminant");
  EXPECT_EQ(run("eval --fn nope --tau i " + out()).kv["error"], "ParseError");
}

TEST_F(Cli, Deterministic) {
  CliRun a = run("psi 2 --seed 3 " + out());
  std::string file_a = slurp(dir_ / "psi_2.txt"), rep_a = slurp(dir_ / "psi_2.report");
  CliRun b = run("psi 2 --seed 3 " + out());
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(file_a, slurp(dir_ / "psi_2.txt"));
  EXPECT_EQ(rep_a, slurp(dir_ / "psi_2.report"));
  CliRun v1 = run("verify laws --samples 4 --seed 9 " + out());
  CliRun v2 = run("verify laws --samples 4 --seed 9 " + out());
  EXPECT_EQ(v1.out, v2.out);
}

TEST_F(Cli, CmReport) {
  CliRun r = run("cm --disc -7 --prec 384 " + out());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.kv["class_number"], "1");
  EXPECT_EQ(r.kv["point[1].level"], "7");
  EXPECT_EQ(r.kv["point[1].masser_agrees"], "PASS");
  EXPECT_EQ(r.kv["chi_star_elementary[1]"], "-1215");
  CliRun pole = run("cm --disc -4 " + out());
  EXPECT_EQ(pole.code, 0);
  EXPECT_EQ(pole.kv["point[1].masser"], "not applicable (FormulaPole)");
}

TEST_F(Cli, Special) {
  CliRun vn = run("special vn --n 2 --samples 3 " + out());
  EXPECT_EQ(vn.code, 0);
  EXPECT_EQ(vn.kv["rank"], "4");
  std::ofstream(dir_ / "double.txt") << "n 2\nrel 1 2 2 0 0 1\n";
  CliRun push = run("special push --chi-only --samples 3 --desc " + (dir_ / "double.txt").string() + " " + out());
  EXPECT_EQ(push.code, 0);
  EXPECT_EQ(push.kv["resultant"], "PASS");
  EXPECT_EQ(push.kv["gut"], "true");
  std::ofstream(dir_ / "bad.txt") << "n 2\nrel 1 2 1 x 0 1\n";
  CliRun bad = run("special push --desc " + (dir_ / "bad.txt").string() + " " + out());
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.kv["error"], "ParseError");
}

TEST_F(Cli, PhiAndDn) {
  CliRun r = run("phi 2 " + out());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.kv["symmetric"], "PASS");
  EXPECT_NE(slurp(dir_ / "phi_2.txt").find("2 1 : 1488"), std::string::npos);
  CliRun dn = run("dn 2 " + out());
  EXPECT_EQ(dn.kv["count"], "3");
}
