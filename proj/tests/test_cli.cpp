#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
};

Run qmlab(const std::string& args) {
  const std::string cmd = std::string(QMLAB_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) { return ::testing::TempDir() + "qmlab_" + name; }

}  // namespace

TEST(Cli, QmEval) {
  const auto r = qmlab("qm eval 0.5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.5\n");
  EXPECT_EQ(qmlab("qm eval 0.3333333333333333").out, "0.25\n");
}

TEST(Cli, QmInverseAndCf) {
  EXPECT_EQ(qmlab("qm inverse 0.25").out, "0.33333333333333331\n");
  EXPECT_EQ(qmlab("qm cf 0.5").out, "[0; 2]\n");
}

TEST(Cli, CoeffsFirstRow) {
  const auto r = qmlab("coeffs --max-n 8");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("# version:"), std::string::npos);
  const auto pos = r.out.find("n,d_n,err\n");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_EQ(r.out.substr(pos + 10, 6), "0,1,0\n");
}

TEST(Cli, ReproducibleOutput) {
  const auto a = qmlab("coeffs --max-n 12 --threads 1"), b = qmlab("coeffs --max-n 12 --threads 1");
  EXPECT_EQ(a.out, b.out);
  const auto c = qmlab("coeffs --max-n 12 --threads 2");
  EXPECT_EQ(a.out.substr(a.out.find("n,d_n")), c.out.substr(c.out.find("n,d_n")));
}

TEST(Cli, OutFileAndJson) {
  const auto path = tmp_path("bessel.json");
  const auto r = qmlab("verify bessel --x 1 --s 1 --eta 0.1 --out " + path + " --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("PASS bessel_identity", 0), 0u);
  const auto body = slurp(path);
  EXPECT_EQ(body.rfind("{\"header\":{\"version\":", 0), 0u);
  EXPECT_NE(body.find("\"identity\":\"bessel_identity\""), std::string::npos);
}

TEST(Cli, VerifySymmetryAndTransform) {
  EXPECT_EQ(qmlab("verify symmetry --t 5").code, 0);
  const auto t = qmlab("transform --t 0,6.283185307179586");
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("-0.36987418271425"), std::string::npos);
}

TEST(Cli, CoefficientFileFeedsVerify) {
  const auto path = tmp_path("coeffs.csv");
  ASSERT_EQ(qmlab("coeffs --max-n 64 --out " + path).code, 0);
  EXPECT_EQ(qmlab("verify fourier --x 0.3333333333333333 --N 64 --coeffs " + path).code, 0);
}

TEST(Cli, OscillatoryAndLemma) {
  const auto p = qmlab("oscillatory p --a 1 --b 100");
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("-0.0164"), std::string::npos);
  EXPECT_EQ(qmlab("lemma scan --a-grid 1 --b-grid 7,-7").code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(qmlab("").code, 2);
  EXPECT_EQ(qmlab("nosuch").code, 2);
  EXPECT_EQ(qmlab("qm eval 2").code, 2);
  EXPECT_EQ(qmlab("verify bessel --x 1 --s 1 --eta 0").code, 2);
  EXPECT_EQ(qmlab("qm eval 0.5 --format xml").code, 2);
  EXPECT_EQ(qmlab("verify fourier --N 64 --coeffs /nonexistent/file.csv").code, 2);
}

TEST(Cli, PrecisionErrorExitCode) {
  EXPECT_EQ(qmlab("appendix scan --windows 20 --samples 64 --precision-bits 64").code, 3);
}

TEST(Cli, SuiteSingleCriterion) {
  const auto r = qmlab("suite --only 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("PASS", 0), 0u);
}
