#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <sstream>

#include "minkowski/io.hpp"

using namespace minkowski;

namespace {

CoefficientTable random_table(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  CoefficientTable t;
  t.tol = 1e-10;
  for (int i = 0; i <= n; ++i) {
    CoefficientEntry e;
    e.n = i;
    e.d = i == 0 ? 1.0 : u(rng) * std::pow(10.0, -static_cast<int>(rng() % 12));
    e.err = i == 0 ? 0.0 : std::abs(u(rng)) * 1e-12;
    t.entries.push_back(e);
  }
  return t;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Format, Seventeen) {
  EXPECT_EQ(fmt17(0.5), "0.5");
  EXPECT_EQ(fmt17(1.0 / 3), "0.33333333333333331");
  EXPECT_EQ(parse_format("json"), OutputFormat::json);
  EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(Coefficients, CsvRoundTripBitExact) {
  const auto t = random_table(300, 1);
  std::stringstream ss;
  write_coefficients(ss, t, OutputFormat::csv);
  const auto back = read_coefficients(ss);
  ASSERT_EQ(back.max_n(), t.max_n());
  EXPECT_EQ(back.tol, t.tol);
  for (long n = 0; n <= t.max_n(); ++n) {
    EXPECT_TRUE(bit_equal(back.d(n), t.d(n))) << n;
    EXPECT_TRUE(bit_equal(back.entries[n].err, t.entries[n].err)) << n;
  }
}

TEST(Coefficients, JsonRoundTripBitExact) {
  const auto t = random_table(300, 2);
  std::stringstream ss;
  write_coefficients(ss, t, OutputFormat::json);
  const auto back = read_coefficients(ss);
  ASSERT_EQ(back.max_n(), t.max_n());
  for (long n = 0; n <= t.max_n(); ++n) EXPECT_TRUE(bit_equal(back.d(n), t.d(n))) << n;
}

TEST(Coefficients, CsvLayout) {
  const auto t = random_table(3, 3);
  std::stringstream ss;
  write_coefficients(ss, t, OutputFormat::csv);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, std::string("# version: ") + library_version);
  std::vector<std::string> lines;
  while (std::getline(ss, line)) lines.push_back(line);
  const auto it = std::find(lines.begin(), lines.end(), "n,d_n,err");
  ASSERT_NE(it, lines.end());
  EXPECT_EQ(*(it + 1), "0,1,0");
}

TEST(Coefficients, RejectsMalformed) {
  std::stringstream a("n,value\n0,1\n");
  EXPECT_THROW(read_coefficients(a), std::runtime_error);
  std::stringstream b("n,d_n,err\n0,1,0\n2,0.5,0\n");
  EXPECT_THROW(read_coefficients(b), std::runtime_error);
}

TEST(Reports, JsonCarriesBoundAndDiagnostics) {
  ResidualReport r;
  r.identity = "demo";
  r.parameters = {{"s", 2.5}};
  r.lhs = {1, 2};
  r.rhs = {1, 2.5};
  r.residual = 0.5;
  r.quadrature_error = 0.25;
  r.truncation = {"X", 100, 0.5};
  r.diagnostics = {{"k", 3}};
  const auto j = to_json(r);
  EXPECT_EQ(j["identity"], "demo");
  EXPECT_EQ(j["parameters"]["s"], 2.5);
  EXPECT_EQ(j["bound"], 0.75);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["truncation"]["parameter"], "X");
  EXPECT_EQ(j["diagnostics"]["k"], 3.0);
  const auto row = summary_row(r);
  EXPECT_EQ(row["parameters"], "s=2.5");
}

TEST(Reports, TableHeaderInBothFormats) {
  std::stringstream c, j;
  write_table(c, OutputFormat::csv, {{"command", "x"}}, {{{"a", 1}, {"b", "p,q"}}});
  write_table(j, OutputFormat::json, {{"command", "x"}}, {{{"a", 1}, {"b", "p,q"}}});
  EXPECT_EQ(c.str(), std::string("# version: ") + library_version + "\n# command: x\na,b\n1,\"p,q\"\n");
  EXPECT_EQ(j.str(), std::string("{\"header\":{\"version\":\"") + library_version +
                         "\",\"command\":\"x\"}}\n{\"a\":1,\"b\":\"p,q\"}\n");
}
