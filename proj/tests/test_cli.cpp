#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "polynomial.hpp"

using namespace radial_jet;
using namespace radial_jet::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "radial_jet_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(PolynomialParserTest, ParsesTermsAndInfersShape) {
  const auto p = parse_polynomial("1 + z1*z2 - 3/4*z2^2");
  EXPECT_EQ(p.variables, 2);
  EXPECT_EQ(p.degree(), 2);
  const auto jet = to_jet(p, 2, 2);
  EXPECT_EQ(jet.coefficient(MultiIndex{0, 0}), 1);
  EXPECT_EQ(jet.coefficient(MultiIndex{1, 1}), 1);
  EXPECT_EQ(jet.coefficient(MultiIndex{0, 2}), Rational(-3, 4));
}

TEST(PolynomialParserTest, ExpandsPowersAndParentheses) {
  const auto p = parse_polynomial("(1+z1)^3 - z1^3");
  const auto jet = to_jet(p, 1, 3);
  EXPECT_EQ(jet.coefficient(MultiIndex{1}), 3);
  EXPECT_EQ(jet.coefficient(MultiIndex{2}), 3);
  EXPECT_EQ(jet.coefficient(MultiIndex{3}), 0);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(to_jet(parse_polynomial("-z3/2 + 0.25"), 3, 1).coefficient(MultiIndex{0, 0, 1}), Rational(-1, 2));
  EXPECT_EQ(to_jet(parse_polynomial("1e-1*z1"), 1, 1).coefficient(MultiIndex{1}), Rational(1, 10));
  EXPECT_TRUE(parse_polynomial("z1 - z1").terms.empty());
}

TEST(PolynomialParserTest, RejectsMalformedInput) {
  for (const char* bad : {"", "1 +", "2z1", "z0", "z1/z2", "(1+z1", "z1^-1", "z1^1.5", "x1", "1/0"})
    EXPECT_THROW(parse_polynomial(bad), PolynomialSyntaxError) << bad;
  EXPECT_THROW(to_jet(parse_polynomial("z3"), 2, 1), ShapeError);
}

TEST(CliCoeffsTest, TablesAndExitCodes) {
  const auto r = invoke({"coeffs", "--m", "3", "--t", "1/2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["rho"].size(), 3u);
  EXPECT_EQ(doc["t"], "1/2");
  EXPECT_EQ(doc["c"][0][0], "1/1");
  EXPECT_TRUE(doc["paths_agreed"].get<bool>());

  const auto one = nlohmann::json::parse(invoke({"coeffs", "--m", "1"}).out);
  EXPECT_EQ(one["a"], nlohmann::json::array({"1/1"}));
  EXPECT_FALSE(one.contains("rho"));

  EXPECT_EQ(invoke({"coeffs", "--m", "0"}).code, kParameterError);
  EXPECT_EQ(invoke({"coeffs", "--m", "2", "--t", "1/0"}).code, kParameterError);

  const auto fdb = nlohmann::json::parse(invoke({"coeffs", "--nu", "4"}).out);
  EXPECT_EQ(fdb["bell"], 15);
  EXPECT_EQ(fdb["entries"][0]["alpha"], nlohmann::json::array({4, 0, 0, 0}));
}

TEST(CliVerifyTest, ReportsOneLinePerTrial) {
  const auto r = invoke({"verify", "--id", "eq1.3", "--n", "2", "--m", "3", "--D", "6", "--t", "1/2", "--trials", "20",
                         "--seed", "1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 20u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto doc = nlohmann::json::parse(rows[i]);
    EXPECT_EQ(doc["residual"], "0");
    EXPECT_TRUE(doc["pass"].get<bool>());
    EXPECT_EQ(doc["seed"], 1 + i);
    EXPECT_EQ(doc["t"], "1/2");
  }
  EXPECT_NE(r.err.find("20 passed"), std::string::npos);
}

TEST(CliVerifyTest, EmptyRunAndReplay) {
  const auto empty = invoke({"verify", "--id", "eq1.4", "--trials", "0"});
  EXPECT_EQ(empty.code, kOk);
  EXPECT_TRUE(empty.out.empty());

  const std::vector<std::string> args{"verify", "--id", "eq3.4", "--m", "3", "--D", "5", "--trials", "6", "--seed", "9"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(CliVerifyTest, FloatRegimeAndErrors) {
  const auto r = invoke({"verify", "--id", "power", "--regime", "float", "--t", "0.3", "--trials", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("\"regime\":\"float\""), std::string::npos);
  EXPECT_EQ(invoke({"verify", "--id", "eq9.9"}).code, kParameterError);
  EXPECT_EQ(invoke({"verify", "--m", "0", "--trials", "1"}).code, kParameterError);
  EXPECT_EQ(invoke({"verify", "--regime", "fuzzy"}).code, kParameterError);
  EXPECT_EQ(invoke({"verify", "--id", "eq3.6", "--regime", "float", "--trials", "1"}).code, kParameterError);
}

TEST(CliVerifyTest, ZeroToleranceCanFailFloatTrials) {
  const auto r = invoke({"verify", "--id", "eq1.3", "--regime", "float", "--tol", "0", "--trials", "10", "--D", "6"});
  EXPECT_EQ(r.code, kTrialFailed);
  EXPECT_NE(r.out.find("\"pass\":false"), std::string::npos);
}

TEST(CliVerifyTest, OutFileIsWrittenWhole) {
  const auto path = scratch("verify.jsonl");
  std::filesystem::remove(path);
  const auto r = invoke({"verify", "--trials", "4", "--out", path.string()});
  ASSERT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream file(path);
  std::stringstream content;
  content << file.rdbuf();
  EXPECT_EQ(lines(content.str()).size(), 4u);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));

  const auto bad = scratch("bad.jsonl");
  std::filesystem::remove(bad);
  EXPECT_EQ(invoke({"verify", "--m", "0", "--trials", "1", "--out", bad.string()}).code, kParameterError);
  EXPECT_FALSE(std::filesystem::exists(bad));
}

TEST(CliNormsTest, NormsAndDiagnostics) {
  const auto da = invoke({"norms", "--space", "da", "--h", "1+z1"});
  ASSERT_EQ(da.code, kOk) << da.err;
  EXPECT_EQ(da.out, "2.0\n");

  const auto hms = nlohmann::json::parse(
      invoke({"norms", "--space", "hms", "--h", "z1", "--n", "2", "--m", "1", "--s", "0", "--format", "json"}).out);
  EXPECT_EQ(hms["exact"], "1/3");
  EXPECT_NEAR(hms["norm_sq"].get<double>(), 1.0 / 3.0, 1e-15);

  EXPECT_EQ(invoke({"norms", "--space", "da", "--f", "3", "--quantity", "compression", "--D", "3"}).out, "3.0\n");
  const auto bound = invoke({"norms", "--quantity", "bound", "--f", "1+0.3*z1", "--h", "z2", "--m", "1", "--t", "1/2"});
  ASSERT_EQ(bound.code, kOk) << bound.err;
  EXPECT_TRUE(nlohmann::json::parse(bound.out)["pass"].get<bool>());
}

TEST(CliNormsTest, ParameterErrors) {
  EXPECT_EQ(invoke({"norms", "--space", "da"}).code, kParameterError);
  EXPECT_EQ(invoke({"norms", "--h", "1+"}).code, kParameterError);
  EXPECT_EQ(invoke({"norms", "--h", "z2", "--n", "1"}).code, kParameterError);
  EXPECT_EQ(invoke({"norms", "--h", "z1", "--s", "-2"}).code, kParameterError);
  EXPECT_EQ(invoke({"norms", "--quantity", "bound", "--f", "z1", "--h", "1"}).code, kParameterError);
}

TEST(CliScanTest, RowsAndExitCodes) {
  const auto r = invoke({"scan", "--n", "2", "--m0", "1", "--k0", "0", "--Dmax", "40"});
  ASSERT_EQ(r.code, kOk);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 41u);
  EXPECT_EQ(rows[0], "degree,ratio");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = std::stod(rows[i].substr(rows[i].find(',') + 1));
    EXPECT_GE(ratio, 0.4);
    EXPECT_LE(ratio, 3.1);
  }
  EXPECT_EQ(invoke({"scan", "--n", "2", "--m0", "1", "--k0", "1"}).code, kParameterError);
  const auto json = nlohmann::json::parse(invoke({"scan", "--Dmax", "5", "--format", "json"}).out);
  EXPECT_EQ(json["rows"].size(), 5u);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kParameterError);
  EXPECT_EQ(invoke({"frobnicate"}).code, kParameterError);
  EXPECT_EQ(invoke({"coeffs", "--m", "two"}).code, kParameterError);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
}
