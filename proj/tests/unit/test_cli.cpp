#include "cli/cli.hpp"
#include "cli/report.hpp"

#include <poincare/error.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using poincare::cli::Json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = poincare::cli::run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("poincare_cli_test_" + name);
}

}  // namespace

TEST(Cli, ListDomains) {
  const CliRun r = run({"list-domains"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  std::vector<std::string> names;
  for (const auto& d : j) {
    names.push_back(d["name"]);
    EXPECT_TRUE(d.contains("params"));
    EXPECT_GT(d["area"].get<double>(), 0.0);
  }
  EXPECT_NE(std::find(names.begin(), names.end(), "unit_square"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "power_cusp"), names.end());
}

TEST(Cli, EstimateEigen) {
  const CliRun r = run({"estimate", "--domain", "unit_square", "--p", "2", "--method", "eigen", "--h", "0.015625"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["method"], "eigen");
  EXPECT_NEAR(j["constant"].get<double>(), 0.318, 0.02 * 0.318);
  EXPECT_EQ(j["h"].get<double>(), 0.015625);
  for (const char* key : {"method", "p", "h", "constant", "diagnostics"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, FractionalCellSize) {
  EXPECT_DOUBLE_EQ(poincare::cli::parse_cell_size("1/64"), 0.015625);
  EXPECT_DOUBLE_EQ(poincare::cli::parse_cell_size("0.25"), 0.25);
  EXPECT_THROW((void)poincare::cli::parse_cell_size("1/0"), poincare::ValidationError);
  EXPECT_THROW((void)poincare::cli::parse_cell_size("-1"), poincare::ValidationError);
  EXPECT_THROW((void)poincare::cli::parse_cell_size("abc"), poincare::ValidationError);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"estimate", "--domain", "nosuch"}).code, 2);
  EXPECT_EQ(run({"estimate", "--domain", "power_cusp", "--param", "k=0.5", "--h", "1/8"}).code, 2);
  EXPECT_EQ(run({"estimate", "--domain", "unit_square", "--method", "magic"}).code, 2);
  EXPECT_EQ(run({"estimate", "--domain", "unit_square", "--p", "0.5"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "list-domains"}).code, 2);
  EXPECT_EQ(run({"constants"}).code, 2);
  EXPECT_NE(run({"estimate", "--domain", "nosuch"}).err.find("nosuch"), std::string::npos);
}

TEST(Cli, SolverFailureExitsOne) {
  const CliRun r = run({"estimate", "--domain", "two_squares_disjoint", "--h", "1/16"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("multiple zero eigenvalues"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, UnwritableOutputExitsTwo) {
  const CliRun r = run({"--out", "/nonexistent_dir/report.json", "list-domains"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, OutputIsByteStable) {
  const std::vector<std::string> args{"--seed", "3", "estimate", "--domain", "disk", "--method", "rayleigh",
                                      "--h", "1/16", "--iters", "20", "--restarts", "2"};
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, JsonRoundTrips) {
  const CliRun r = run({"constants", "--domain", "unit_square", "--mu", "0.8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(poincare::cli::render_json(Json::parse(r.out)), r.out);
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["eta"].get<double>(), 0.01, 1e-9);
  EXPECT_NEAR(j["C_gamma"].get<double>(), 1.697, 1e-3);
  for (const char* key : {"C_gamma", "eta", "lambda", "M", "z", "alpha", "mu", "n_pairs", "seed"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = temp_file("estimate.json");
  const std::vector<std::string> base{"estimate", "--domain", "power_cusp", "--h", "1/16"};
  auto with_out = base;
  with_out.insert(with_out.begin(), {"--out", path.string()});
  const CliRun file_run = run(with_out);
  ASSERT_EQ(file_run.code, 0) << file_run.err;
  EXPECT_TRUE(file_run.out.empty());
  std::ifstream in(path);
  const std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(contents, run(base).out);
  std::filesystem::remove(path);
}

TEST(Cli, WitnessCsv) {
  const auto path = temp_file("witness.csv");
  const CliRun r = run({"estimate", "--domain", "unit_square", "--h", "1/4", "--witness", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 25);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"estimate", "--domain", "unit_square", "--method", "constructive", "--witness", path.string()}).code, 2);
}

TEST(Cli, SweepCsv) {
  const CliRun r = run({"sweep", "--family", "power_cusp", "--values", "2,3", "--p", "2", "--method", "eigen", "--h", "1/16"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "param,constant,max_ratio,pass");
  std::string row;
  std::getline(in, row);
  EXPECT_EQ(row.substr(0, 2), "2,");
  const CliRun json = run({"--format", "json", "sweep", "--family", "power_cusp", "--values", "2", "--h", "1/16"});
  ASSERT_EQ(json.code, 0);
  EXPECT_EQ(Json::parse(json.out)["rows"].size(), 1u);
}

TEST(Cli, SweepFailureExitsOneWithPartialReport) {
  const CliRun r = run({"sweep", "--family", "two_squares_disjoint", "--values", "1", "--h", "1/16"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "param,constant,max_ratio,pass\n");
}

TEST(Cli, VerifyPassAndFail) {
  const CliRun pass = run({"verify", "--domain", "unit_square", "--p", "2", "--constant", "auto", "--h", "1/16"});
  ASSERT_EQ(pass.code, 0) << pass.err;
  const Json j = Json::parse(pass.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["constant_source"], "eigen");
  EXPECT_GE(j["functions"].size(), 30u);
  EXPECT_EQ(run({"verify", "--domain", "unit_square", "--constant", "0.01", "--h", "1/16"}).code, 1);
  EXPECT_EQ(run({"verify", "--domain", "unit_square", "--suite", "other"}).code, 2);
}

TEST(Cli, ConicCheck) {
  const CliRun r = run({"constants", "--check", "conic", "--samples", "5000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  for (const char* key : {"distance_error_max", "roundtrip_error_max", "lipschitz_ratio_spread"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(run({"constants", "--check", "other"}).code, 2);
}

TEST(Cli, DemoNeck) {
  const CliRun r = run({"demo-neck", "--family", "unit_square", "--h", "1/8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["slope"].get<double>(), 0.0, 0.05);
  EXPECT_TRUE(j["growth_factors"].is_array());
}

TEST(Report, Rounding) {
  EXPECT_EQ(poincare::cli::round12(0.1 + 0.2), 0.3);
  EXPECT_EQ(poincare::cli::format12(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(poincare::cli::render_json(Json{{"a", 1.0 / 3.0}, {"b", INFINITY}}),
            "{\n  \"a\": 0.333333333333,\n  \"b\": null\n}\n");
}
