#include <gtest/gtest.h>

#include <sstream>

#include "qmflow/errors.hpp"
#include "qmflow/experiment.hpp"

namespace qmflow {
namespace {

ExperimentConfig parse(const char* text) {
  return ExperimentConfig::from_document(KeyValueDocument::parse(text));
}

ExperimentConfig small() {
  return parse("N_list = 1,2\nT = 0.01\nm = 16\nK_per_m = 2\nsamples_per_strip = 1000\n"
               "hofer_space_samples = 32\ncalabi_space_samples = 32\n"
               "hofer_time_samples = 2\ncalabi_time_samples = 2\n");
}

TEST(Experiment, Defaults) {
  const ExperimentConfig c = parse("");
  EXPECT_EQ(c.pattern, "ab");
  EXPECT_EQ(c.N_list, (std::vector<int>{1, 2, 4, 8}));
  EXPECT_DOUBLE_EQ(c.T_for(4), 0.04);
  EXPECT_EQ(c.m_for(4), 64);
  EXPECT_EQ(c.K_for(4), 256);
  EXPECT_EQ(c.output, "-");
}

TEST(Experiment, FixedAndScaledParameters) {
  const ExperimentConfig c = parse("T = 0.001\nm = 10\nK = 30\nN_list = 3\n");
  EXPECT_DOUBLE_EQ(c.T_for(3), 0.001);
  EXPECT_EQ(c.m_for(3), 10);
  EXPECT_EQ(c.K_for(3), 30);
  const BuildParams p = c.build_params(3);
  EXPECT_EQ(p.N, 3);
  EXPECT_EQ(p.m, 10);
}

TEST(Experiment, ConfigErrors) {
  EXPECT_THROW(parse("colour = red\n"), ConfigError);
  EXPECT_THROW(parse("T = 0.1\nT_times_N = 0.1\n"), ConfigError);
  EXPECT_THROW(parse("m = 16\nK = 20\n"), ConfigError);
  EXPECT_THROW(parse("pattern = abc\n"), ConfigError);
  EXPECT_THROW(parse("pattern = aA\n"), ConfigError);
  EXPECT_THROW(parse("N_list = 1,0\n"), ConfigError);
  EXPECT_THROW(parse("samples_per_strip = 10\n"), ConfigError);
  EXPECT_THROW(parse("T = -1\n"), ConfigError);
  EXPECT_THROW(parse("m = 0\n"), ConfigError);
}

TEST(Experiment, EmptyNList) {
  const ExperimentConfig c = parse("N_list =\n");
  EXPECT_TRUE(c.N_list.empty());
  std::ostringstream out;
  write_csv(out, run_sweep(c));
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n");
}

TEST(Experiment, JsonMatchesKeyValue) {
  const ExperimentConfig j = ExperimentConfig::from_json(
      R"({"N_list": [1, 2], "T": 0.01, "m": 16, "K_per_m": 2, "pattern": "abAB", "seed": 7})");
  EXPECT_EQ(j.N_list, (std::vector<int>{1, 2}));
  EXPECT_DOUBLE_EQ(j.T_value, 0.01);
  EXPECT_FALSE(j.T_scales_with_N);
  EXPECT_EQ(j.pattern, "abAB");
  EXPECT_EQ(j.seed, 7u);
  EXPECT_EQ(ExperimentConfig::from_document(j.to_document()).to_document().to_string(),
            j.to_document().to_string());
  EXPECT_THROW(ExperimentConfig::from_json("[1, 2]"), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json("{"), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(R"({"T": true})"), ConfigError);
}

TEST(Experiment, RowContents) {
  const ExperimentConfig c = small();
  const SweepRow r = evaluate_N(c, 2);
  EXPECT_EQ(r.N, 2);
  EXPECT_EQ(r.m, 16);
  EXPECT_DOUBLE_EQ(r.tau, 0.01 / 16);
  EXPECT_DOUBLE_EQ(r.hofer_2Ktau, 6 * r.tau);
  EXPECT_LE(r.hofer_numeric, r.hofer_2Ktau * (1 + 1e-12));
  EXPECT_LE(std::abs(r.calabi), r.hofer_numeric);
  EXPECT_NEAR(r.rho_pred, -2 * r.tau, 1e-15);
  EXPECT_DOUBLE_EQ(r.ratio, std::abs(r.rho_est) / r.hofer_numeric);
  EXPECT_GT(r.bad_area_budget, 0.0);
}

TEST(Experiment, SweepIsByteIdentical) {
  const ExperimentConfig c = small();
  std::ostringstream a, b;
  write_csv(a, run_sweep(c));
  write_csv(b, run_sweep(c));
  EXPECT_EQ(a.str(), b.str());
  std::istringstream lines(a.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, kCsvHeader);
  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11);
  }
  EXPECT_EQ(rows, 2);
}

TEST(Experiment, InfeasibleNPropagates) {
  ExperimentConfig c = small();
  c.T_scales_with_N = false;
  c.T_value = 0.2;
  EXPECT_THROW(evaluate_N(c, 2), std::invalid_argument);
}

TEST(Experiment, ErrorRecordIsJson) {
  EXPECT_EQ(error_record("ConfigError", "bad \"x\""),
            R"({"error":"ConfigError","message":"bad \"x\""})");
}

}  // namespace
}  // namespace qmflow
