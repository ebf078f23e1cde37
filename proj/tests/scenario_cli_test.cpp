#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "cranesim/csv.hpp"
#include "scenario_config.hpp"

namespace cranesim::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kScenarioDir = CRANESIM_SCENARIO_DIR;

json load_json(const fs::path& path) {
  std::ifstream is(path);
  return json::parse(is);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / "cranesim_tests" / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  fs::path write_config(const json& doc, const std::string& name = "config.json") const {
    const fs::path path = dir_ / name;
    std::ofstream(path) << doc.dump(2);
    return path;
  }

  json short_scenario(int index, double duration = 5.0) const {
    json doc = load_json(kScenarioDir / ("scenario" + std::to_string(index) + ".json"));
    doc["simulation"]["duration"] = duration;
    return doc;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, ShippedScenariosParse) {
  for (int i = 1; i <= 3; ++i) {
    const auto cfg = scenario::load_scenario(kScenarioDir / ("scenario" + std::to_string(i) + ".json"));
    EXPECT_EQ(cfg.paper_fidelity, "partial");
    EXPECT_EQ(cfg.gains.k_ad, Vec3(100, 100, 150));
    EXPECT_EQ(cfg.simulation.disturbance.has_value(), i != 1);
  }
  const auto s3 = scenario::load_scenario(kScenarioDir / "scenario3.json");
  ASSERT_TRUE(s3.simulation.saturation.has_value());
  EXPECT_EQ((*s3.simulation.saturation)[1], 18200.0);
  EXPECT_TRUE(std::isinf((*s3.simulation.saturation)[0]));
  EXPECT_EQ(s3.simulation.disturbance->gust.mode, wind::DirectionMode::kRadial);
}

TEST_F(CliTest, ConfigRoundTripsThroughJson) {
  const auto cfg = scenario::load_scenario(kScenarioDir / "scenario2.json");
  const auto again = scenario::parse_scenario(scenario::to_json(cfg));
  EXPECT_EQ(again.reference.q1d, cfg.reference.q1d);
  EXPECT_EQ(again.gains.k_ud, cfg.gains.k_ud);
  EXPECT_EQ(again.simulation.disturbance->gust.peak_speed, cfg.simulation.disturbance->gust.peak_speed);
  EXPECT_EQ(again.simulation.initial_state.q, cfg.simulation.initial_state.q);
}

TEST_F(CliTest, SchemaErrorsNameTheField) {
  auto expect_field = [&](json doc, const std::string& field) {
    try {
      scenario::parse_scenario(doc);
      ADD_FAILURE() << "expected ConfigError for " << field;
    } catch (const scenario::ConfigError& e) {
      EXPECT_EQ(e.field(), field) << e.what();
    }
  };
  json doc = short_scenario(1);
  doc["reference"]["d"] = -1;
  expect_field(doc, "reference.d");

  doc = short_scenario(1);
  doc["crane"]["colour"] = "yellow";
  expect_field(doc, "crane.colour");

  doc = short_scenario(1);
  doc["controller"]["k_up"] = {10, 0};
  expect_field(doc, "controller.k_up[1]");

  doc = short_scenario(1);
  doc["schema_version"] = 2;
  expect_field(doc, "schema_version");

  doc = short_scenario(1);
  doc["controller"]["alpha2"] = "cosine";
  expect_field(doc, "controller.alpha2");

  doc = short_scenario(2);
  doc["disturbance"]["gust"]["direction"] = "up";
  expect_field(doc, "disturbance.gust.direction");
}

TEST_F(CliTest, GustOutsideEnvelopeWarns) {
  json doc = short_scenario(2);
  doc["disturbance"]["gust"]["peak_speed"] = 25.0;
  EXPECT_EQ(scenario::parse_scenario(doc).warnings.size(), 1u);
}

TEST_F(CliTest, SimulateWritesArtifacts) {
  const auto cfg = write_config(short_scenario(1));
  ASSERT_EQ(simulate({cfg, dir_ / "run"}, out_, err_), kOk) << err_.str();
  for (const char* f : {"trajectory.csv", "metrics.csv", "plots/alpha.csv", "plots/theta2.csv",
                        "plots/inputs.csv", "plots/wind.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "run" / f)) << f;
  }
  std::ifstream traj(dir_ / "run" / "trajectory.csv");
  const auto table = csv::parse(traj);
  EXPECT_EQ(table.header.size(), 21u);
  EXPECT_EQ(table.header.front(), "t");
  EXPECT_EQ(table.header.back(), "energy");
  EXPECT_EQ(table.rows.size(), 501u);
}

TEST_F(CliTest, InvalidConfigExitsOne) {
  json doc = short_scenario(1);
  doc["reference"]["d"] = -1;
  const auto cfg = write_config(doc);
  EXPECT_EQ(simulate({cfg, dir_ / "run"}, out_, err_), kInvalidInput);
  EXPECT_NE(err_.str().find("reference.d"), std::string::npos) << err_.str();
  EXPECT_EQ(simulate({dir_ / "missing.json", dir_ / "run"}, out_, err_), kInvalidInput);
}

TEST_F(CliTest, AbortedRunExitsTwoAndKeepsTrajectory) {
  json doc = short_scenario(1, 2.0);
  doc["simulation"]["initial_state"]["qdot"] = {0.0, 0.0, 0.0, 10.0, 0.0};
  const auto cfg = write_config(doc);
  EXPECT_EQ(simulate({cfg, dir_ / "run"}, out_, err_), kRunAborted) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "run" / "trajectory.csv"));
}

TEST_F(CliTest, MetricsRecomputeExactlyFromTrajectory) {
  const auto cfg_path = write_config(short_scenario(3, 30.0));
  ASSERT_EQ(simulate({cfg_path, dir_ / "run"}, out_, err_), kOk) << err_.str();
  std::ifstream traj(dir_ / "run" / "trajectory.csv");
  const auto log = sim::TrajectoryLog::read_csv(traj);
  const auto cfg = scenario::load_scenario(cfg_path);
  std::ostringstream recomputed;
  write_metrics_csv(recomputed, sim::metrics(log, cfg.reference));
  std::ifstream emitted_is(dir_ / "run" / "metrics.csv");
  std::stringstream emitted;
  emitted << emitted_is.rdbuf();
  EXPECT_EQ(recomputed.str(), emitted.str());

  emitted.seekg(0);
  const auto m = read_metrics_csv(emitted);
  EXPECT_EQ(m.peak_u[1], 18200.0);
}

TEST_F(CliTest, VerifySucceedsAndIsDeterministic) {
  VerifyOptions opts;
  opts.states = 5;
  opts.out = dir_ / "a";
  EXPECT_EQ(verify(opts, out_, err_), kOk) << err_.str();
  opts.out = dir_ / "b";
  EXPECT_EQ(verify(opts, out_, err_), kOk);
  auto slurp = [](const fs::path& p) {
    std::ifstream is(p);
    return std::string(std::istreambuf_iterator<char>(is), {});
  };
  EXPECT_EQ(slurp(dir_ / "a" / "term_diff_report.csv"), slurp(dir_ / "b" / "term_diff_report.csv"));
}

TEST_F(CliTest, VerifyMutationExitsThreeAndIsolatesRow) {
  VerifyOptions opts;
  opts.states = 10;
  opts.out = dir_;
  opts.mutate = "flip-sign:row=2,term=gravity";
  EXPECT_EQ(verify(opts, out_, err_), kOracleDisagreement);
  EXPECT_NE(err_.str().find("rows: 2\n"), std::string::npos) << err_.str();

  std::ifstream is(dir_ / "term_diff_report.csv");
  const auto table = csv::parse(is);
  const auto rows = table.numeric_column("row_index");
  const auto rel = table.numeric_column("rel_diff");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] != 2.0) EXPECT_LT(rel[i], 1e-6);
  }
}

TEST_F(CliTest, VerifyRejectsBadArguments) {
  VerifyOptions opts;
  opts.out = dir_;
  opts.mutate = "flip-sign:row=9,term=gravity";
  EXPECT_EQ(verify(opts, out_, err_), kInvalidInput);
  opts.mutate.reset();
  opts.tolerance = -1.0;
  EXPECT_EQ(verify(opts, out_, err_), kInvalidInput);
}

TEST_F(CliTest, StabilityExitCodes) {
  StabilityOptions opts;
  opts.out = dir_;
  EXPECT_EQ(stability(opts, out_, err_), kOk);
  opts.open_loop = true;
  EXPECT_EQ(stability(opts, out_, err_), kNotAllStable);
  opts.open_loop = false;
  opts.grid = "beta=0:1:3";
  EXPECT_EQ(stability(opts, out_, err_), kInvalidInput);
}

TEST_F(CliTest, StabilityMapMarksZeroLuffRadialMarginal) {
  StabilityOptions opts;
  opts.out = dir_;
  opts.config = kScenarioDir / "scenario1.json";
  opts.grid = "beta=0:0.5:3,d=1:5:3";
  EXPECT_EQ(stability(opts, out_, err_), kNotAllStable);
  std::ifstream is(dir_ / "stability_map.csv");
  const auto table = csv::parse(is);
  ASSERT_EQ(table.rows.size(), 9u);
  for (const auto& row : table.rows) {
    const bool zero_luff = std::stod(row[table.column("beta")]) == 0.0;
    EXPECT_EQ(row[table.column("radial_block")], zero_luff ? "marginal" : "stable");
  }
}

}  // namespace
}  // namespace cranesim::cli
