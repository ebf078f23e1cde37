// Subcommand implementations. Each returns the process exit code.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "cranesim/simulation_engine.hpp"
#include "scenario_config.hpp"

namespace cranesim::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kRunAborted = 2,
  kOracleDisagreement = 3,
  kNotAllStable = 4,
};

/// Verbosity from CRANESIM_LOG: "quiet"/"0", "info"/"1" (default), "debug"/"2".
int log_level();

struct SimulateOptions {
  std::filesystem::path config;
  std::filesystem::path out = "runs/latest";
};

struct VerifyOptions {
  std::size_t states = 100;
  std::uint64_t seed = 7;
  double tolerance = 1e-6;
  std::filesystem::path out = ".";
  std::optional<std::string> mutate;
};

struct StabilityOptions {
  std::optional<std::filesystem::path> config;  // crane + gains; defaults otherwise
  std::string grid = "beta=0.05:1.5:51,d=0.5:20:51";
  bool open_loop = false;  // zero swing-feedback gains (K_ud = K_up = 0)
  std::filesystem::path out = ".";
};

int simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int stability(const StabilityOptions& opts, std::ostream& out, std::ostream& err);

/// metric,value rows; unsettled coordinates are written as "not_settled".
void write_metrics_csv(std::ostream& os, const sim::RunMetrics& m);
sim::RunMetrics read_metrics_csv(std::istream& is);

/// One CSV per plotted quantity under `dir`.
void write_plot_series(const std::filesystem::path& dir, const sim::TrajectoryLog& log,
                       const control::Reference& ref);

}  // namespace cranesim::cli
