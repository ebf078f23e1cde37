#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string_view>

#include "cranesim/csv.hpp"
#include "cranesim/lagrangian_oracle.hpp"
#include "cranesim/stability_analysis.hpp"

namespace cranesim::cli {
namespace {

namespace fs = std::filesystem;

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

const char* const kSettlingNames[] = {"settling_time_alpha", "settling_time_beta",
                                      "settling_time_d"};

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

}  // namespace

int log_level() {
  const char* env = std::getenv("CRANESIM_LOG");
  if (!env) return 1;
  const std::string_view v(env);
  if (v == "quiet" || v == "0") return 0;
  if (v == "debug" || v == "2") return 2;
  return 1;
}

void write_metrics_csv(std::ostream& os, const sim::RunMetrics& m) {
  csv::Writer w(os);
  w.header({"metric", "value"});
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& st = m.settling_time[i];
    w.row(std::string(kSettlingNames[i]), st ? csv::format_double(*st) : std::string("not_settled"));
  }
  w.row(std::string("peak_theta1_deg"), m.peak_theta1_deg);
  w.row(std::string("peak_theta2_deg"), m.peak_theta2_deg);
  w.row(std::string("peak_u1"), m.peak_u[0]);
  w.row(std::string("peak_u2"), m.peak_u[1]);
  w.row(std::string("peak_u3"), m.peak_u[2]);
  w.row(std::string("residual_swing_deg"), m.residual_swing_deg);
}

sim::RunMetrics read_metrics_csv(std::istream& is) {
  const csv::Table t = csv::parse(is);
  const std::size_t name_col = t.column("metric");
  const std::size_t value_col = t.column("value");
  auto value = [&](std::string_view name) -> const std::string& {
    for (const auto& row : t.rows) {
      if (row[name_col] == name) return row[value_col];
    }
    throw std::runtime_error("metrics CSV lacks " + std::string(name));
  };
  sim::RunMetrics m;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string& v = value(kSettlingNames[i]);
    if (v != "not_settled") m.settling_time[i] = std::stod(v);
  }
  m.peak_theta1_deg = std::stod(value("peak_theta1_deg"));
  m.peak_theta2_deg = std::stod(value("peak_theta2_deg"));
  m.peak_u << std::stod(value("peak_u1")), std::stod(value("peak_u2")),
      std::stod(value("peak_u3"));
  m.residual_swing_deg = std::stod(value("residual_swing_deg"));
  return m;
}

void write_plot_series(const fs::path& dir, const sim::TrajectoryLog& log,
                       const control::Reference& ref) {
  fs::create_directories(dir);
  const char* const actuated[] = {"alpha", "beta", "d"};
  for (int i = 0; i < 3; ++i) {
    auto os = open_output(dir / (std::string(actuated[i]) + ".csv"));
    csv::Writer w(os);
    w.header({"t", actuated[i], std::string(actuated[i]) + "_ref"});
    for (const auto& s : log.samples) w.row(s.t, s.state.q[i], ref.q1d[i]);
  }
  const char* const swings[] = {"theta1", "theta2"};
  for (int i = 0; i < 2; ++i) {
    auto os = open_output(dir / (std::string(swings[i]) + ".csv"));
    csv::Writer w(os);
    w.header({"t", std::string(swings[i]) + "_deg"});
    for (const auto& s : log.samples) w.row(s.t, s.state.q[3 + i] * kRadToDeg);
  }
  {
    auto os = open_output(dir / "inputs.csv");
    csv::Writer w(os);
    w.header({"t", "u1", "u2", "u3"});
    for (const auto& s : log.samples) w.row(s.t, s.u_applied[0], s.u_applied[1], s.u_applied[2]);
  }
  {
    auto os = open_output(dir / "wind.csv");
    csv::Writer w(os);
    w.header({"t", "Fw_x", "Fw_y", "Fw_z"});
    for (const auto& s : log.samples) w.row(s.t, s.wind_force[0], s.wind_force[1], s.wind_force[2]);
  }
}

int simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  scenario::ScenarioConfig cfg;
  try {
    cfg = scenario::load_scenario(opts.config);
    cfg.simulation.validate();
  } catch (const scenario::ConfigError& e) {
    err << "invalid config: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const DomainError& e) {
    err << "invalid config: " << e.what() << '\n';
    return kInvalidInput;
  }
  if (log_level() >= 1) {
    for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';
  }

  sim::TrajectoryLog log;
  int code = kOk;
  try {
    const control::SwingDampingController controller(cfg.crane, cfg.gains, cfg.reference);
    log = sim::run(cfg.simulation, sim::state_feedback(controller), cfg.crane);
  } catch (const sim::RunAborted& e) {
    err << e.what() << '\n';
    log = e.log;
    code = kRunAborted;
  } catch (const DomainError& e) {
    err << "invalid config: " << e.what() << '\n';
    return kInvalidInput;
  }

  auto traj = open_output(opts.out / "trajectory.csv");
  log.write_csv(traj);
  if (code != kOk) return code;

  const sim::RunMetrics m = sim::metrics(log, cfg.reference);
  auto metrics_os = open_output(opts.out / "metrics.csv");
  write_metrics_csv(metrics_os, m);
  write_plot_series(opts.out / "plots", log, cfg.reference);

  if (log_level() >= 1) {
    out << "simulated '" << cfg.name << "': " << log.samples.size() << " samples -> "
        << opts.out.string() << '\n';
    write_metrics_csv(out, m);
  }
  return kOk;
}

int verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  std::optional<oracle::ModelMutation> mutation;
  oracle::OracleConfig cfg;
  cfg.tolerance = opts.tolerance;
  try {
    cfg.validate();
    if (opts.states == 0) throw std::invalid_argument("--states must be at least 1");
    if (opts.mutate) mutation = oracle::ModelMutation::parse(*opts.mutate);
  } catch (const std::exception& e) {
    err << "invalid arguments: " << e.what() << '\n';
    return kInvalidInput;
  }

  oracle::VerificationResult result;
  try {
    result = oracle::run_verification(CraneParameters{}, cfg, opts.states, opts.seed, mutation);
  } catch (const oracle::NonConvergence& e) {
    err << e.what() << '\n';
    return kOracleDisagreement;
  }

  auto os = open_output(opts.out / "term_diff_report.csv");
  result.report.write_csv(os);

  const auto bad_rows = result.report.rows_exceeding(cfg.tolerance);
  if (log_level() >= 1) {
    out << "states=" << opts.states << " seed=" << opts.seed
        << " max_acceleration_rel_dev=" << csv::format_double(result.max_acceleration_rel_dev)
        << " max_row_rel_diff=" << csv::format_double(result.report.max_rel_diff()) << '\n';
    for (int row = 0; row < 5; ++row) {
      out << "  row " << row << ": max_rel_diff="
          << csv::format_double(result.report.max_rel_diff(row)) << '\n';
    }
  }
  if (!result.passed) {
    err << "oracle disagreement in rows:";
    for (int r : bad_rows) err << ' ' << r;
    err << '\n';
    return kOracleDisagreement;
  }
  return kOk;
}

int stability(const StabilityOptions& opts, std::ostream& out, std::ostream& err) {
  stability::GridSpec grid;
  CraneParameters crane;
  control::ControllerGains gains;
  try {
    grid = stability::GridSpec::parse(opts.grid);
  } catch (const std::invalid_argument& e) {
    err << "invalid grid: " << e.what() << '\n';
    return kInvalidInput;
  }
  if (opts.config) {
    try {
      const auto cfg = scenario::load_scenario(*opts.config);
      crane = cfg.crane;
      gains = cfg.gains;
    } catch (const scenario::ConfigError& e) {
      err << "invalid config: " << e.what() << '\n';
      return kInvalidInput;
    }
  }

  if (opts.open_loop) {
    gains.k_ud.setZero();
    gains.k_up.setZero();
  }

  const auto map = stability::stability_map(crane, gains, grid);
  auto os = open_output(opts.out / "stability_map.csv");
  stability::write_stability_csv(os, map);

  std::size_t stable = 0;
  for (const auto& pt : map) stable += pt.result.verdict == stability::Verdict::kStable;
  if (log_level() >= 1) {
    out << stable << "/" << map.size() << " grid points stable -> "
        << (opts.out / "stability_map.csv").string() << '\n';
  }
  return stable == map.size() ? kOk : kNotAllStable;
}

}  // namespace cranesim::cli
