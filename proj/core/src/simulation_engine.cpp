#include "cranesim/simulation_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cranesim/crane_dynamics.hpp"
#include "cranesim/csv.hpp"

namespace cranesim::sim {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

struct Derivative {
  Vec5 qdot;
  Vec5 qddot;
};

Derivative rhs(double t, const GeneralizedState& s, const ControlLaw& controller,
               const SimulationConfig& cfg, const CraneParameters& p) {
  const StageInputs in = evaluate_inputs(t, s, controller, cfg, p);
  const Vec5 f_ext = cfg.disturbance ? wind::generalized_force(s, in.wind_force, p) : Vec5::Zero();
  return {s.qdot, dynamics::forward_dynamics(s, in.u_applied, f_ext, p)};
}

GeneralizedState advance(const GeneralizedState& s, const Derivative& k, double h) {
  GeneralizedState out;
  out.q = s.q + h * k.qdot;
  out.qdot = s.qdot + h * k.qddot;
  return out;
}

Sample make_sample(double t, const GeneralizedState& s, const ControlLaw& controller,
                   const SimulationConfig& cfg, const CraneParameters& p) {
  const StageInputs in = evaluate_inputs(t, s, controller, cfg, p);
  return {t, s, in.u_commanded, in.u_applied, in.wind_force, dynamics::total_energy(s, p)};
}

const char* const kColumns[] = {
    "t",        "alpha",     "beta",       "d",          "theta1",     "theta2",     "alpha_dot",
    "beta_dot", "d_dot",     "theta1_dot", "theta2_dot", "u1_cmd",     "u2_cmd",     "u3_cmd",
    "u1_app",   "u2_app",    "u3_app",     "Fw_x",       "Fw_y",       "Fw_z",       "energy"};

}  // namespace

ControlLaw zero_input() {
  return [](double, const GeneralizedState&) { return ActuationInput::Zero().eval(); };
}

ControlLaw state_feedback(control::SwingDampingController controller) {
  return [c = std::move(controller)](double, const GeneralizedState& s) { return c(s); };
}

void SimulationConfig::validate() const {
  if (!(std::isfinite(dt) && dt > 0.0)) throw DomainError("simulation dt must be positive");
  if (!(std::isfinite(duration) && duration >= dt)) {
    throw DomainError("simulation duration must be at least dt");
  }
  if (record_stride < 1) throw DomainError("record_stride must be >= 1");
  if (saturation && !(saturation->array() > 0.0).all()) {
    throw DomainError("saturation bounds must be positive");
  }
  if (disturbance) {
    disturbance->gust.validate();
    disturbance->drag.validate();
  }
  initial_state.validate();
}

long long SimulationConfig::steps() const { return std::llround(duration / dt); }

std::size_t SimulationConfig::expected_samples() const {
  return static_cast<std::size_t>(steps() / record_stride) + 1;
}

ActuationInput saturate(const ActuationInput& u, const std::optional<Vec3>& bounds) {
  if (!bounds) return u;
  return u.cwiseMax(-*bounds).cwiseMin(*bounds);
}

StageInputs evaluate_inputs(double t, const GeneralizedState& s, const ControlLaw& controller,
                            const SimulationConfig& cfg, const CraneParameters&) {
  StageInputs in;
  in.u_commanded = controller(t, s);
  in.u_applied = saturate(in.u_commanded, cfg.saturation);
  if (cfg.disturbance) in.wind_force = cfg.disturbance->force(t, s);
  return in;
}

GeneralizedState step(double t, const GeneralizedState& s, const ControlLaw& controller,
                      const SimulationConfig& cfg, const CraneParameters& p, double dt) {
  const Derivative k1 = rhs(t, s, controller, cfg, p);
  const Derivative k2 = rhs(t + 0.5 * dt, advance(s, k1, 0.5 * dt), controller, cfg, p);
  const Derivative k3 = rhs(t + 0.5 * dt, advance(s, k2, 0.5 * dt), controller, cfg, p);
  const Derivative k4 = rhs(t + dt, advance(s, k3, dt), controller, cfg, p);
  GeneralizedState out;
  out.q = s.q + (dt / 6.0) * (k1.qdot + 2.0 * k2.qdot + 2.0 * k3.qdot + k4.qdot);
  out.qdot = s.qdot + (dt / 6.0) * (k1.qddot + 2.0 * k2.qddot + 2.0 * k3.qddot + k4.qddot);
  return out;
}

TrajectoryLog run(const SimulationConfig& cfg, const ControlLaw& controller,
                  const CraneParameters& p) {
  cfg.validate();
  p.validate();
  const long long n = cfg.steps();
  TrajectoryLog log;
  log.samples.reserve(cfg.expected_samples());

  GeneralizedState s = cfg.initial_state;
  long long k = 0;
  try {
    for (; k <= n; ++k) {
      const double t = static_cast<double>(k) * cfg.dt;
      if (k % cfg.record_stride == 0) log.samples.push_back(make_sample(t, s, controller, cfg, p));
      if (k == n) break;
      s = step(t, s, controller, cfg, p, cfg.dt);
      s.validate();
    }
  } catch (const DomainError& e) {
    const double t = static_cast<double>(k) * cfg.dt;
    std::ostringstream os;
    os << "run aborted near t=" << t << " s: " << e.what();
    throw RunAborted(os.str(), t, std::move(log));
  }
  return log;
}

void TrajectoryLog::write_csv(std::ostream& os) const {
  csv::Writer w(os);
  w.header(std::vector<std::string>(std::begin(kColumns), std::end(kColumns)));
  std::vector<std::string> fields;
  fields.reserve(std::size(kColumns));
  for (const auto& smp : samples) {
    fields.clear();
    fields.push_back(csv::format_double(smp.t));
    for (int i = 0; i < 5; ++i) fields.push_back(csv::format_double(smp.state.q[i]));
    for (int i = 0; i < 5; ++i) fields.push_back(csv::format_double(smp.state.qdot[i]));
    for (int i = 0; i < 3; ++i) fields.push_back(csv::format_double(smp.u_commanded[i]));
    for (int i = 0; i < 3; ++i) fields.push_back(csv::format_double(smp.u_applied[i]));
    for (int i = 0; i < 3; ++i) fields.push_back(csv::format_double(smp.wind_force[i]));
    fields.push_back(csv::format_double(smp.energy));
    w.fields(fields);
  }
}

TrajectoryLog TrajectoryLog::read_csv(std::istream& is) {
  const csv::Table table = csv::parse(is);
  std::vector<std::size_t> idx;
  for (const char* name : kColumns) idx.push_back(table.column(name));
  TrajectoryLog log;
  log.samples.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    auto at = [&](std::size_t c) { return std::stod(row[idx[c]]); };
    Sample smp;
    smp.t = at(0);
    for (int i = 0; i < 5; ++i) smp.state.q[i] = at(1 + i);
    for (int i = 0; i < 5; ++i) smp.state.qdot[i] = at(6 + i);
    for (int i = 0; i < 3; ++i) smp.u_commanded[i] = at(11 + i);
    for (int i = 0; i < 3; ++i) smp.u_applied[i] = at(14 + i);
    for (int i = 0; i < 3; ++i) smp.wind_force[i] = at(17 + i);
    smp.energy = at(20);
    log.samples.push_back(smp);
  }
  return log;
}

RunMetrics metrics(const TrajectoryLog& log, const control::Reference& ref) {
  if (log.samples.empty()) throw std::invalid_argument("metrics need a non-empty log");
  const auto& samples = log.samples;
  RunMetrics m;

  const Vec3 start = samples.front().state.actuated();
  for (int i = 0; i < 3; ++i) {
    const double change = std::abs(ref.q1d[i] - start[i]);
    const double band = change > 0.0 ? kSettlingFraction * change : kZeroChangeBand;
    // First index after the last sample outside the band.
    std::size_t first_inside = 0;
    for (std::size_t k = samples.size(); k-- > 0;) {
      if (std::abs(samples[k].state.q[i] - ref.q1d[i]) > band) {
        first_inside = k + 1;
        break;
      }
    }
    if (first_inside < samples.size()) {
      m.settling_time[static_cast<std::size_t>(i)] = samples[first_inside].t;
    }
  }

  const double t_end = samples.back().t;
  for (const auto& smp : samples) {
    const double th1 = std::abs(smp.state.theta1()) * kRadToDeg;
    const double th2 = std::abs(smp.state.theta2()) * kRadToDeg;
    m.peak_theta1_deg = std::max(m.peak_theta1_deg, th1);
    m.peak_theta2_deg = std::max(m.peak_theta2_deg, th2);
    m.peak_u = m.peak_u.cwiseMax(smp.u_applied.cwiseAbs());
    if (smp.t >= t_end - kResidualWindow) {
      m.residual_swing_deg = std::max({m.residual_swing_deg, th1, th2});
    }
  }
  return m;
}

}  // namespace cranesim::sim
