// Fixed-step RK4 integration of the crane with optional controller, actuator
// saturation and wind disturbance.
#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cranesim/swing_damping_controller.hpp"
#include "cranesim/types.hpp"
#include "cranesim/wind_disturbance.hpp"

namespace cranesim::sim {

/// Commanded input as a function of time and state.
using ControlLaw = std::function<ActuationInput(double, const GeneralizedState&)>;

/// u = 0 for every t.
ControlLaw zero_input();

/// Wraps a stateless state-feedback controller.
ControlLaw state_feedback(control::SwingDampingController controller);

struct SimulationConfig {
  double dt = 1e-3;        // s
  double duration = 60.0;  // s
  GeneralizedState initial_state;
  std::optional<Vec3> saturation;  // per-input |u_i| bounds; +inf leaves an input unbounded
  std::optional<wind::WindDisturbance> disturbance;
  int record_stride = 10;  // integration steps per logged sample

  void validate() const;
  /// Number of integration steps, round(duration / dt).
  long long steps() const;
  /// floor(steps / record_stride) + 1
  std::size_t expected_samples() const;
};

/// Evaluated input and disturbance for one right-hand-side call.
struct StageInputs {
  ActuationInput u_commanded = ActuationInput::Zero();
  ActuationInput u_applied = ActuationInput::Zero();
  Vec3 wind_force = Vec3::Zero();
};

/// Element-wise clamp to [-bound, bound].
ActuationInput saturate(const ActuationInput& u, const std::optional<Vec3>& bounds);

/// Controller, saturation and wind at (t, state).
StageInputs evaluate_inputs(double t, const GeneralizedState& s, const ControlLaw& controller,
                            const SimulationConfig& cfg, const CraneParameters& p);

/// One classical RK4 step from t to t + dt; the input and wind are
/// re-evaluated (and saturated) at each of the four stages.
GeneralizedState step(double t, const GeneralizedState& s, const ControlLaw& controller,
                      const SimulationConfig& cfg, const CraneParameters& p, double dt);

struct Sample {
  double t = 0.0;
  GeneralizedState state;
  ActuationInput u_commanded = ActuationInput::Zero();
  ActuationInput u_applied = ActuationInput::Zero();
  Vec3 wind_force = Vec3::Zero();
  double energy = 0.0;
};

struct TrajectoryLog {
  std::vector<Sample> samples;

  /// Writes the documented 21-column header and one row per sample with
  /// 17 significant digits.
  void write_csv(std::ostream& os) const;
  static TrajectoryLog read_csv(std::istream& is);
};

/// Raised when the state leaves the model's domain mid-run. Carries the log
/// recorded so far.
class RunAborted : public std::runtime_error {
 public:
  RunAborted(const std::string& what, double t, TrajectoryLog partial)
      : std::runtime_error(what), time(t), log(std::move(partial)) {}
  double time;
  TrajectoryLog log;
};

/// Deterministic fixed-step run. Throws RunAborted on an invariant violation.
TrajectoryLog run(const SimulationConfig& cfg, const ControlLaw& controller,
                  const CraneParameters& p);

struct RunMetrics {
  /// Per actuated coordinate; empty when the 2% band is not held to the end.
  std::array<std::optional<double>, 3> settling_time{};
  double peak_theta1_deg = 0.0;
  double peak_theta2_deg = 0.0;
  Vec3 peak_u = Vec3::Zero();         // max |u_applied_i|
  double residual_swing_deg = 0.0;    // max |theta_i| over the residual window
};

/// Trailing window over which the residual swing is measured.
inline constexpr double kResidualWindow = 5.0;  // s
/// Settling band as a fraction of the commanded change.
inline constexpr double kSettlingFraction = 0.02;
/// Band used when a coordinate is commanded to stay where it starts.
inline constexpr double kZeroChangeBand = 1e-3;

/// Settling time is the first sample time after which |q1_i - q1d_i| stays
/// within 2% of |q1d_i - q1_i(0)| through the end of the log.
RunMetrics metrics(const TrajectoryLog& log, const control::Reference& ref);

}  // namespace cranesim::sim
