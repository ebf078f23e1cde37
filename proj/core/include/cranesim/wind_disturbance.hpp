// Trapezoidal wind gust acting on the payload as a drag force.
#pragma once

#include <string>
#include <vector>

#include "cranesim/types.hpp"

namespace cranesim::wind {

/// How the gust direction is interpreted.
enum class DirectionMode {
  kWorld,       // fixed world-frame unit vector
  kTangential,  // y axis of the slew frame, re-resolved every evaluation
  kRadial,      // x axis of the slew frame, re-resolved every evaluation
};

/// Default envelope of a gust: total duration 2..7 s, peak speed 4..20 m/s.
inline constexpr double kMinGustDuration = 2.0;
inline constexpr double kMaxGustDuration = 7.0;
inline constexpr double kMinGustSpeed = 4.0;
inline constexpr double kMaxGustSpeed = 20.0;

struct GustProfile {
  double start_time = 20.0;  // s
  double ramp_up = 1.0;      // s
  double plateau = 3.0;      // s
  double ramp_down = 1.0;    // s
  double peak_speed = 15.0;  // m/s
  DirectionMode mode = DirectionMode::kTangential;
  Vec3 direction = Vec3::UnitY();  // world frame, used with DirectionMode::kWorld

  double duration() const { return ramp_up + plateau + ramp_down; }
  double end_time() const { return start_time + duration(); }

  /// Throws DomainError for negative durations, non-finite values or a
  /// non-unit world direction.
  void validate() const;
  /// Human-readable notes for values outside the default gust envelope.
  std::vector<std::string> envelope_warnings() const;
};

struct DragConfig {
  double rho = 1.225;     // kg/m^3, sea-level ISA
  double area = 0.5;      // m^2, exposed payload surface
  double drag_coefficient = 1.05;

  void validate() const;
};

/// Piecewise-linear trapezoid; zero outside [start, start + duration].
double wind_speed(double t, const GustProfile& profile);

/// Unit direction of the gust in the world frame at slew angle `alpha`.
Vec3 gust_direction(const GustProfile& profile, double alpha);

/// 1/2 rho V^2 A C_D along the gust direction (world frame).
Vec3 drag_force(double t, const GustProfile& profile, const DragConfig& cfg, double alpha);

/// Virtual-work map of a world-frame payload force onto q: J^T F.
Vec5 generalized_force(const GeneralizedState& s, const Vec3& force, const CraneParameters& p);

/// Gust plus drag model bundled for the simulator.
struct WindDisturbance {
  GustProfile gust;
  DragConfig drag;

  Vec3 force(double t, const GeneralizedState& s) const {
    return drag_force(t, gust, drag, s.alpha());
  }
};

}  // namespace cranesim::wind
