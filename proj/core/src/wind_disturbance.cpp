#include "cranesim/wind_disturbance.hpp"

#include <cmath>
#include <sstream>

#include "cranesim/crane_dynamics.hpp"

namespace cranesim::wind {

void GustProfile::validate() const {
  for (double v : {start_time, ramp_up, plateau, ramp_down, peak_speed}) {
    if (!std::isfinite(v)) throw DomainError("gust profile values must be finite");
  }
  if (ramp_up < 0.0 || plateau < 0.0 || ramp_down < 0.0) {
    throw DomainError("gust durations must be non-negative");
  }
  if (peak_speed < 0.0) throw DomainError("gust peak speed must be non-negative");
  if (mode == DirectionMode::kWorld &&
      !(direction.allFinite() && std::abs(direction.norm() - 1.0) < 1e-9)) {
    throw DomainError("gust world direction must be a unit vector");
  }
}

std::vector<std::string> GustProfile::envelope_warnings() const {
  std::vector<std::string> out;
  if (duration() < kMinGustDuration || duration() > kMaxGustDuration) {
    std::ostringstream os;
    os << "gust duration " << duration() << " s is outside the " << kMinGustDuration << "-"
       << kMaxGustDuration << " s envelope";
    out.push_back(os.str());
  }
  if (peak_speed < kMinGustSpeed || peak_speed > kMaxGustSpeed) {
    std::ostringstream os;
    os << "gust speed " << peak_speed << " m/s is outside the " << kMinGustSpeed << "-"
       << kMaxGustSpeed << " m/s envelope";
    out.push_back(os.str());
  }
  return out;
}

void DragConfig::validate() const {
  for (double v : {rho, area, drag_coefficient}) {
    if (!(std::isfinite(v) && v > 0.0)) throw DomainError("drag parameters must be positive");
  }
}

double wind_speed(double t, const GustProfile& g) {
  const double tau = t - g.start_time;
  if (!(tau >= 0.0) || tau > g.duration()) return 0.0;
  if (tau < g.ramp_up) return g.peak_speed * tau / g.ramp_up;
  if (tau <= g.ramp_up + g.plateau) return g.peak_speed;
  if (g.ramp_down <= 0.0) return 0.0;
  return g.peak_speed * (g.duration() - tau) / g.ramp_down;
}

Vec3 gust_direction(const GustProfile& g, double alpha) {
  switch (g.mode) {
    case DirectionMode::kTangential:
      return {-std::sin(alpha), std::cos(alpha), 0.0};
    case DirectionMode::kRadial:
      return {std::cos(alpha), std::sin(alpha), 0.0};
    case DirectionMode::kWorld:
    default:
      return g.direction;
  }
}

Vec3 drag_force(double t, const GustProfile& g, const DragConfig& cfg, double alpha) {
  const double v = wind_speed(t, g);
  const double magnitude = 0.5 * cfg.rho * v * v * cfg.area * cfg.drag_coefficient;
  return magnitude * gust_direction(g, alpha);
}

Vec5 generalized_force(const GeneralizedState& s, const Vec3& force, const CraneParameters& p) {
  return dynamics::payload_jacobian(s, p).transpose() * force;
}

}  // namespace cranesim::wind
