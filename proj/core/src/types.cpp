#include "cranesim/types.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cranesim {

void CraneParameters::validate() const {
  auto check = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw DomainError(std::string("crane parameter '") + name + "' must be positive");
    }
  };
  check(tower_inertia, "tower_inertia");
  check(boom_inertia, "boom_inertia");
  check(boom_length, "boom_length");
  check(boom_mass, "boom_mass");
  check(payload_mass, "payload_mass");
  check(gravity, "gravity");
}

bool GeneralizedState::is_valid() const {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  return q.allFinite() && qdot.allFinite() && rope() > 0.0 &&
         std::abs(theta1()) < kHalfPi && std::abs(theta2()) < kHalfPi;
}

void GeneralizedState::validate() const {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  if (!q.allFinite() || !qdot.allFinite()) {
    throw DomainError("state contains non-finite values: " + describe(*this));
  }
  if (!(rope() > 0.0)) {
    throw DomainError("rope length must stay positive: " + describe(*this));
  }
  if (std::abs(theta1()) >= kHalfPi || std::abs(theta2()) >= kHalfPi) {
    throw DomainError("payload swing reached +-pi/2: " + describe(*this));
  }
}

GeneralizedState GeneralizedState::at_rest(double alpha, double beta, double d) {
  GeneralizedState s;
  s.q << alpha, beta, d, 0.0, 0.0;
  return s;
}

std::string describe(const GeneralizedState& s) {
  std::ostringstream os;
  os.precision(6);
  os << "q=[" << s.q.transpose() << "] qdot=[" << s.qdot.transpose() << "]";
  return os.str();
}

}  // namespace cranesim
