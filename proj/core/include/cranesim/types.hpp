// Core value types shared by every cranesim module.
#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace cranesim {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat32 = Eigen::Matrix<double, 3, 2>;
using Mat23 = Eigen::Matrix<double, 2, 3>;

/// Raised when a state or parameter set leaves the region where the model is
/// defined (non-positive rope length, swing at or past the horizontal, a
/// numerically singular inertia matrix, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Index of each generalized coordinate in q = [alpha, beta, d, theta1, theta2].
enum Coord : int { kSlew = 0, kLuff = 1, kRope = 2, kSwingTan = 3, kSwingRad = 4 };

/// Physical constants of the boom crane. The boom is modelled as a body whose
/// centre of mass sits at half the boom length; `boom_inertia` is its pitch
/// inertia about that centre of mass.
struct CraneParameters {
  double tower_inertia = 207.13;  // kg m^2, about the slew axis
  double boom_inertia = 2068.0;   // kg m^2
  double boom_length = 6.2;       // m
  double boom_mass = 312.2;       // kg
  double payload_mass = 50.0;     // kg
  double gravity = 9.81;          // m/s^2

  /// Throws DomainError unless every field is strictly positive and finite.
  void validate() const;
};

/// Generalized coordinates q and their rates.
struct GeneralizedState {
  Vec5 q = Vec5::Zero();
  Vec5 qdot = Vec5::Zero();

  double alpha() const { return q[kSlew]; }
  double beta() const { return q[kLuff]; }
  double rope() const { return q[kRope]; }
  double theta1() const { return q[kSwingTan]; }
  double theta2() const { return q[kSwingRad]; }

  Vec3 actuated() const { return q.head<3>(); }
  Vec2 unactuated() const { return q.tail<2>(); }
  Vec3 actuated_rate() const { return qdot.head<3>(); }
  Vec2 unactuated_rate() const { return qdot.tail<2>(); }

  /// True when d > 0, |theta_i| < pi/2 and every entry is finite.
  bool is_valid() const;
  /// Throws DomainError naming the violated condition.
  void validate() const;

  static GeneralizedState at_rest(double alpha, double beta, double d);
};

/// Slew torque, luff torque and hoist force [N m, N m, N].
using ActuationInput = Vec3;

std::string describe(const GeneralizedState& s);

}  // namespace cranesim
