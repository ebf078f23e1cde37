// Kinematics and closed-form equations of motion of the 5-DoF boom crane.
//
// Frames: the world frame has z up. The tower slews by alpha about z; in the
// rotating (slew) frame the boom pivot is at the origin, the boom tip sits at
// (l cos(beta), 0, l sin(beta)) and the rope leaves the tip along
//   e = (sin(theta2), cos(theta2) sin(theta1), -cos(theta1) cos(theta2)).
// The payload is a point mass at tip + d e. The boom is a body with its centre
// of mass at l/2; it contributes a pitch inertia about that point and its mass
// at l/2 for the slew rotation.
#pragma once

#include <cmath>

#include <Eigen/Core>

#include "cranesim/types.hpp"

namespace cranesim::dynamics {

template <typename Scalar>
using Vec3T = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
Vec3T<Scalar> rotate_slew(const Scalar& alpha, const Vec3T<Scalar>& v) {
  using std::cos;
  using std::sin;
  const Scalar ca = cos(alpha);
  const Scalar sa = sin(alpha);
  return Vec3T<Scalar>(ca * v[0] - sa * v[1], sa * v[0] + ca * v[1], v[2]);
}

/// Payload position in the world frame. Templated on the scalar so it can be
/// evaluated with complex arguments (complex-step differentiation).
template <typename Scalar>
Vec3T<Scalar> payload_position(const Eigen::Matrix<Scalar, 5, 1>& q, double boom_length) {
  using std::cos;
  using std::sin;
  const Scalar& beta = q[kLuff];
  const Scalar& d = q[kRope];
  const Scalar& t1 = q[kSwingTan];
  const Scalar& t2 = q[kSwingRad];
  Vec3T<Scalar> local(boom_length * cos(beta) + d * sin(t2),
                      d * cos(t2) * sin(t1),
                      boom_length * sin(beta) - d * cos(t1) * cos(t2));
  return rotate_slew(q[kSlew], local);
}

inline Vec3 payload_position(const GeneralizedState& s, const CraneParameters& p) {
  return payload_position<double>(s.q, p.boom_length);
}

/// Boom centre of mass in the world frame.
template <typename Scalar>
Vec3T<Scalar> boom_com_position(const Eigen::Matrix<Scalar, 5, 1>& q, double boom_length) {
  using std::cos;
  using std::sin;
  const double h = 0.5 * boom_length;
  Vec3T<Scalar> local(h * cos(q[kLuff]), Scalar(0.0), h * sin(q[kLuff]));
  return rotate_slew(q[kSlew], local);
}

/// M(q), C(q, qdot), G(q) with the actuated (alpha, beta, d) / unactuated
/// (theta1, theta2) partition exposed as blocks.
struct DynamicsMatrices {
  Mat5 M = Mat5::Zero();
  Mat5 C = Mat5::Zero();
  Vec5 G = Vec5::Zero();

  Mat3 M11() const { return M.topLeftCorner<3, 3>(); }
  Mat32 M12() const { return M.topRightCorner<3, 2>(); }
  Mat23 M21() const { return M.bottomLeftCorner<2, 3>(); }
  Mat2 M22() const { return M.bottomRightCorner<2, 2>(); }
  Mat3 C11() const { return C.topLeftCorner<3, 3>(); }
  Mat32 C12() const { return C.topRightCorner<3, 2>(); }
  Mat23 C21() const { return C.bottomLeftCorner<2, 3>(); }
  Mat2 C22() const { return C.bottomRightCorner<2, 2>(); }
  Vec3 G1() const { return G.head<3>(); }
  Vec2 G2() const { return G.tail<2>(); }

  /// Left-hand side M qddot + C qdot + G of the equations of motion.
  Vec5 generalized_force(const Vec5& qdot, const Vec5& qddot) const {
    return M * qddot + C * qdot + G;
  }
};

/// 5x3 input selection: identity on the actuated rows, zero on the swing rows.
Eigen::Matrix<double, 5, 3> input_matrix();

/// Velocity Jacobian of the payload expressed in the slew frame (columns
/// ordered like q). World-frame Jacobian is R(alpha) times this matrix.
Eigen::Matrix<double, 3, 5> payload_jacobian_local(const GeneralizedState& s,
                                                   const CraneParameters& p);

/// d(payload_position)/dq in the world frame.
Eigen::Matrix<double, 3, 5> payload_jacobian(const GeneralizedState& s, const CraneParameters& p);

/// Builds M, C and G. C uses Christoffel symbols of the first kind, so
/// Mdot - 2C is skew-symmetric. Throws DomainError on an invalid state.
DynamicsMatrices dynamics_matrices(const GeneralizedState& s, const CraneParameters& p);

/// Partial derivative dM/dq_k (k in 0..4).
Mat5 mass_matrix_derivative(const GeneralizedState& s, const CraneParameters& p, int k);

/// Reciprocal condition number below which M is treated as singular.
inline constexpr double kMinMassRcond = 1e-12;

/// Solves M qddot = B u + f_ext - C qdot - G.
Vec5 forward_dynamics(const GeneralizedState& s, const ActuationInput& u, const Vec5& f_ext,
                      const CraneParameters& p);

Vec5 forward_dynamics(const DynamicsMatrices& dm, const Vec5& qdot, const ActuationInput& u,
                      const Vec5& f_ext);

/// U(q): payload plus boom gravity potential; zero datum at the boom pivot height.
double potential_energy(const GeneralizedState& s, const CraneParameters& p);

double kinetic_energy(const GeneralizedState& s, const CraneParameters& p);

double total_energy(const GeneralizedState& s, const CraneParameters& p);

}  // namespace cranesim::dynamics
