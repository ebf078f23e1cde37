// Partial feedback linearization of the actuated coordinates (slew, luff,
// hoist) with swing feedback folded into the auxiliary input.
#pragma once

#include "cranesim/crane_dynamics.hpp"
#include "cranesim/types.hpp"

namespace cranesim::control {

enum class Alpha2Rule {
  kFixed,       // use ControllerGains::alpha2
  kSignOfBeta,  // alpha2 = sign(beta), sign(0) = 0
};

struct ControllerGains {
  Vec3 k_ad{100.0, 100.0, 150.0};  // actuated rate gains [1/s]
  Vec3 k_ap{10.0, 20.0, 50.0};     // actuated position gains [1/s^2]
  Vec2 k_ud{120.0, 120.0};         // swing rate gains
  Vec2 k_up{10.0, 10.0};           // swing angle gains
  double alpha1 = -1.0;            // tangential swing -> slew weighting
  Alpha2Rule alpha2_rule = Alpha2Rule::kSignOfBeta;
  double alpha2 = 0.0;             // only read with Alpha2Rule::kFixed

  /// Throws DomainError unless every diagonal entry is strictly positive.
  void validate() const;
  /// Weighting entry on the radial swing at luff angle `beta`.
  double alpha2_at(double beta) const;
  /// The 3x2 weighting matrix [[a1, 0], [0, a2], [0, 0]].
  Mat32 weighting(double beta) const;
};

/// Constant set-point for the actuated coordinates.
struct Reference {
  Vec3 q1d = Vec3::Zero();         // [alpha_d, beta_d, d_d]
  Vec3 q1d_dot = Vec3::Zero();
  Vec3 q1d_ddot = Vec3::Zero();

  void validate() const;
};

/// Dynamics of the actuated coordinates after eliminating the swing
/// accelerations: Mbar qddot1 + Cbar1 qdot1 + Cbar2 qdot2 + Gbar = U.
struct ReducedDynamics {
  Mat3 Mbar = Mat3::Zero();
  Mat3 Cbar1 = Mat3::Zero();
  Mat32 Cbar2 = Mat32::Zero();
  Vec3 Gbar = Vec3::Zero();
};

ReducedDynamics reduced_dynamics(const dynamics::DynamicsMatrices& dm);

/// v = qdd1d - K_ad (qdot1 - qdot1d) - K_ap (q1 - q1d) - W (K_ud qdot2 + K_up q2).
/// With a constant reference the feed-forward terms vanish.
Vec3 auxiliary_input(const GeneralizedState& s, const Reference& ref, const ControllerGains& gains);

/// U = Mbar v + Cbar1 qdot1 + Cbar2 qdot2 + Gbar.
ActuationInput control_input(const GeneralizedState& s, const ReducedDynamics& rd, const Vec3& v);

/// Stateless swing-damping controller bundling model, gains and reference.
class SwingDampingController {
 public:
  SwingDampingController(CraneParameters params, ControllerGains gains, Reference ref);

  ActuationInput operator()(const GeneralizedState& s) const;

  const ControllerGains& gains() const { return gains_; }
  const Reference& reference() const { return ref_; }

 private:
  CraneParameters params_;
  ControllerGains gains_;
  Reference ref_;
};

}  // namespace cranesim::control
