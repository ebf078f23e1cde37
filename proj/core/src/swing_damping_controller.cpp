#include "cranesim/swing_damping_controller.hpp"

#include <cmath>

#include <Eigen/LU>

namespace cranesim::control {

void ControllerGains::validate() const {
  auto positive = [](const auto& v) { return v.allFinite() && (v.array() > 0.0).all(); };
  if (!positive(k_ad)) throw DomainError("K_ad entries must be positive");
  if (!positive(k_ap)) throw DomainError("K_ap entries must be positive");
  if (!positive(k_ud)) throw DomainError("K_ud entries must be positive");
  if (!positive(k_up)) throw DomainError("K_up entries must be positive");
  if (!std::isfinite(alpha1) || !std::isfinite(alpha2)) {
    throw DomainError("weighting entries must be finite");
  }
}

double ControllerGains::alpha2_at(double beta) const {
  if (alpha2_rule == Alpha2Rule::kFixed) return alpha2;
  return static_cast<double>((beta > 0.0) - (beta < 0.0));
}

Mat32 ControllerGains::weighting(double beta) const {
  Mat32 w = Mat32::Zero();
  w(0, 0) = alpha1;
  w(1, 1) = alpha2_at(beta);
  return w;
}

void Reference::validate() const {
  if (!q1d.allFinite() || !q1d_dot.allFinite() || !q1d_ddot.allFinite()) {
    throw DomainError("reference must be finite");
  }
  if (!(q1d[kRope] > 0.0)) throw DomainError("reference rope length d_d must be positive");
}

ReducedDynamics reduced_dynamics(const dynamics::DynamicsMatrices& dm) {
  const Mat2 M22 = dm.M22();
  // M22 is diagonal for this model, but any invertible block is handled.
  const Eigen::PartialPivLU<Mat2> lu(M22);
  const double scale = M22.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || std::abs(lu.determinant()) < 1e-12 * scale * scale) {
    throw DomainError("swing inertia block M22 is singular");
  }
  const Mat32 M12_M22inv = lu.solve(dm.M12().transpose()).transpose();

  ReducedDynamics rd;
  rd.Mbar = dm.M11() - M12_M22inv * dm.M21();
  rd.Cbar1 = dm.C11() - M12_M22inv * dm.C21();
  rd.Cbar2 = dm.C12() - M12_M22inv * dm.C22();
  rd.Gbar = dm.G1() - M12_M22inv * dm.G2();
  return rd;
}

Vec3 auxiliary_input(const GeneralizedState& s, const Reference& ref, const ControllerGains& gains) {
  const Vec2 swing = gains.k_ud.cwiseProduct(s.unactuated_rate()) +
                     gains.k_up.cwiseProduct(s.unactuated());
  return ref.q1d_ddot - gains.k_ad.cwiseProduct(s.actuated_rate() - ref.q1d_dot) -
         gains.k_ap.cwiseProduct(s.actuated() - ref.q1d) - gains.weighting(s.beta()) * swing;
}

ActuationInput control_input(const GeneralizedState& s, const ReducedDynamics& rd, const Vec3& v) {
  return rd.Mbar * v + rd.Cbar1 * s.actuated_rate() + rd.Cbar2 * s.unactuated_rate() + rd.Gbar;
}

SwingDampingController::SwingDampingController(CraneParameters params, ControllerGains gains,
                                               Reference ref)
    : params_(params), gains_(gains), ref_(ref) {
  params_.validate();
  gains_.validate();
  ref_.validate();
}

ActuationInput SwingDampingController::operator()(const GeneralizedState& s) const {
  const auto dm = dynamics::dynamics_matrices(s, params_);
  return control_input(s, reduced_dynamics(dm), auxiliary_input(s, ref_, gains_));
}

}  // namespace cranesim::control
