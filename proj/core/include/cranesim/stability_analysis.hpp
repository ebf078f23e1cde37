// Local stability of the swing subsystem with the actuated coordinates held
// at their set-point. State z = [theta1, theta1_dot, theta2, theta2_dot].
#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cranesim/swing_damping_controller.hpp"
#include "cranesim/types.hpp"

namespace cranesim::stability {

using Mat4 = Eigen::Matrix4d;

/// Two decoupled companion blocks
///   [0 1 0 0; a11 a12 0 0; 0 0 0 1; 0 0 a21 a22].
struct LinearizedSwingSystem {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
  double beta = 0.0;  // rad
  double d = 0.0;     // m

  Mat4 A() const;
};

/// Closed-form entries:
///   a11 = -(g - a1 K_up1 l cos b) / d     a12 = a1 K_ud1 l cos b / d
///   a21 = -(g + a2 K_up2 l sin b) / d     a22 = -a2 K_ud2 l sin b / d
/// Gains are not required to be positive here, so open-loop (zero-gain)
/// systems can be analysed. Throws DomainError if d <= 0.
LinearizedSwingSystem linearized_A(const CraneParameters& p, const control::ControllerGains& gains,
                                   double beta, double d);

enum class Verdict { kStable, kMarginal, kUnstable };

std::string to_string(Verdict v);

/// Real parts within this distance of zero count as marginal.
inline constexpr double kMarginalTolerance = 1e-12;

struct HurwitzResult {
  Verdict verdict = Verdict::kStable;
  Verdict tangential = Verdict::kStable;  // (theta1, theta1_dot) block
  Verdict radial = Verdict::kStable;      // (theta2, theta2_dot) block
  std::array<std::complex<double>, 4> eigenvalues{};
  double max_real_part = 0.0;
};

/// Roots of s^2 - a12 s - a11 for each block.
std::array<std::complex<double>, 2> companion_roots(double a11, double a12);

HurwitzResult is_hurwitz(const LinearizedSwingSystem& sys);

/// Sign test for one block: Hurwitz iff a11 < 0 and a12 < 0.
bool block_is_hurwitz_by_signs(double a11, double a12);

/// Swing accelerations of the pinned closed loop
///   qdd2 = -M22^-1 (-M21 W (K_ud qdot2 + K_up q2) + C22 qdot2 + G2)
/// at q1 = (0, beta, d), qdot1 = 0.
Vec2 pinned_swing_acceleration(const CraneParameters& p, const control::ControllerGains& gains,
                               double beta, double d, const Eigen::Vector4d& z);

struct LinearizationCheck {
  Mat4 numeric = Mat4::Zero();
  Mat4 closed_form = Mat4::Zero();
  double max_abs_diff = 0.0;
  bool passed = false;
};

/// Finite-difference Jacobian of the pinned closed loop at z = 0 compared with
/// linearized_A entry-wise.
LinearizationCheck numeric_linearization_check(const CraneParameters& p,
                                               const control::ControllerGains& gains, double beta,
                                               double d, double tolerance = 1e-6);

/// Linearization of the complete closed loop, with the actuated coordinates
/// free rather than pinned, about the set-point with the payload at rest.
/// State x = [q; qdot]. The pinned analysis above leaves out the coupling
/// through the actuated PD loop; this spectrum includes it.
struct ClosedLoopSpectrum {
  Eigen::Matrix<double, 10, 10> jacobian = Eigen::Matrix<double, 10, 10>::Zero();
  std::array<std::complex<double>, 10> eigenvalues{};  // sorted by descending real part
  double max_real_part = 0.0;
};

/// Gains are used as given (zero swing gains are allowed).
ClosedLoopSpectrum closed_loop_spectrum(const CraneParameters& p,
                                        const control::ControllerGains& gains,
                                        const control::Reference& ref);

/// Inclusive linear grid over (beta, d).
struct GridSpec {
  double beta_min = 0.05, beta_max = 1.5;
  int beta_count = 51;
  double d_min = 0.5, d_max = 20.0;
  int d_count = 51;

  /// Parses "beta=MIN:MAX:N,d=MIN:MAX:N". Throws std::invalid_argument.
  static GridSpec parse(const std::string& spec);
  void validate() const;
  std::vector<double> betas() const;
  std::vector<double> lengths() const;
};

struct StabilityPoint {
  double beta = 0.0;
  double d = 0.0;
  HurwitzResult result;
};

std::vector<StabilityPoint> stability_map(const CraneParameters& p,
                                          const control::ControllerGains& gains,
                                          const GridSpec& grid);

/// Columns: beta,d,verdict,max_real_eigenvalue,tangential_block,radial_block.
void write_stability_csv(std::ostream& os, const std::vector<StabilityPoint>& map);

}  // namespace cranesim::stability
