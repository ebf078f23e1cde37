#include "cranesim/stability_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "cranesim/crane_dynamics.hpp"
#include "cranesim/csv.hpp"

namespace cranesim::stability {
namespace {

Verdict classify(const std::array<std::complex<double>, 2>& roots) {
  Verdict v = Verdict::kStable;
  for (const auto& r : roots) {
    if (r.real() > kMarginalTolerance) return Verdict::kUnstable;
    if (r.real() >= -kMarginalTolerance) v = Verdict::kMarginal;
  }
  return v;
}

Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::kUnstable || b == Verdict::kUnstable) return Verdict::kUnstable;
  if (a == Verdict::kMarginal || b == Verdict::kMarginal) return Verdict::kMarginal;
  return Verdict::kStable;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  }
  return out;
}

}  // namespace

Mat4 LinearizedSwingSystem::A() const {
  Mat4 a = Mat4::Zero();
  a(0, 1) = 1.0;
  a(1, 0) = a11;
  a(1, 1) = a12;
  a(2, 3) = 1.0;
  a(3, 2) = a21;
  a(3, 3) = a22;
  return a;
}

LinearizedSwingSystem linearized_A(const CraneParameters& p, const control::ControllerGains& gains,
                                   double beta, double d) {
  if (!(d > 0.0)) throw DomainError("linearization needs a positive rope length");
  const double g = p.gravity;
  const double l = p.boom_length;
  const double a1 = gains.alpha1;
  const double a2 = gains.alpha2_at(beta);
  LinearizedSwingSystem sys;
  sys.beta = beta;
  sys.d = d;
  sys.a11 = -(g - a1 * gains.k_up[0] * l * std::cos(beta)) / d;
  sys.a12 = a1 * gains.k_ud[0] * l * std::cos(beta) / d;
  sys.a21 = -(g + a2 * gains.k_up[1] * l * std::sin(beta)) / d;
  sys.a22 = -a2 * gains.k_ud[1] * l * std::sin(beta) / d;
  return sys;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kStable:
      return "stable";
    case Verdict::kMarginal:
      return "marginal";
    case Verdict::kUnstable:
      return "unstable";
  }
  return "unknown";
}

std::array<std::complex<double>, 2> companion_roots(double a11, double a12) {
  // s^2 - a12 s - a11 = 0
  const double b = -a12;
  const double c = -a11;
  const double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    // Stable quadratic formula: avoid cancellation in the smaller root.
    const double qv = -0.5 * (b + std::copysign(sq, b));
    if (qv == 0.0) return {std::complex<double>(0.0), std::complex<double>(0.0)};
    return {std::complex<double>(qv), std::complex<double>(c / qv)};
  }
  const double re = -0.5 * b;
  const double im = 0.5 * std::sqrt(-disc);
  return {std::complex<double>(re, im), std::complex<double>(re, -im)};
}

HurwitzResult is_hurwitz(const LinearizedSwingSystem& sys) {
  const auto tan_roots = companion_roots(sys.a11, sys.a12);
  const auto rad_roots = companion_roots(sys.a21, sys.a22);
  HurwitzResult r;
  r.tangential = classify(tan_roots);
  r.radial = classify(rad_roots);
  r.verdict = worst(r.tangential, r.radial);
  r.eigenvalues = {tan_roots[0], tan_roots[1], rad_roots[0], rad_roots[1]};
  r.max_real_part = r.eigenvalues[0].real();
  for (const auto& e : r.eigenvalues) r.max_real_part = std::max(r.max_real_part, e.real());
  return r;
}

bool block_is_hurwitz_by_signs(double a11, double a12) { return a11 < 0.0 && a12 < 0.0; }

Vec2 pinned_swing_acceleration(const CraneParameters& p, const control::ControllerGains& gains,
                               double beta, double d, const Eigen::Vector4d& z) {
  GeneralizedState s;
  s.q << 0.0, beta, d, z[0], z[2];
  s.qdot << 0.0, 0.0, 0.0, z[1], z[3];
  const auto dm = dynamics::dynamics_matrices(s, p);
  const Vec2 swing = gains.k_ud.cwiseProduct(s.unactuated_rate()) +
                     gains.k_up.cwiseProduct(s.unactuated());
  const Vec2 rhs = -dm.M21() * gains.weighting(beta) * swing + dm.C22() * s.unactuated_rate() +
                   dm.G2();
  return -dm.M22().partialPivLu().solve(rhs);
}

LinearizationCheck numeric_linearization_check(const CraneParameters& p,
                                               const control::ControllerGains& gains, double beta,
                                               double d, double tolerance) {
  auto flow = [&](const Eigen::Vector4d& z) {
    const Vec2 acc = pinned_swing_acceleration(p, gains, beta, d, z);
    return Eigen::Vector4d(z[1], acc[0], z[3], acc[1]);
  };
  constexpr double h = 1e-3;
  LinearizationCheck check;
  for (int j = 0; j < 4; ++j) {
    auto central = [&](double step) {
      Eigen::Vector4d up = Eigen::Vector4d::Zero();
      Eigen::Vector4d dn = Eigen::Vector4d::Zero();
      up[j] = step;
      dn[j] = -step;
      return Eigen::Vector4d((flow(up) - flow(dn)) / (2.0 * step));
    };
    check.numeric.col(j) = (4.0 * central(h / 2.0) - central(h)) / 3.0;
  }
  check.closed_form = linearized_A(p, gains, beta, d).A();
  check.max_abs_diff = (check.numeric - check.closed_form).cwiseAbs().maxCoeff();
  check.passed = check.max_abs_diff < tolerance;
  return check;
}

ClosedLoopSpectrum closed_loop_spectrum(const CraneParameters& p,
                                        const control::ControllerGains& gains,
                                        const control::Reference& ref) {
  using Vec10 = Eigen::Matrix<double, 10, 1>;
  ref.validate();
  auto flow = [&](const Vec10& x) {
    GeneralizedState s;
    s.q = x.head<5>();
    s.qdot = x.tail<5>();
    const auto dm = dynamics::dynamics_matrices(s, p);
    const Vec3 v = control::auxiliary_input(s, ref, gains);
    const ActuationInput u = control::control_input(s, control::reduced_dynamics(dm), v);
    Vec10 out;
    out << s.qdot, dynamics::forward_dynamics(dm, s.qdot, u, Vec5::Zero());
    return out;
  };
  Vec10 x0 = Vec10::Zero();
  x0.head<3>() = ref.q1d;

  constexpr double h = 1e-4;
  ClosedLoopSpectrum out;
  for (int j = 0; j < 10; ++j) {
    auto central = [&](double step) {
      Vec10 up = x0, dn = x0;
      up[j] += step;
      dn[j] -= step;
      return Vec10((flow(up) - flow(dn)) / (2.0 * step));
    };
    out.jacobian.col(j) = (4.0 * central(h / 2.0) - central(h)) / 3.0;
  }
  const Eigen::EigenSolver<Eigen::Matrix<double, 10, 10>> es(out.jacobian, false);
  for (int i = 0; i < 10; ++i) out.eigenvalues[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](const auto& a, const auto& b) { return a.real() > b.real(); });
  out.max_real_part = out.eigenvalues.front().real();
  return out;
}

GridSpec GridSpec::parse(const std::string& spec) {
  GridSpec grid;
  bool have_beta = false, have_d = false;
  std::istringstream items(spec);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("grid item needs '=': " + item);
    const std::string key = item.substr(0, eq);
    std::istringstream range(item.substr(eq + 1));
    double lo = 0, hi = 0;
    int n = 0;
    char c1 = 0, c2 = 0;
    if (!(range >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || !range.eof()) {
      throw std::invalid_argument("grid range must be MIN:MAX:N: " + item);
    }
    if (key == "beta") {
      grid.beta_min = lo;
      grid.beta_max = hi;
      grid.beta_count = n;
      have_beta = true;
    } else if (key == "d") {
      grid.d_min = lo;
      grid.d_max = hi;
      grid.d_count = n;
      have_d = true;
    } else {
      throw std::invalid_argument("unknown grid axis: " + key);
    }
  }
  if (!have_beta || !have_d) throw std::invalid_argument("grid needs both beta= and d=");
  grid.validate();
  return grid;
}

void GridSpec::validate() const {
  if (beta_count < 1 || d_count < 1) throw std::invalid_argument("grid counts must be >= 1");
  if (!(beta_max >= beta_min) || !(d_max >= d_min)) {
    throw std::invalid_argument("grid ranges must satisfy MIN <= MAX");
  }
  if (!(d_min > 0.0)) throw std::invalid_argument("grid rope lengths must be positive");
}

std::vector<double> GridSpec::betas() const { return linspace(beta_min, beta_max, beta_count); }
std::vector<double> GridSpec::lengths() const { return linspace(d_min, d_max, d_count); }

std::vector<StabilityPoint> stability_map(const CraneParameters& p,
                                          const control::ControllerGains& gains,
                                          const GridSpec& grid) {
  grid.validate();
  std::vector<StabilityPoint> map;
  for (double beta : grid.betas()) {
    for (double d : grid.lengths()) {
      map.push_back({beta, d, is_hurwitz(linearized_A(p, gains, beta, d))});
    }
  }
  return map;
}

void write_stability_csv(std::ostream& os, const std::vector<StabilityPoint>& map) {
  csv::Writer w(os);
  w.header({"beta", "d", "verdict", "max_real_eigenvalue", "tangential_block", "radial_block"});
  for (const auto& pt : map) {
    w.row(pt.beta, pt.d, to_string(pt.result.verdict), pt.result.max_real_part,
          to_string(pt.result.tangential), to_string(pt.result.radial));
  }
}

}  // namespace cranesim::stability
