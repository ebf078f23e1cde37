#include "cranesim/lagrangian_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "cranesim/csv.hpp"

namespace cranesim::oracle {
namespace {

using Complex = std::complex<double>;
using CVec5 = Eigen::Matrix<Complex, 5, 1>;

// L is exactly quadratic in qdot, so a central difference in qdot is exact
// for any step; a unit step keeps cancellation error smallest.
constexpr double kVelocityStep = 1.0;
constexpr double kComplexStep = 1e-30;

// Velocity of a point whose world position is `position(q)`, along qdot.
template <typename PositionFn>
Vec3 complex_step_velocity(const Vec5& q, const Vec5& qdot, PositionFn position) {
  const CVec5 qc = q.cast<Complex>() + Complex(0.0, kComplexStep) * qdot.cast<Complex>();
  const auto pc = position(qc);
  return Vec3(pc[0].imag(), pc[1].imag(), pc[2].imag()) / kComplexStep;
}

double lagrangian_at(const Vec5& q, const Vec5& qdot, const CraneParameters& p) {
  const double l = p.boom_length;
  const Vec3 v_payload = complex_step_velocity(
      q, qdot, [l](const CVec5& x) { return dynamics::payload_position<Complex>(x, l); });
  const Vec3 v_boom = complex_step_velocity(
      q, qdot, [l](const CVec5& x) { return dynamics::boom_com_position<Complex>(x, l); });

  const double kinetic = 0.5 * p.tower_inertia * qdot[kSlew] * qdot[kSlew] +
                         0.5 * p.boom_inertia * qdot[kLuff] * qdot[kLuff] +
                         0.5 * p.boom_mass * v_boom.squaredNorm() +
                         0.5 * p.payload_mass * v_payload.squaredNorm();
  const double potential =
      p.gravity * (p.payload_mass * dynamics::payload_position<double>(q, l)[2] +
                   p.boom_mass * dynamics::boom_com_position<double>(q, l)[2]);
  return kinetic - potential;
}

// dL/dqdot, exact up to rounding.
Vec5 momentum(const Vec5& q, const Vec5& qdot, const CraneParameters& p) {
  Vec5 out;
  for (int i = 0; i < 5; ++i) {
    Vec5 up = qdot, dn = qdot;
    up[i] += kVelocityStep;
    dn[i] -= kVelocityStep;
    out[i] = (lagrangian_at(q, up, p) - lagrangian_at(q, dn, p)) / (2.0 * kVelocityStep);
  }
  return out;
}

// d^2 L / dqdot^2, independent of qdot.
Mat5 inertia(const Vec5& q, const CraneParameters& p) {
  const double h = kVelocityStep;
  Mat5 H;
  for (int i = 0; i < 5; ++i) {
    for (int j = i; j < 5; ++j) {
      auto eval = [&](double si, double sj) {
        Vec5 v = Vec5::Zero();
        v[i] += si * h;
        v[j] += sj * h;
        return lagrangian_at(q, v, p);
      };
      const double hij = (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) / (4.0 * h * h);
      H(i, j) = hij;
      H(j, i) = hij;
    }
  }
  return H;
}

// Two Richardson-extrapolated central differences of f at 0: one from steps
// (h, h/2), one from (h/2, h/4). Their spread estimates the remaining error.
template <typename Fn>
std::pair<Vec5, Vec5> richardson(Fn f, double h) {
  auto central = [&](double step) -> Vec5 { return (f(step) - f(-step)) / (2.0 * step); };
  const Vec5 d1 = central(h);
  const Vec5 d2 = central(h / 2.0);
  const Vec5 d4 = central(h / 4.0);
  return {(4.0 * d2 - d1) / 3.0, (4.0 * d4 - d2) / 3.0};
}

struct Derivatives {
  Mat5 H;
  Vec5 bias;  // d/dt(dL/dqdot) at qddot = 0, minus dL/dq
};

Derivatives euler_lagrange_terms(const GeneralizedState& s, const CraneParameters& p,
                                 const OracleConfig& cfg) {
  cfg.validate();
  s.validate();
  const Vec5& q = s.q;
  const Vec5& qdot = s.qdot;

  // Total time derivative of the momentum along q(t) = q + t qdot.
  const auto [dpdt, dpdt_check] = richardson(
      [&](double t) -> Vec5 { return momentum(q + t * qdot, qdot, p); }, cfg.fd_step_t);

  Vec5 dLdq = Vec5::Zero();
  Vec5 dLdq_check = Vec5::Zero();
  for (int i = 0; i < 5; ++i) {
    const double h = cfg.fd_step_q * std::max(1.0, std::abs(q[i]));
    const auto [fine, coarse] = richardson(
        [&](double step) -> Vec5 {
          Vec5 shifted = q;
          shifted[i] += step;
          return Vec5::Constant(lagrangian_at(shifted, qdot, p));
        },
        h);
    dLdq[i] = fine[0];
    dLdq_check[i] = coarse[0];
  }

  const Vec5 bias = dpdt - dLdq;
  const Vec5 bias_check = dpdt_check - dLdq_check;
  const double spread = (bias - bias_check).lpNorm<Eigen::Infinity>();
  if (spread > cfg.tolerance * (bias.lpNorm<Eigen::Infinity>() + 1.0)) {
    std::ostringstream os;
    os << "oracle derivatives did not converge (spread " << spread << ") at " << describe(s);
    throw NonConvergence(os.str());
  }
  return {inertia(q, p), bias};
}

Vec5 solve_any(const dynamics::DynamicsMatrices& dm, const ProbeState& probe) {
  const Vec5 rhs = dynamics::input_matrix() * probe.u - dm.C * probe.state.qdot - dm.G;
  return dm.M.partialPivLu().solve(rhs);
}

}  // namespace

void OracleConfig::validate() const {
  auto in_range = [](double h) { return std::isfinite(h) && h > 0.0 && h <= 1e-2; };
  if (!in_range(fd_step_q)) throw DomainError("oracle fd_step_q must lie in (0, 1e-2]");
  if (!in_range(fd_step_t)) throw DomainError("oracle fd_step_t must lie in (0, 1e-2]");
  if (!(std::isfinite(tolerance) && tolerance > 0.0)) {
    throw DomainError("oracle tolerance must be positive");
  }
}

double lagrangian(const GeneralizedState& s, const CraneParameters& p) {
  return lagrangian_at(s.q, s.qdot, p);
}

Vec5 oracle_generalized_force(const GeneralizedState& s, const Vec5& qddot,
                              const CraneParameters& p, const OracleConfig& cfg) {
  const Derivatives el = euler_lagrange_terms(s, p, cfg);
  return el.H * qddot + el.bias;
}

Vec5 oracle_accelerations(const GeneralizedState& s, const ActuationInput& u,
                          const CraneParameters& p, const OracleConfig& cfg, const Vec5& f_ext) {
  const Derivatives el = euler_lagrange_terms(s, p, cfg);
  const Vec5 rhs = dynamics::input_matrix() * u + f_ext - el.bias;
  return el.H.ldlt().solve(rhs);
}

std::vector<ProbeState> random_probes(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  std::vector<ProbeState> probes;
  probes.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    ProbeState probe;
    probe.state.q << uniform(-std::numbers::pi, std::numbers::pi), uniform(-0.3, 1.4),
        uniform(0.5, 15.0), uniform(-1.2, 1.2), uniform(-1.2, 1.2);
    for (int i = 0; i < 5; ++i) probe.state.qdot[i] = uniform(-1.0, 1.0);
    for (int i = 0; i < 5; ++i) probe.qddot[i] = uniform(-2.0, 2.0);
    probe.u << uniform(-5e3, 5e3), uniform(0.0, 2e4), uniform(-1e3, 0.0);
    probes.push_back(probe);
  }
  return probes;
}

ModelMutation ModelMutation::parse(const std::string& spec) {
  const std::string prefix = "flip-sign:";
  if (spec.rfind(prefix, 0) != 0) {
    throw std::invalid_argument("mutation must start with 'flip-sign:': " + spec);
  }
  ModelMutation m;
  bool have_row = false;
  bool have_term = false;
  std::istringstream fields(spec.substr(prefix.size()));
  std::string field;
  while (std::getline(fields, field, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed mutation field: " + field);
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "row") {
      std::size_t used = 0;
      m.row = std::stoi(value, &used);
      if (used != value.size() || m.row < 0 || m.row > 4) {
        throw std::invalid_argument("mutation row must be 0..4: " + value);
      }
      have_row = true;
    } else if (key == "term") {
      if (value == "gravity") {
        m.term = MutationTerm::kGravity;
      } else if (value == "coriolis") {
        m.term = MutationTerm::kCoriolis;
      } else if (value == "inertia") {
        m.term = MutationTerm::kInertia;
      } else {
        throw std::invalid_argument("unknown mutation term: " + value);
      }
      have_term = true;
    } else {
      throw std::invalid_argument("unknown mutation key: " + key);
    }
  }
  if (!have_row || !have_term) throw std::invalid_argument("mutation needs row= and term=");
  return m;
}

void ModelMutation::apply(dynamics::DynamicsMatrices& dm) const {
  switch (term) {
    case MutationTerm::kGravity:
      dm.G[row] = -dm.G[row];
      break;
    case MutationTerm::kCoriolis:
      dm.C.row(row) *= -1.0;
      break;
    case MutationTerm::kInertia:
      dm.M.row(row) *= -1.0;
      break;
  }
}

RowModel closed_form_model(const CraneParameters& p, std::optional<ModelMutation> mutation) {
  return [p, mutation](const GeneralizedState& s, const Vec5& qddot) {
    auto dm = dynamics::dynamics_matrices(s, p);
    if (mutation) mutation->apply(dm);
    return dm.generalized_force(s.qdot, qddot);
  };
}

RowModel oracle_model(const CraneParameters& p, const OracleConfig& cfg) {
  return [p, cfg](const GeneralizedState& s, const Vec5& qddot) {
    return oracle_generalized_force(s, qddot, p, cfg);
  };
}

double TermDiffReport::max_rel_diff() const {
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.rel_diff);
  return worst;
}

double TermDiffReport::max_rel_diff(int row) const {
  double worst = 0.0;
  for (const auto& r : rows) {
    if (r.row == row) worst = std::max(worst, r.rel_diff);
  }
  return worst;
}

std::vector<int> TermDiffReport::rows_exceeding(double tolerance) const {
  std::set<int> hit;
  for (const auto& r : rows) {
    if (r.rel_diff > tolerance) hit.insert(r.row);
  }
  return {hit.begin(), hit.end()};
}

void TermDiffReport::write_csv(std::ostream& os) const {
  csv::Writer w(os);
  w.header({"state_id", "row_index", "closed_form", "oracle", "abs_diff", "rel_diff"});
  for (const auto& r : rows) {
    w.row(static_cast<long long>(r.state_id), static_cast<long long>(r.row), r.closed_form,
          r.oracle, r.abs_diff, r.rel_diff);
  }
}

TermDiffReport term_diff_report(const std::vector<ProbeState>& probes, const RowModel& candidate,
                                const RowModel& reference) {
  if (probes.empty()) throw std::invalid_argument("term_diff_report needs at least one state");
  TermDiffReport report;
  report.rows.reserve(probes.size() * 5);
  for (std::size_t id = 0; id < probes.size(); ++id) {
    const Vec5 a = candidate(probes[id].state, probes[id].qddot);
    const Vec5 b = reference(probes[id].state, probes[id].qddot);
    for (int row = 0; row < 5; ++row) {
      TermDiffRow r;
      r.state_id = id;
      r.row = row;
      r.closed_form = a[row];
      r.oracle = b[row];
      r.abs_diff = std::abs(a[row] - b[row]);
      r.rel_diff = r.abs_diff / std::max({std::abs(a[row]), std::abs(b[row]), 1.0});
      report.rows.push_back(r);
    }
  }
  return report;
}

TermDiffReport term_diff_report(const std::vector<ProbeState>& probes, const CraneParameters& p,
                                const OracleConfig& cfg) {
  return term_diff_report(probes, closed_form_model(p), oracle_model(p, cfg));
}

VerificationResult run_verification(const CraneParameters& p, const OracleConfig& cfg,
                                    std::size_t count, std::uint64_t seed,
                                    std::optional<ModelMutation> mutation) {
  p.validate();
  cfg.validate();
  const auto probes = random_probes(count, seed);
  VerificationResult result;
  result.report = term_diff_report(probes, closed_form_model(p, mutation), oracle_model(p, cfg));

  for (const auto& probe : probes) {
    auto dm = dynamics::dynamics_matrices(probe.state, p);
    Vec5 closed;
    if (mutation) {
      mutation->apply(dm);
      closed = solve_any(dm, probe);
    } else {
      closed = dynamics::forward_dynamics(dm, probe.state.qdot, probe.u, Vec5::Zero());
    }
    const Vec5 reference = oracle_accelerations(probe.state, probe.u, p, cfg);
    const double dev = (closed - reference).lpNorm<Eigen::Infinity>() /
                       std::max(reference.lpNorm<Eigen::Infinity>(), 1.0);
    result.max_acceleration_rel_dev = std::max(result.max_acceleration_rel_dev, dev);
  }
  result.passed = result.max_acceleration_rel_dev < cfg.tolerance &&
                  result.report.max_rel_diff() < cfg.tolerance;
  return result;
}

}  // namespace cranesim::oracle
