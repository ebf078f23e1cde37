#include "cranesim/crane_dynamics.hpp"

#include <array>

#include <Eigen/Cholesky>

namespace cranesim::dynamics {
namespace {

using Jac = Eigen::Matrix<double, 3, 5>;

// Trigonometric terms of one configuration.
struct Trig {
  double sb, cb, s1, c1, s2, c2;
  explicit Trig(const Vec5& q)
      : sb(std::sin(q[kLuff])),
        cb(std::cos(q[kLuff])),
        s1(std::sin(q[kSwingTan])),
        c1(std::cos(q[kSwingTan])),
        s2(std::sin(q[kSwingRad])),
        c2(std::cos(q[kSwingRad])) {}
};

// Payload position in the slew frame.
Vec3 local_position(const Vec5& q, const Trig& t, double l) {
  const double d = q[kRope];
  return {l * t.cb + d * t.s2, d * t.c2 * t.s1, l * t.sb - d * t.c1 * t.c2};
}

// z x v
Vec3 cross_z(const Vec3& v) { return {-v[1], v[0], 0.0}; }

// d r / d q_j for j in 1..4 (r does not depend on alpha).
Vec3 rope_gradient(const Vec5& q, const Trig& t, double l, int j) {
  const double d = q[kRope];
  switch (j) {
    case kLuff:
      return {-l * t.sb, 0.0, l * t.cb};
    case kRope:
      return {t.s2, t.c2 * t.s1, -t.c1 * t.c2};
    case kSwingTan:
      return {0.0, d * t.c2 * t.c1, d * t.c2 * t.s1};
    case kSwingRad:
      return {d * t.c2, -d * t.s2 * t.s1, d * t.s2 * t.c1};
    default:
      return Vec3::Zero();
  }
}

// d^2 r / (d q_j d q_k), symmetric in (j, k).
Vec3 rope_hessian(const Vec5& q, const Trig& t, double l, int j, int k) {
  if (j > k) std::swap(j, k);
  if (j == kSlew) return Vec3::Zero();
  const double d = q[kRope];
  if (j == kLuff) {
    return k == kLuff ? Vec3(-l * t.cb, 0.0, -l * t.sb) : Vec3::Zero();
  }
  if (j == kRope) {
    switch (k) {
      case kSwingTan:
        return {0.0, t.c2 * t.c1, t.c2 * t.s1};
      case kSwingRad:
        return {t.c2, -t.s2 * t.s1, t.s2 * t.c1};
      default:
        return Vec3::Zero();
    }
  }
  if (j == kSwingTan) {
    if (k == kSwingTan) return {0.0, -d * t.c2 * t.s1, d * t.c2 * t.c1};
    return {0.0, -d * t.s2 * t.c1, -d * t.s2 * t.s1};
  }
  return {-d * t.s2, -d * t.c2 * t.s1, d * t.c2 * t.c1};
}

Jac payload_jacobian_impl(const Vec5& q, const Trig& t, double l) {
  Jac J;
  J.col(kSlew) = cross_z(local_position(q, t, l));
  for (int j = 1; j < 5; ++j) J.col(j) = rope_gradient(q, t, l, j);
  return J;
}

Jac payload_jacobian_derivative(const Vec5& q, const Trig& t, double l, int k) {
  Jac dJ = Jac::Zero();
  if (k == kSlew) return dJ;
  dJ.col(kSlew) = cross_z(rope_gradient(q, t, l, k));
  for (int j = 1; j < 5; ++j) dJ.col(j) = rope_hessian(q, t, l, j, k);
  return dJ;
}

Jac boom_jacobian(const Trig& t, double l) {
  const double h = 0.5 * l;
  Jac J = Jac::Zero();
  J.col(kSlew) = Vec3(0.0, h * t.cb, 0.0);
  J.col(kLuff) = Vec3(-h * t.sb, 0.0, h * t.cb);
  return J;
}

Jac boom_jacobian_derivative(const Trig& t, double l, int k) {
  Jac dJ = Jac::Zero();
  if (k != kLuff) return dJ;
  const double h = 0.5 * l;
  dJ.col(kSlew) = Vec3(0.0, -h * t.sb, 0.0);
  dJ.col(kLuff) = Vec3(-h * t.cb, 0.0, -h * t.sb);
  return dJ;
}

Mat5 mass_matrix(const Vec5& q, const Trig& t, const CraneParameters& p) {
  const Jac Jp = payload_jacobian_impl(q, t, p.boom_length);
  const Jac Jb = boom_jacobian(t, p.boom_length);
  Mat5 M = p.payload_mass * Jp.transpose() * Jp + p.boom_mass * Jb.transpose() * Jb;
  M(kSlew, kSlew) += p.tower_inertia;
  M(kLuff, kLuff) += p.boom_inertia;
  return M;
}

Mat5 mass_matrix_derivative_impl(const Vec5& q, const Trig& t, const CraneParameters& p, int k) {
  const double l = p.boom_length;
  const Jac Jp = payload_jacobian_impl(q, t, l);
  const Jac dJp = payload_jacobian_derivative(q, t, l, k);
  Mat5 dM = p.payload_mass * (dJp.transpose() * Jp + Jp.transpose() * dJp);
  if (k == kLuff) {
    const Jac Jb = boom_jacobian(t, l);
    const Jac dJb = boom_jacobian_derivative(t, l, k);
    dM += p.boom_mass * (dJb.transpose() * Jb + Jb.transpose() * dJb);
  }
  return dM;
}

}  // namespace

Eigen::Matrix<double, 5, 3> input_matrix() {
  Eigen::Matrix<double, 5, 3> B = Eigen::Matrix<double, 5, 3>::Zero();
  B.topRows<3>().setIdentity();
  return B;
}

Eigen::Matrix<double, 3, 5> payload_jacobian_local(const GeneralizedState& s,
                                                   const CraneParameters& p) {
  const Trig t(s.q);
  return payload_jacobian_impl(s.q, t, p.boom_length);
}

Eigen::Matrix<double, 3, 5> payload_jacobian(const GeneralizedState& s, const CraneParameters& p) {
  const Jac local = payload_jacobian_local(s, p);
  const double ca = std::cos(s.alpha());
  const double sa = std::sin(s.alpha());
  Mat3 R;
  R << ca, -sa, 0.0, sa, ca, 0.0, 0.0, 0.0, 1.0;
  return R * local;
}

Mat5 mass_matrix_derivative(const GeneralizedState& s, const CraneParameters& p, int k) {
  const Trig t(s.q);
  return mass_matrix_derivative_impl(s.q, t, p, k);
}

DynamicsMatrices dynamics_matrices(const GeneralizedState& s, const CraneParameters& p) {
  s.validate();
  const Trig t(s.q);
  DynamicsMatrices dm;
  dm.M = mass_matrix(s.q, t, p);
  // Symmetrize away rounding so M == M^T holds bit-for-bit.
  dm.M = (0.5 * (dm.M + dm.M.transpose())).eval();

  // C_ij = sum_k 1/2 (dM_ij/dq_k + dM_ik/dq_j - dM_jk/dq_i) qdot_k
  std::array<Mat5, 5> dM;
  for (int k = 0; k < 5; ++k) dM[k] = mass_matrix_derivative_impl(s.q, t, p, k);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      double c = 0.0;
      for (int k = 0; k < 5; ++k) {
        c += 0.5 * (dM[k](i, j) + dM[j](i, k) - dM[i](j, k)) * s.qdot[k];
      }
      dm.C(i, j) = c;
    }
  }

  const Jac Jp = payload_jacobian_impl(s.q, t, p.boom_length);
  const Jac Jb = boom_jacobian(t, p.boom_length);
  dm.G = p.gravity * (p.payload_mass * Jp.row(2).transpose() + p.boom_mass * Jb.row(2).transpose());
  return dm;
}

Vec5 forward_dynamics(const DynamicsMatrices& dm, const Vec5& qdot, const ActuationInput& u,
                      const Vec5& f_ext) {
  const Eigen::LLT<Mat5> llt(dm.M);
  if (llt.info() != Eigen::Success || llt.rcond() < kMinMassRcond) {
    throw DomainError("inertia matrix is numerically singular");
  }
  const Vec5 rhs = input_matrix() * u + f_ext - dm.C * qdot - dm.G;
  return llt.solve(rhs);
}

Vec5 forward_dynamics(const GeneralizedState& s, const ActuationInput& u, const Vec5& f_ext,
                      const CraneParameters& p) {
  return forward_dynamics(dynamics_matrices(s, p), s.qdot, u, f_ext);
}

double potential_energy(const GeneralizedState& s, const CraneParameters& p) {
  const Trig t(s.q);
  const double z_payload = p.boom_length * t.sb - s.rope() * t.c1 * t.c2;
  return p.payload_mass * p.gravity * z_payload +
         p.boom_mass * p.gravity * 0.5 * p.boom_length * t.sb;
}

double kinetic_energy(const GeneralizedState& s, const CraneParameters& p) {
  const Trig t(s.q);
  return 0.5 * s.qdot.dot(mass_matrix(s.q, t, p) * s.qdot);
}

double total_energy(const GeneralizedState& s, const CraneParameters& p) {
  return kinetic_energy(s, p) + potential_energy(s, p);
}

}  // namespace cranesim::dynamics
