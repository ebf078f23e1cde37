#include "cranesim/expanded_equations.hpp"

#include <cmath>

namespace cranesim::oracle {

Vec5 expanded_equations_lhs(const GeneralizedState& s, const Vec5& qddot, const CraneParameters& p,
                            SwingAlias alias) {
  const double It = p.tower_inertia, IB = p.boom_inertia, l = p.boom_length;
  const double mB = p.boom_mass, m = p.payload_mass, g = p.gravity;

  const double d = s.rope();
  const double ad = s.qdot[kSlew], bd = s.qdot[kLuff], dd = s.qdot[kRope];
  const double t1d = s.qdot[kSwingTan], t2d = s.qdot[kSwingRad];
  const double add = qddot[kSlew], bdd = qddot[kLuff], ddd = qddot[kRope];
  const double t1dd = qddot[kSwingTan], t2dd = qddot[kSwingRad];

  const double Sb = std::sin(s.beta()), Cb = std::cos(s.beta());
  const double S2b = std::sin(2.0 * s.beta());
  const double S1 = std::sin(s.theta1()), C1 = std::cos(s.theta1());
  const double S2 = std::sin(s.theta2()), C2 = std::cos(s.theta2());
  const double S2t2 = std::sin(2.0 * s.theta2());
  const double S3 = std::sin(s.q[alias.theta3]);
  const double S4 = std::sin(s.q[alias.theta4]), C4 = std::cos(s.q[alias.theta4]);

  Vec5 lhs;

  // slew
  lhs[0] = It * add + d * d * add * m + add * l * l * m * Cb * Cb + (add * l * l * mB * Cb * Cb) / 4.0
           - d * d * t2dd * m * S3
           + 2.0 * dd * d * ad * m - 2.0 * d * d * t1d * t2d * m * C1
           - d * d * add * m * C1 * C1 * C4 * C4 - ad * bd * l * l * m * S2b
           - (ad * bd * l * l * mB * S2b) / 4.0 - 2.0 * dd * d * t2d * m * S3
           + ddd * l * m * Cb * C4 * S3
           - 2.0 * dd * d * ad * m * C1 * C1 * C4 * C4 + 2.0 * d * d * t1d * t2d * m * C1 * C4 * C4
           + d * d * t1dd * m * C1 * C4 * S4
           + 2.0 * d * add * l * m * Cb * S4 + 2.0 * dd * ad * l * m * Cb * S4
           - d * d * t1d * t1d * m * C4 * S3 * S4
           + 2.0 * d * ad * t2d * l * m * Cb * C4 - 2.0 * d * ad * bd * l * m * Sb * S4
           + 2.0 * d * d * ad * t2d * m * C1 * C1 * C4 * S4 + d * t1dd * l * m * Cb * C1 * C4
           + 2.0 * dd * t1d * l * m * Cb * C1 * C4 + 2.0 * dd * d * t1d * m * C1 * C4 * S4
           + d * bdd * l * m * C4 * Sb * S3 - d * t2dd * l * m * Cb * S3 * S4
           - 2.0 * dd * t2d * l * m * Cb * S3 * S4 + d * bd * bd * l * m * Cb * C4 * S3
           - d * t1d * t1d * l * m * Cb * C4 * S3 + 2.0 * d * d * ad * t1d * m * C1 * C4 * C4 * S3
           - d * t2d * t2d * l * m * Cb * C4 * S3 - 2.0 * d * t1d * t2d * l * m * Cb * C1 * S4;

  // luff
  lhs[1] = IB * bdd + bdd * l * l * m + (bdd * l * l * mB) / 4.0 + g * l * m * Cb
           + (g * l * mB * Cb) / 2.0
           + (ad * ad * l * l * m * S2b) / 2.0 + (ad * ad * l * l * mB * S2b) / 8.0
           - ddd * l * m * Sb * S2
           - ddd * l * m * Cb * C1 * C2 + d * ad * ad * l * m * Sb * S2
           + d * t2d * t2d * l * m * Sb * S2
           - d * t2dd * l * m * C2 * Sb - 2.0 * dd * t2d * l * m * C2 * Sb
           + d * t1dd * l * m * Cb * C2 * S1
           + d * t2dd * l * m * Cb * C1 * S2 + 2.0 * dd * t1d * l * m * Cb * C2 * S1
           + 2.0 * dd * t2d * l * m * Cb * C1 * S2 + d * add * l * m * C2 * Sb * S1
           + 2.0 * dd * ad * l * m * C2 * Sb * S1 + d * t1d * t1d * l * m * Cb * C1 * C2
           + d * t2d * t2d * l * m * Cb * C1 * C2 - 2.0 * d * t1d * t2d * l * m * Cb * S1 * S2
           - 2.0 * d * ad * t2d * l * m * Sb * S1 * S2 + 2.0 * d * ad * t1d * l * m * C1 * C2 * Sb;

  // hoist
  lhs[2] = ddd * m - d * ad * ad * m - d * t2d * t2d * m - d * t1d * t1d * m * C2 * C2
           - g * m * C1 * C2
           + d * ad * ad * m * C1 * C1 * C2 * C2 - bdd * l * m * Sb * S2 - ad * ad * l * m * Cb * S2
           - bd * bd * l * m * Cb * S2 + 2.0 * d * ad * t2d * m * S1 - bdd * l * m * Cb * C1 * C2
           + add * l * m * Cb * C2 * S1 + bd * bd * l * m * C1 * C2 * Sb
           - 2.0 * d * ad * t1d * m * C1 * C2 * S2 - 2.0 * ad * bd * l * m * C2 * Sb * S1;

  // tangential swing
  lhs[3] = d * m * C2 *
           (g * S1 + 2.0 * dd * t1d * C2 + d * t1dd * C2 - bd * bd * l * Sb * S1
            - 2.0 * d * t1d * t2d * S2 + add * l * Cb * C1 + d * add * C1 * S2 + 2.0 * dd * ad * C1 * S2
            + bdd * l * Cb * S1 - d * ad * ad * C1 * C2 * S1 + 2.0 * d * ad * t2d * C1 * C2
            - 2.0 * ad * bd * l * C1 * Sb);

  // radial swing
  lhs[4] = -d * m *
           (d * add * S1 - 2.0 * dd * t2d - d * t2dd + 2.0 * dd * ad * S1 - g * C1 * S2
            - (d * t1d * t1d * S2t2) / 2.0 + ad * ad * l * Cb * C2 + bd * bd * l * Cb * C2
            + bdd * l * C2 * Sb + bd * bd * l * C1 * Sb * S2 + d * ad * ad * C1 * C1 * C2 * S2
            + 2.0 * d * ad * t1d * C1 * C2 * C2 - bdd * l * Cb * C1 * S2 + add * l * Cb * S1 * S2
            - 2.0 * ad * bd * l * Sb * S1 * S2);
  return lhs;
}

}  // namespace cranesim::oracle
