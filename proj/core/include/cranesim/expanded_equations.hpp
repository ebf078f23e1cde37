// Term-by-term scalar expansion of the five equations of motion, written out
// the way they are usually printed (one long sum per coordinate). The slew row
// is published with two swing symbols beyond theta1/theta2; `SwingAlias`
// selects which coordinates those symbols are read as, so the oracle can
// arbitrate between readings.
#pragma once

#include "cranesim/types.hpp"

namespace cranesim::oracle {

struct SwingAlias {
  int theta3 = kSwingTan;  // coordinate index read for the third swing symbol
  int theta4 = kSwingRad;  // coordinate index read for the fourth swing symbol
};

/// Left-hand sides of the expanded slew, luff, hoist and two swing equations
/// at (q, qdot, qddot). Rows 0..2 equal u, rows 3..4 equal zero.
Vec5 expanded_equations_lhs(const GeneralizedState& s, const Vec5& qddot, const CraneParameters& p,
                            SwingAlias alias = {});

}  // namespace cranesim::oracle
