// Independent derivation of the equations of motion: the Lagrangian is built
// from kinematics alone (payload and boom centre-of-mass positions), and every
// derivative in the Euler-Lagrange operator is taken numerically with central
// differences plus Richardson extrapolation.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cranesim/crane_dynamics.hpp"
#include "cranesim/types.hpp"

namespace cranesim::oracle {

struct OracleConfig {
  double fd_step_q = 1e-3;  // relative step for coordinate perturbations
  double fd_step_t = 1e-3;  // s, step for the total time derivative
  double tolerance = 1e-6;  // relative agreement threshold

  /// Steps must lie in (0, 1e-2], tolerance must be positive.
  void validate() const;
};

/// Raised when the two Richardson levels of a derivative disagree.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// L = T - U. Payload and boom velocities come from complex-step derivatives
/// of their position functions along qdot.
double lagrangian(const GeneralizedState& s, const CraneParameters& p);

/// d/dt(dL/dqdot) - dL/dq evaluated at (q, qdot, qddot).
Vec5 oracle_generalized_force(const GeneralizedState& s, const Vec5& qddot,
                              const CraneParameters& p, const OracleConfig& cfg = {});

/// Solves the numerically derived Euler-Lagrange equations for qddot with
/// B u + f_ext on the right-hand side. Throws NonConvergence when the
/// extrapolated derivatives are not self-consistent within cfg.tolerance.
Vec5 oracle_accelerations(const GeneralizedState& s, const ActuationInput& u,
                          const CraneParameters& p, const OracleConfig& cfg = {},
                          const Vec5& f_ext = Vec5::Zero());

// --- comparison tooling -----------------------------------------------------

/// A configuration together with a probe acceleration and input used when
/// comparing models row by row.
struct ProbeState {
  GeneralizedState state;
  Vec5 qddot = Vec5::Zero();
  ActuationInput u = ActuationInput::Zero();
};

/// Seeded random probes with |theta_i| <= 1.2 rad and d in [0.5, 15] m.
std::vector<ProbeState> random_probes(std::size_t count, std::uint64_t seed);

/// Row model: maps (state, qddot) to the five generalized forces on the
/// left-hand side of the equations of motion.
using RowModel = std::function<Vec5(const GeneralizedState&, const Vec5&)>;

enum class MutationTerm { kGravity, kCoriolis, kInertia };

/// Deliberate defect injected into the closed-form model (sign flip of one
/// term in one row). Used to check that the comparison isolates faults.
struct ModelMutation {
  int row = 0;
  MutationTerm term = MutationTerm::kGravity;

  /// Parses "flip-sign:row=<0..4>,term=<gravity|coriolis|inertia>".
  static ModelMutation parse(const std::string& spec);
  void apply(dynamics::DynamicsMatrices& dm) const;
};

RowModel closed_form_model(const CraneParameters& p,
                           std::optional<ModelMutation> mutation = std::nullopt);
RowModel oracle_model(const CraneParameters& p, const OracleConfig& cfg = {});

struct TermDiffRow {
  std::size_t state_id = 0;
  int row = 0;
  double closed_form = 0.0;
  double oracle = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;  // abs_diff / max(|closed_form|, |oracle|, 1)
};

struct TermDiffReport {
  std::vector<TermDiffRow> rows;

  double max_rel_diff() const;
  /// Rows whose rel_diff exceeds `tolerance`, as distinct row indices.
  std::vector<int> rows_exceeding(double tolerance) const;
  /// Maximum rel_diff restricted to one equation row.
  double max_rel_diff(int row) const;
  void write_csv(std::ostream& os) const;
};

/// Per-state, per-row difference between `candidate` and `reference`.
TermDiffReport term_diff_report(const std::vector<ProbeState>& probes, const RowModel& candidate,
                                const RowModel& reference);

/// Closed-form dynamics against the oracle.
TermDiffReport term_diff_report(const std::vector<ProbeState>& probes, const CraneParameters& p,
                                const OracleConfig& cfg = {});

struct VerificationResult {
  TermDiffReport report;
  double max_acceleration_rel_dev = 0.0;  // ||dq||_inf / max(||qddot_oracle||_inf, 1)
  bool passed = false;
};

/// Runs the seeded oracle suite: generalized-force report plus forward
/// dynamics against oracle accelerations, both judged at cfg.tolerance.
VerificationResult run_verification(const CraneParameters& p, const OracleConfig& cfg,
                                    std::size_t count, std::uint64_t seed,
                                    std::optional<ModelMutation> mutation = std::nullopt);

}  // namespace cranesim::oracle
