#include "cranesim/lagrangian_oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace cranesim::oracle {
namespace {

const CraneParameters kParams;

TEST(Lagrangian, AtRestEqualsMinusPotential) {
  const auto s = GeneralizedState::at_rest(0.4, 0.0, 5.0);
  EXPECT_NEAR(lagrangian(s, kParams), 2452.5, 1e-9);
}

TEST(Lagrangian, MatchesClosedFormEnergies) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto s = testing::random_state(rng);
    const double expected =
        dynamics::kinetic_energy(s, kParams) - dynamics::potential_energy(s, kParams);
    EXPECT_NEAR(lagrangian(s, kParams), expected, 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(OracleConfig, RejectsStepsOutsideRange) {
  OracleConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.fd_step_q = 0.0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg.fd_step_q = 0.02;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.tolerance = -1.0;
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(Oracle, GeneralizedForceMatchesClosedForm) {
  const auto probes = random_probes(25, 3);
  for (const auto& pr : probes) {
    const Vec5 expected =
        dynamics::dynamics_matrices(pr.state, kParams).generalized_force(pr.state.qdot, pr.qddot);
    const Vec5 got = oracle_generalized_force(pr.state, pr.qddot, kParams);
    EXPECT_LT(testing::scaled_diff(got, expected), 1e-7) << describe(pr.state);
  }
}

TEST(Oracle, HalvingStepsLeavesResultUnchanged) {
  OracleConfig coarse;
  OracleConfig fine;
  fine.fd_step_q = coarse.fd_step_q / 2;
  fine.fd_step_t = coarse.fd_step_t / 2;
  for (const auto& pr : random_probes(10, 21)) {
    const Vec5 a = oracle_generalized_force(pr.state, pr.qddot, kParams, coarse);
    const Vec5 b = oracle_generalized_force(pr.state, pr.qddot, kParams, fine);
    EXPECT_LT(testing::scaled_diff(a, b), 1e-8);
  }
}

TEST(Oracle, AccelerationsMatchForwardDynamics) {
  for (const auto& pr : random_probes(10, 5)) {
    const Vec5 f = Vec5::Constant(3.0);
    const Vec5 expected = dynamics::forward_dynamics(pr.state, pr.u, f, kParams);
    const Vec5 got = oracle_accelerations(pr.state, pr.u, kParams, {}, f);
    EXPECT_LT(testing::scaled_diff(got, expected), 1e-7);
  }
}

TEST(Oracle, ImpossiblyTightToleranceReportsNonConvergence) {
  OracleConfig cfg;
  cfg.tolerance = 1e-300;
  const auto pr = random_probes(1, 9).front();
  EXPECT_THROW(oracle_generalized_force(pr.state, pr.qddot, kParams, cfg), NonConvergence);
}

TEST(RandomProbes, AreSeededAndInsideDomain) {
  const auto a = random_probes(50, 77);
  const auto b = random_probes(50, 77);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].state.q, b[i].state.q);
    EXPECT_EQ(a[i].qddot, b[i].qddot);
    EXPECT_TRUE(a[i].state.is_valid());
    EXPECT_GE(a[i].state.rope(), 0.5);
    EXPECT_LE(std::abs(a[i].state.theta1()), 1.2);
  }
  EXPECT_NE(random_probes(1, 78).front().state.q, a.front().state.q);
}

TEST(ModelMutation, ParsesSpec) {
  const auto m = ModelMutation::parse("flip-sign:row=2,term=gravity");
  EXPECT_EQ(m.row, 2);
  EXPECT_EQ(m.term, MutationTerm::kGravity);
  EXPECT_EQ(ModelMutation::parse("flip-sign:row=4,term=coriolis").term, MutationTerm::kCoriolis);
  EXPECT_EQ(ModelMutation::parse("flip-sign:row=0,term=inertia").term, MutationTerm::kInertia);
  for (const char* bad : {"", "flip-sign:row=5,term=gravity", "flip-sign:row=1",
                          "swap:row=1,term=gravity", "flip-sign:row=1,term=friction"}) {
    EXPECT_THROW(ModelMutation::parse(bad), std::invalid_argument) << bad;
  }
}

class MutationIsolation
    : public ::testing::TestWithParam<std::tuple<int, MutationTerm>> {};

TEST_P(MutationIsolation, ReportFlagsOnlyTheMutatedRow) {
  const auto [row, term] = GetParam();
  const auto probes = random_probes(8, 13);
  const auto report = term_diff_report(probes, closed_form_model(kParams, ModelMutation{row, term}),
                                       oracle_model(kParams));
  if (row == 0 && term == MutationTerm::kGravity) {
    // Gravity does no work on the slew axis, so there is nothing to flip.
    EXPECT_TRUE(report.rows_exceeding(1e-6).empty());
  } else {
    EXPECT_EQ(report.rows_exceeding(1e-6), std::vector<int>{row});
  }
}

INSTANTIATE_TEST_SUITE_P(AllRowsAndTerms, MutationIsolation,
                         ::testing::Combine(::testing::Range(0, 5),
                                            ::testing::Values(MutationTerm::kGravity,
                                                              MutationTerm::kCoriolis,
                                                              MutationTerm::kInertia)));

TEST(Verification, ShippedModelPasses) {
  const auto result = run_verification(kParams, {}, 20, 7);
  EXPECT_TRUE(result.passed);
  EXPECT_LT(result.max_acceleration_rel_dev, 1e-6);
  EXPECT_LT(result.report.max_rel_diff(), 1e-6);
  EXPECT_EQ(result.report.rows.size(), 100u);
}

TEST(Verification, ReportIsDeterministicAndWellFormed) {
  const auto a = run_verification(kParams, {}, 5, 7);
  const auto b = run_verification(kParams, {}, 5, 7);
  std::ostringstream sa, sb;
  a.report.write_csv(sa);
  b.report.write_csv(sb);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(sa.str().substr(0, sa.str().find('\n')),
            "state_id,row_index,closed_form,oracle,abs_diff,rel_diff");
}

TEST(Verification, MutationFailsAndIsolatesRow) {
  const auto result =
      run_verification(kParams, {}, 10, 7, ModelMutation{2, MutationTerm::kGravity});
  EXPECT_FALSE(result.passed);
  EXPECT_EQ(result.report.rows_exceeding(1e-6), std::vector<int>{2});
  EXPECT_LT(result.report.max_rel_diff(0), 1e-6);
  EXPECT_GT(result.report.max_rel_diff(2), 1e-3);
}

}  // namespace
}  // namespace cranesim::oracle
