#include "cranesim/wind_disturbance.hpp"

#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cranesim/crane_dynamics.hpp"
#include "test_support.hpp"

namespace cranesim::wind {
namespace {

const CraneParameters kParams;

GustProfile gust() {
  GustProfile g;
  g.start_time = 10.0;
  g.ramp_up = 2.0;
  g.plateau = 3.0;
  g.ramp_down = 1.0;
  g.peak_speed = 12.0;
  return g;
}

TEST(WindSpeed, TrapezoidShape) {
  const auto g = gust();
  EXPECT_EQ(wind_speed(0.0, g), 0.0);
  EXPECT_EQ(wind_speed(10.0, g), 0.0);
  EXPECT_NEAR(wind_speed(11.0, g), 6.0, 1e-12);
  EXPECT_NEAR(wind_speed(12.0, g), 12.0, 1e-12);
  EXPECT_NEAR(wind_speed(13.5, g), 12.0, 1e-12);
  EXPECT_NEAR(wind_speed(15.5, g), 6.0, 1e-12);
  EXPECT_NEAR(wind_speed(16.0, g), 0.0, 1e-12);
  EXPECT_EQ(wind_speed(30.0, g), 0.0);
  EXPECT_DOUBLE_EQ(g.end_time(), 16.0);
}

TEST(WindSpeed, ContinuousAcrossBreakpoints) {
  const auto g = gust();
  for (double t : {10.0, 12.0, 15.0, 16.0}) {
    EXPECT_NEAR(wind_speed(t - 1e-9, g), wind_speed(t + 1e-9, g), 1e-7) << t;
  }
}

TEST(DragForce, MagnitudeAtFifteenMetresPerSecond) {
  GustProfile g = gust();
  g.peak_speed = 15.0;
  const Vec3 f = drag_force(13.0, g, DragConfig{}, 0.0);
  EXPECT_NEAR(f.norm(), 0.5 * 1.225 * 225.0 * 0.5 * 1.05, 1e-12);
  EXPECT_NEAR(f.norm(), 72.3, 0.1);
  EXPECT_EQ(drag_force(5.0, g, DragConfig{}, 0.0), Vec3::Zero());
}

TEST(GustDirection, FollowsSlewFrame) {
  GustProfile g = gust();
  g.mode = DirectionMode::kTangential;
  EXPECT_LT((gust_direction(g, 0.0) - Vec3::UnitY()).norm(), 1e-15);
  EXPECT_LT((gust_direction(g, std::numbers::pi / 2) + Vec3::UnitX()).norm(), 1e-15);
  g.mode = DirectionMode::kRadial;
  EXPECT_LT((gust_direction(g, 0.0) - Vec3::UnitX()).norm(), 1e-15);
  g.mode = DirectionMode::kWorld;
  g.direction = Vec3::UnitZ();
  EXPECT_EQ(gust_direction(g, 1.0), Vec3::UnitZ());
}

TEST(GeneralizedForce, TangentialPushLoadsSlewAndTangentialSwing) {
  const auto s = GeneralizedState::at_rest(0.0, 0.0, 5.0);
  const Vec3 f(0.0, 10.0, 0.0);
  const Vec5 Q = generalized_force(s, f, kParams);
  EXPECT_NEAR(Q[kSwingTan], 5.0 * 10.0, 1e-12);
  EXPECT_NEAR(Q[kSlew], 6.2 * 10.0, 1e-12);
  EXPECT_NEAR(Q[kSwingRad], 0.0, 1e-12);
  EXPECT_NEAR(Q[kRope], 0.0, 1e-12);
}

TEST(GeneralizedForce, RadialPushLoadsRadialSwing) {
  const auto s = GeneralizedState::at_rest(0.0, 0.3, 4.0);
  const Vec5 Q = generalized_force(s, Vec3(10.0, 0.0, 0.0), kParams);
  EXPECT_NEAR(Q[kSwingRad], 40.0, 1e-12);
  EXPECT_NEAR(Q[kSwingTan], 0.0, 1e-12);
}

TEST(GeneralizedForce, VirtualWorkMatchesPayloadPower) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = testing::random_state(rng);
    const Vec3 f(30.0, -20.0, 5.0);
    const Vec5 Q = generalized_force(s, f, kParams);
    const Vec3 v = dynamics::payload_jacobian(s, kParams) * s.qdot;
    EXPECT_NEAR(Q.dot(s.qdot), f.dot(v), 1e-9 * std::max(1.0, std::abs(f.dot(v))));

    // Finite-difference Jacobian transpose applied to the force.
    Vec5 fd;
    const double h = 1e-6;
    for (int k = 0; k < 5; ++k) {
      GeneralizedState up = s, dn = s;
      up.q[k] += h;
      dn.q[k] -= h;
      fd[k] = f.dot(dynamics::payload_position(up, kParams) -
                    dynamics::payload_position(dn, kParams)) / (2 * h);
    }
    EXPECT_LT(testing::scaled_diff(Q, fd), 1e-7);
  }
}

TEST(GustProfile, ValidationAndEnvelope) {
  auto g = gust();
  EXPECT_NO_THROW(g.validate());
  EXPECT_TRUE(g.envelope_warnings().empty());
  g.peak_speed = 30.0;
  g.plateau = 10.0;
  EXPECT_EQ(g.envelope_warnings().size(), 2u);
  g = gust();
  g.ramp_up = -1.0;
  EXPECT_THROW(g.validate(), DomainError);
  g = gust();
  g.mode = DirectionMode::kWorld;
  g.direction = Vec3(1.0, 1.0, 0.0);
  EXPECT_THROW(g.validate(), DomainError);
  DragConfig d;
  d.area = 0.0;
  EXPECT_THROW(d.validate(), DomainError);
}

}  // namespace
}  // namespace cranesim::wind
