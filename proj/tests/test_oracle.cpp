#include <gtest/gtest.h>

#include <cmath>

#include "uavtraj/oracle.hpp"

using namespace uavtraj;
using namespace uavtraj::oracle;

namespace {

const BoundaryConditions kUnit{TimeWindow(0, 1), Vec2{1, 0}, Vec2{0, 1}};

}  // namespace

TEST(Oracle, RejectsBadGrids) {
  EXPECT_THROW(DiscreteTrajectory::straight_line(kUnit, 4), Error);
  std::vector<Vec2> pts(11, Vec2{0, 0});
  EXPECT_THROW(DiscreteTrajectory(kUnit, pts), Error);
  auto line = DiscreteTrajectory::straight_line(kUnit, 10);
  EXPECT_THROW(line.set_interior(0, Vec2{}), Error);
  EXPECT_THROW(line.set_interior(10, Vec2{}), Error);
}

TEST(Oracle, StraightLineKineticAction) {
  const auto line = DiscreteTrajectory::straight_line(kUnit, 100);
  EXPECT_EQ(line.intervals(), 100);
  EXPECT_NEAR(line.step(), 0.01, 1e-17);
  // K/2 |zT - z0|^2 / d with zero potential.
  EXPECT_NEAR(discrete_action(line, Potential::zero().value, 2.0), 2.0, 1e-12);
}

TEST(Oracle, QuadraticPotentialMidpointRule) {
  // Constant position: only the potential term survives.
  const BoundaryConditions still{TimeWindow(0, 2), Vec2{3, 4}, Vec2{3, 4}};
  const auto line = DiscreteTrajectory::straight_line(still, 16);
  const QuadraticPhase p(-2, 1, Vec2{}, 1);
  EXPECT_NEAR(discrete_action(line, Potential::of(p).value, 1.0), -2.0 * (-25.0 + 1.0), 1e-12);
}

TEST(Oracle, DirectMethodRecoversHotSpotTrajectory) {
  const QuadraticPhase p(-1, 0, Vec2{}, 1);
  const auto exact = plan_single_phase(p, kUnit);
  const DirectResult r = direct_optimize(Potential::of(p), 1.0, kUnit, DirectOptions{1000, 2000, 1e-10});
  EXPECT_TRUE(r.converged);
  EXPECT_LE(max_deviation(r.trajectory, DiscreteTrajectory::sample(exact, 1000)), 1e-5);
  EXPECT_NEAR(r.action, action_closed_form(p, kUnit).action, 1e-5);
}

TEST(Oracle, DirectMethodRecoversHoleTrajectory) {
  const QuadraticPhase p(2, 0.5, Vec2{1, 1}, 1.5);
  const BoundaryConditions bc{TimeWindow(0, 2), Vec2{-1, 0}, Vec2{2, 3}};
  ASSERT_LT(p.omega() * 2, 3.14159);
  const auto exact = plan_single_phase(p, bc);
  const DirectResult r = direct_optimize(Potential::of(p), p.k(), bc, DirectOptions{2000, 5000, 1e-10});
  EXPECT_TRUE(r.converged);
  EXPECT_LE(max_deviation(r.trajectory, DiscreteTrajectory::sample(exact, 2000)), 1e-4);
}

TEST(Oracle, ClosedFormSamplesSatisfyDiscreteEulerLagrange) {
  const QuadraticPhase p(-3, 0, Vec2{1, 0}, 2);
  const BoundaryConditions bc{TimeWindow(0, 2), Vec2{-1, 0}, Vec2{2, 3}};
  const auto samples = DiscreteTrajectory::sample(plan_single_phase(p, bc), 2000);
  EXPECT_LE(euler_lagrange_residual(samples, p), 1e-4);
  const auto line = DiscreteTrajectory::straight_line(bc, 2000);
  EXPECT_GT(euler_lagrange_residual(line, p), 1.0);
}

TEST(Oracle, MaxDeviationRequiresMatchingGrids) {
  const auto a = DiscreteTrajectory::straight_line(kUnit, 10);
  const auto b = DiscreteTrajectory::straight_line(kUnit, 12);
  EXPECT_THROW(max_deviation(a, b), Error);
  EXPECT_EQ(max_deviation(a, a), 0.0);
}
