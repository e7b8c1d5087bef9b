#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "support/reference.hpp"
#include "uavtraj/vec2.hpp"

using uavtraj::BoundaryConditions;
using uavtraj::Error;
using uavtraj::ErrorKind;
using uavtraj::TimeWindow;
using uavtraj::Vec2;

TEST(Vec2, BasicOperations) {
  EXPECT_EQ(uavtraj::dot(Vec2{1, 0}, Vec2{0, 1}), 0.0);
  EXPECT_EQ(uavtraj::norm(Vec2{3, 4}), 5.0);
  EXPECT_EQ(Vec2(1, 2) * 2.0, Vec2(2, 4));
  EXPECT_EQ(Vec2(1, 2) + Vec2(3, -1), Vec2(4, 1));
  EXPECT_EQ(Vec2(1, 2) - Vec2(3, -1), Vec2(-2, 3));
  EXPECT_EQ(-Vec2(1, -2), Vec2(-1, 2));
}

TEST(Vec2, RejectsNonFinite) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(Vec2(std::nan(""), 0.0), Error);
  EXPECT_THROW(Vec2(0.0, inf), Error);
  // Overflowing arithmetic cannot smuggle infinities through.
  EXPECT_THROW(Vec2(1e308, 0.0) * 10.0, Error);
}

TEST(Vec2, NormSquaredMatchesDot) {
  ref::Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 v = rng.vec(-1e3, 1e3);
    const double n = uavtraj::norm(v);
    EXPECT_NEAR(n * n, uavtraj::dot(v, v), 4.0 * std::numeric_limits<double>::epsilon() * uavtraj::dot(v, v));
  }
}

TEST(TimeWindow, RequiresIncreasingBounds) {
  EXPECT_NO_THROW(TimeWindow(0.0, 1.0));
  try {
    TimeWindow(1.0, 1.0);
    FAIL() << "expected rejection";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
  EXPECT_THROW(TimeWindow(2.0, 1.0), Error);
  EXPECT_THROW(TimeWindow(0.0, std::numeric_limits<double>::infinity()), Error);
}

TEST(BoundaryConditions, ForwardsWindow) {
  const BoundaryConditions bc{TimeWindow(1.0, 3.5), Vec2{0, 0}, Vec2{1, 1}};
  EXPECT_EQ(bc.t0(), 1.0);
  EXPECT_EQ(bc.T(), 3.5);
  EXPECT_EQ(bc.duration(), 2.5);
}
