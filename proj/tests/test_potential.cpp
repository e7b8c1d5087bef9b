#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "support/reference.hpp"
#include "uavtraj/potential.hpp"

using namespace uavtraj;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(QuadraticPhase, DerivesOmega) {
  const QuadraticPhase p(-2.0, 0.0, Vec2{}, 0.5);
  EXPECT_NEAR(p.omega() * p.omega() * p.k(), 2.0, 1e-12 * 2.0);
  EXPECT_EQ(p.regime(), Regime::Hyperbolic);
  EXPECT_EQ(QuadraticPhase(1.0, 0.0, Vec2{}, 1.0).regime(), Regime::Trigonometric);
  EXPECT_EQ(QuadraticPhase(0.0, 0.0, Vec2{}, 1.0, true).regime(), Regime::Linear);
}

TEST(QuadraticPhase, RejectsInvalidParameters) {
  EXPECT_EQ(kind_of([] { QuadraticPhase(-1.0, 0.0, Vec2{}, 0.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { QuadraticPhase(0.0, 0.0, Vec2{}, 1.0); }), ErrorKind::InvalidArgument);
}

TEST(TrafficIntensity, Examples) {
  EXPECT_EQ(traffic_intensity(QuadraticPhase(-2, 5, Vec2{0, 0}, 1), Vec2{0, 0}), 5.0);
  EXPECT_EQ(traffic_intensity(QuadraticPhase(2, 0, Vec2{1, 0}, 1), Vec2{1, 1}), 1.0);
  EXPECT_EQ(traffic_intensity(QuadraticPhase(-2, 0, Vec2{0, 0}, 1), Vec2{3, 4}), -25.0);
}

TEST(TrafficIntensity, GradientMatchesFiniteDifference) {
  const QuadraticPhase p(-1.5, 0.3, Vec2{1, -2}, 2.0);
  ref::Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Vec2 z = rng.vec(-5, 5);
    const Vec2 fd = ref::gradient([&](const Vec2& x) { return traffic_intensity(p, x); }, z, 1e-5);
    EXPECT_NEAR(norm(fd - traffic_gradient(p, z)), 0.0, 1e-7);
  }
}

TEST(ReduceHotspots, Examples) {
  {
    const std::vector<HotspotTerm> terms{{1.0, Vec2{0, 0}}, {1.0, Vec2{2, 0}}};
    const QuadraticPhase p = reduce_hotspots(terms, 1.0);
    EXPECT_EQ(p.center(), Vec2(1, 0));
    EXPECT_EQ(p.u0(), 2.0);
  }
  {
    const std::vector<HotspotTerm> terms{{-3.0, Vec2{1, 1}}};
    const QuadraticPhase p = reduce_hotspots(terms, 1.0, 0.75);
    EXPECT_EQ(p.center(), Vec2(1, 1));
    EXPECT_EQ(p.u0(), -3.0);
    EXPECT_EQ(p.u1(), 0.75);
  }
  {
    const std::vector<HotspotTerm> terms{{1.0, Vec2{0, 0}}, {-2.0, Vec2{3, 0}}};
    const QuadraticPhase p = reduce_hotspots(terms, 1.0);
    EXPECT_NEAR(p.center().x(), 6.0, 1e-15);
    EXPECT_EQ(p.center().y(), 0.0);
    EXPECT_EQ(p.u0(), -1.0);
  }
}

TEST(ReduceHotspots, SumZeroRejected) {
  const std::vector<HotspotTerm> terms{{1.0, Vec2{0, 0}}, {-1.0, Vec2{3, 0}}};
  EXPECT_EQ(kind_of([&] { reduce_hotspots(terms, 1.0); }), ErrorKind::SumZero);
}

TEST(ReduceHotspots, EquivalentToSumForm) {
  ref::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4;
    std::vector<HotspotTerm> terms;
    for (int i = 0; i < n; ++i) terms.push_back({rng.uniform(-3, 2), rng.vec(-4, 4)});
    double total = 0.0;
    for (const auto& t : terms) total += t.u;
    if (std::abs(total) < 0.1) continue;
    const double u1 = rng.uniform(-2, 2);
    const QuadraticPhase reduced = reduce_hotspots(terms, 1.0, u1);
    for (int s = 0; s < 100; ++s) {
      const Vec2 z = rng.vec(-10, 10);
      double direct = u1;
      for (const auto& t : terms) direct += 0.5 * t.u * norm2(z - t.z);
      EXPECT_NEAR(traffic_intensity(reduced, z), direct, 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST(Interface, ValuesAndGradients) {
  const Interface line = Interface::line(Vec2{1, 0}, 2.0);
  EXPECT_EQ(line.value(Vec2{2, 5}), 2.0);
  EXPECT_EQ(line.level(), 2.0);

  const Interface circle = Interface::circle(Vec2{0, 0}, 1.0);
  EXPECT_EQ(circle.value(Vec2{0, 3}), 3.0);
  EXPECT_EQ(circle.gradient(Vec2{0, 3}), Vec2(0, 1));

  const Interface tilted = Interface::line(Vec2{0.6, 0.8}, 0.0);
  EXPECT_NEAR(tilted.value(Vec2{1, 1}), 1.4, 1e-15);
  // Projection round trip: moving the point onto the line removes exactly its value.
  const Vec2 on = tilted.project(Vec2{1, 1});
  EXPECT_NEAR(norm(Vec2{1, 1} - on), 1.4, 1e-15);

  EXPECT_EQ(kind_of([&] { circle.gradient(Vec2{0, 0}); }), ErrorKind::DegenerateGradient);
  EXPECT_EQ(kind_of([&] { circle.project(Vec2{0, 0}); }), ErrorKind::DegenerateGradient);
}

TEST(Interface, LineNormalIsUnit) {
  const Interface line = Interface::line(Vec2{3, 4}, 10.0);
  EXPECT_NEAR(norm(line.normal()), 1.0, 1e-12);
  EXPECT_NEAR(line.offset(), 2.0, 1e-15);
}

TEST(Interface, ProjectionExamples) {
  EXPECT_EQ(Interface::line(Vec2{1, 0}, 2.0).project(Vec2{5, 7}), Vec2(2, 7));
  const Vec2 c = Interface::circle(Vec2{0, 0}, 2.0).project(Vec2{6, 8});
  EXPECT_NEAR(c.x(), 1.2, 1e-15);
  EXPECT_NEAR(c.y(), 1.6, 1e-15);
  const Interface line = Interface::line(Vec2{1, 1}, 1.0);
  const Vec2 on = line.point_at(0.3);
  EXPECT_NEAR(norm(line.project(on) - on), 0.0, 1e-15);
}

TEST(Interface, ProjectionIsNearestAndOnInterface) {
  ref::Rng rng(5);
  const std::vector<Interface> shapes{Interface::line(Vec2{0.3, -1.2}, 0.7), Interface::circle(Vec2{1, -1}, 2.5),
                                      Interface::circle(Vec2{-2, 0}, 0.5, -1)};
  for (const auto& iface : shapes) {
    for (int i = 0; i < 50; ++i) {
      const Vec2 b = rng.vec(-6, 6);
      const Vec2 xi = iface.project(b);
      EXPECT_NEAR(iface.value(xi), iface.level(), 1e-12);
      // b - xi is parallel to the gradient at xi.
      const Vec2 n = iface.gradient(xi);
      const Vec2 d = b - xi;
      EXPECT_NEAR(d.x() * n.y() - d.y() * n.x(), 0.0, 1e-12 * (1.0 + norm(d)));
      for (int j = 0; j < 64; ++j) {
        const Vec2 other = iface.point_at(rng.uniform(-20, 20));
        EXPECT_LE(norm(b - xi), norm(b - other) + 1e-12);
      }
    }
  }
}

TEST(EqualPotentialInterface, SymmetricHotSpotsGiveBisector) {
  const QuadraticPhase p1(-1, 0, Vec2{0, 0}, 1);
  const QuadraticPhase p2(-1, 0, Vec2{4, 0}, 1);
  const Interface iface = make_equal_potential_interface(p1, p2);
  ASSERT_EQ(iface.kind(), Interface::Kind::Line);
  EXPECT_NEAR(iface.normal().x(), 1.0, 1e-15);
  EXPECT_NEAR(iface.normal().y(), 0.0, 1e-15);
  EXPECT_NEAR(iface.offset(), 2.0, 1e-15);
}

TEST(EqualPotentialInterface, OffsetHotSpot) {
  // -1/2 |z|^2 = -1/2 |z - (4,0)|^2 - 8  <=>  8x = 32  <=>  x = 4.
  const QuadraticPhase p1(-1, 0, Vec2{0, 0}, 1);
  const QuadraticPhase p2(-1, -8, Vec2{4, 0}, 1);
  const Interface iface = make_equal_potential_interface(p1, p2);
  ASSERT_EQ(iface.kind(), Interface::Kind::Line);
  EXPECT_NEAR(iface.offset(), 4.0, 1e-14);
  EXPECT_NEAR(traffic_intensity(p1, Vec2{4, 0}), traffic_intensity(p2, Vec2{4, 0}), 1e-14);
}

TEST(EqualPotentialInterface, DegenerateCases) {
  const QuadraticPhase p(-1, 0, Vec2{0, 0}, 1);
  EXPECT_EQ(kind_of([&] { make_equal_potential_interface(p, p); }), ErrorKind::NoRealInterface);
  // Same curvature and center, different offsets: never equal.
  EXPECT_EQ(kind_of([&] { make_equal_potential_interface(p, QuadraticPhase(-1, 1, Vec2{0, 0}, 1)); }),
            ErrorKind::NoRealInterface);
  // -1/2 r^2 = -r^2 - 1 has no real solution.
  EXPECT_EQ(kind_of([&] { make_equal_potential_interface(p, QuadraticPhase(-2, -1, Vec2{0, 0}, 1)); }),
            ErrorKind::NoRealInterface);
}

TEST(EqualPotentialInterface, RandomMapsHaveEqualPotentialAndOrientation) {
  ref::Rng rng(19);
  int built = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double a1 = rng.uniform(-3, 3);
    const double a2 = trial % 3 == 0 ? a1 : rng.uniform(-3, 3);
    if (std::abs(a1) < 0.05 || std::abs(a2) < 0.05) continue;
    const QuadraticPhase p1(a1, rng.uniform(-2, 2), rng.vec(-3, 3), 1.0);
    const QuadraticPhase p2(a2, rng.uniform(-2, 2), rng.vec(-3, 3), 1.0);
    Interface iface = Interface::line(Vec2{1, 0}, 0);
    try {
      iface = make_equal_potential_interface(p1, p2);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NoRealInterface);
      continue;
    }
    ++built;
    const BiPhaseMap map(p1, p2, iface);
    EXPECT_LE(equal_potential_defect(map, 64), 1e-9);
    // Region 1 is where phase 1 dominates.
    for (int i = 0; i < 50; ++i) {
      const Vec2 z = rng.vec(-8, 8);
      const double g = traffic_intensity(p1, z) - traffic_intensity(p2, z);
      if (std::abs(g) < 1e-6) continue;
      EXPECT_EQ(map.region_of(z), g > 0 ? 1 : 2);
    }
  }
  EXPECT_GT(built, 100);
}

TEST(BiPhaseMap, RegionRuleAndTies) {
  const BiPhaseMap map = make_equal_potential_map(QuadraticPhase(-1, 0, Vec2{0, 0}, 1), QuadraticPhase(-1, 0, Vec2{4, 0}, 1));
  EXPECT_EQ(map.region_of(Vec2{0, 0}), 1);
  EXPECT_EQ(map.region_of(Vec2{3, 1}), 2);
  EXPECT_EQ(map.region_of(Vec2{2, 7}), 1);
  EXPECT_EQ(map.region_of(Vec2{2, 7}, 2), 2);
  EXPECT_THROW(BiPhaseMap(QuadraticPhase(-1, 0, Vec2{}, 1), QuadraticPhase(-1, 0, Vec2{1, 0}, 2),
                          Interface::line(Vec2{1, 0}, 0.5)),
               Error);
}
