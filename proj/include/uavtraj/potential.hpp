#pragma once

#include <optional>
#include <span>

#include "uavtraj/vec2.hpp"

namespace uavtraj {

enum class Regime { Hyperbolic, Trigonometric, Linear };

/// One quadratic traffic-intensity region
///   u(z) = 1/2 u0 |z - center|^2 + u1
/// with velocity cost constant K. u0 < 0 is a hot spot, u0 > 0 a traffic hole.
/// u0 == 0 (flat intensity) is only accepted when explicitly allowed.
class QuadraticPhase {
 public:
  QuadraticPhase(double u0, double u1, Vec2 center, double k, bool allow_flat = false);

  double u0() const noexcept { return u0_; }
  double u1() const noexcept { return u1_; }
  const Vec2& center() const noexcept { return center_; }
  double k() const noexcept { return k_; }
  /// sqrt(|u0| / K).
  double omega() const noexcept { return omega_; }
  bool allow_flat() const noexcept { return allow_flat_; }
  Regime regime() const noexcept;

  friend bool operator==(const QuadraticPhase&, const QuadraticPhase&) = default;

 private:
  double u0_;
  double u1_;
  Vec2 center_;
  double k_;
  double omega_;
  bool allow_flat_;
};

double traffic_intensity(const QuadraticPhase& phase, const Vec2& z);
Vec2 traffic_gradient(const QuadraticPhase& phase, const Vec2& z);

struct HotspotTerm {
  double u = 0.0;
  Vec2 z;

  friend bool operator==(const HotspotTerm&, const HotspotTerm&) = default;
};

/// Collapses sum_i 1/2 u_i |z - z_i|^2 + u1 into a single phase centered at the
/// weighted barycentre. Throws SumZero when the weights cancel.
QuadraticPhase reduce_hotspots(std::span<const HotspotTerm> terms, double k, double u1 = 0.0);

/// Interface f(z) = C between two regions, either a line or a circle.
///
/// Line: f(z) = n . z with |n| = 1, C = offset.
/// Circle: f(z) = s |z - center|, C = s radius, where the orientation s is
/// +1 or -1. The orientation only decides which side is "below" the level,
/// i.e. which side belongs to region 1.
class Interface {
 public:
  enum class Kind { Line, Circle };

  /// Normalizes `normal` (and scales `offset` accordingly).
  static Interface line(Vec2 normal, double offset);
  static Interface circle(Vec2 center, double radius, int orientation = +1);

  Kind kind() const noexcept { return kind_; }
  const Vec2& normal() const noexcept { return normal_; }
  double offset() const noexcept { return offset_; }
  const Vec2& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  int orientation() const noexcept { return orientation_; }

  /// The constant C.
  double level() const noexcept;
  double value(const Vec2& z) const;
  /// Throws DegenerateGradient at a circle's center.
  Vec2 gradient(const Vec2& z) const;
  /// Nearest point on the interface; throws DegenerateGradient at a circle's center.
  Vec2 project(const Vec2& b) const;
  /// Point on the interface parameterized by s (arc-length-like); used for sampling.
  Vec2 point_at(double s) const;

  friend bool operator==(const Interface&, const Interface&) = default;

 private:
  Interface() = default;

  Kind kind_ = Kind::Line;
  Vec2 normal_{1.0, 0.0};
  double offset_ = 0.0;
  Vec2 center_{};
  double radius_ = 1.0;
  int orientation_ = +1;
};

double interface_value(const Interface& iface, const Vec2& z);
Vec2 interface_gradient(const Interface& iface, const Vec2& z);
Vec2 project_onto_interface(const Interface& iface, const Vec2& b);

/// Region 1 is {f(z) < C}, region 2 is {f(z) > C}. Points with
/// |f(z) - C| <= interface_tie_tolerance are assigned to region 1 unless a
/// previous region is supplied.
inline constexpr double interface_tie_tolerance = 1e-12;

class BiPhaseMap {
 public:
  /// Both phases must share the same K.
  BiPhaseMap(QuadraticPhase phase1, QuadraticPhase phase2, Interface iface);

  /// Map with one phase on both sides of an arbitrary line.
  static BiPhaseMap uniform(const QuadraticPhase& phase);

  const QuadraticPhase& phase1() const noexcept { return phase1_; }
  const QuadraticPhase& phase2() const noexcept { return phase2_; }
  /// region is 1 or 2.
  const QuadraticPhase& phase(int region) const;
  const Interface& interface() const noexcept { return interface_; }
  double k() const noexcept { return phase1_.k(); }

  int region_of(const Vec2& z, std::optional<int> previous = std::nullopt) const;
  double intensity(const Vec2& z, int region) const { return traffic_intensity(phase(region), z); }

  friend bool operator==(const BiPhaseMap&, const BiPhaseMap&) = default;

 private:
  QuadraticPhase phase1_;
  QuadraticPhase phase2_;
  Interface interface_;
};

/// Solves u_1(z) = u_2(z) for the two phases. Equal curvatures give a line,
/// different curvatures a circle. The returned interface is oriented so that
/// region 1 (f < C) is where phase1 has the larger intensity. Throws
/// NoRealInterface when the locus is empty, a single point, or the phases coincide.
Interface make_equal_potential_interface(const QuadraticPhase& phase1, const QuadraticPhase& phase2);

/// Convenience: phases plus their equal-potential interface.
BiPhaseMap make_equal_potential_map(const QuadraticPhase& phase1, const QuadraticPhase& phase2);

/// Largest |u_1 - u_2| / (1 + |u_1|) over `samples` points spread along the interface.
double equal_potential_defect(const BiPhaseMap& map, int samples = 64);

}  // namespace uavtraj
