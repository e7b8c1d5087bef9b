#include "uavtraj/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uavtraj {

QuadraticPhase::QuadraticPhase(double u0, double u1, Vec2 center, double k, bool allow_flat)
    : u0_(u0), u1_(u1), center_(center), k_(k), omega_(0.0), allow_flat_(allow_flat) {
  if (!std::isfinite(u0) || !std::isfinite(u1) || !std::isfinite(k)) {
    throw Error(ErrorKind::InvalidArgument, "phase parameters must be finite");
  }
  if (!(k > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "phase requires K > 0");
  }
  if (u0 == 0.0 && !allow_flat) {
    throw Error(ErrorKind::InvalidArgument, "u0 == 0 requires an explicitly flat phase");
  }
  omega_ = std::sqrt(std::abs(u0) / k);
}

Regime QuadraticPhase::regime() const noexcept {
  if (u0_ < 0.0) return Regime::Hyperbolic;
  if (u0_ > 0.0) return Regime::Trigonometric;
  return Regime::Linear;
}

double traffic_intensity(const QuadraticPhase& phase, const Vec2& z) {
  return 0.5 * phase.u0() * norm2(z - phase.center()) + phase.u1();
}

Vec2 traffic_gradient(const QuadraticPhase& phase, const Vec2& z) {
  return phase.u0() * (z - phase.center());
}

QuadraticPhase reduce_hotspots(std::span<const HotspotTerm> terms, double k, double u1) {
  if (terms.empty()) {
    throw Error(ErrorKind::SumZero, "no hot-spot terms");
  }
  double total = 0.0;
  double scale = 0.0;
  Vec2 weighted{};
  for (const auto& term : terms) {
    total += term.u;
    scale = std::max(scale, std::abs(term.u));
    weighted = weighted + term.u * term.z;
  }
  if (std::abs(total) <= 1e-14 * scale) {
    throw Error(ErrorKind::SumZero, "hot-spot weights sum to zero");
  }
  const Vec2 barycentre = weighted / total;
  double offset = u1;
  for (const auto& term : terms) {
    offset += 0.5 * term.u * norm2(term.z - barycentre);
  }
  return QuadraticPhase(total, offset, barycentre, k);
}

// --- Interface -------------------------------------------------------------

Interface Interface::line(Vec2 normal, double offset) {
  const double n = norm(normal);
  if (!(n > 0.0) || !std::isfinite(offset)) {
    throw Error(ErrorKind::InvalidArgument, "line interface needs a nonzero normal");
  }
  Interface iface;
  iface.kind_ = Kind::Line;
  iface.normal_ = normal / n;
  iface.offset_ = offset / n;
  return iface;
}

Interface Interface::circle(Vec2 center, double radius, int orientation) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::InvalidArgument, "circle interface needs radius > 0");
  }
  if (orientation != 1 && orientation != -1) {
    throw Error(ErrorKind::InvalidArgument, "circle orientation must be +1 or -1");
  }
  Interface iface;
  iface.kind_ = Kind::Circle;
  iface.center_ = center;
  iface.radius_ = radius;
  iface.orientation_ = orientation;
  return iface;
}

double Interface::level() const noexcept {
  return kind_ == Kind::Line ? offset_ : orientation_ * radius_;
}

double Interface::value(const Vec2& z) const {
  if (kind_ == Kind::Line) return dot(normal_, z);
  return orientation_ * norm(z - center_);
}

Vec2 Interface::gradient(const Vec2& z) const {
  if (kind_ == Kind::Line) return normal_;
  const Vec2 d = z - center_;
  const double r = norm(d);
  if (r == 0.0) {
    throw Error(ErrorKind::DegenerateGradient, "circle interface gradient undefined at its center");
  }
  return (orientation_ / r) * d;
}

Vec2 Interface::project(const Vec2& b) const {
  if (kind_ == Kind::Line) {
    return b - (dot(normal_, b) - offset_) * normal_;
  }
  const Vec2 d = b - center_;
  const double r = norm(d);
  if (r == 0.0) {
    throw Error(ErrorKind::DegenerateGradient, "projection onto a circle from its center is undefined");
  }
  return center_ + (radius_ / r) * d;
}

Vec2 Interface::point_at(double s) const {
  if (kind_ == Kind::Line) {
    const Vec2 tangent{-normal_.y(), normal_.x()};
    return offset_ * normal_ + s * tangent;
  }
  return center_ + radius_ * Vec2{std::cos(s), std::sin(s)};
}

double interface_value(const Interface& iface, const Vec2& z) { return iface.value(z); }
Vec2 interface_gradient(const Interface& iface, const Vec2& z) { return iface.gradient(z); }
Vec2 project_onto_interface(const Interface& iface, const Vec2& b) { return iface.project(b); }

// --- BiPhaseMap ------------------------------------------------------------

BiPhaseMap::BiPhaseMap(QuadraticPhase phase1, QuadraticPhase phase2, Interface iface)
    : phase1_(phase1), phase2_(phase2), interface_(iface) {
  if (phase1_.k() != phase2_.k()) {
    throw Error(ErrorKind::InvalidArgument, "both phases of a map must share the same K");
  }
}

BiPhaseMap BiPhaseMap::uniform(const QuadraticPhase& phase) {
  return BiPhaseMap(phase, phase, Interface::line(Vec2{1.0, 0.0}, 0.0));
}

const QuadraticPhase& BiPhaseMap::phase(int region) const {
  if (region == 1) return phase1_;
  if (region == 2) return phase2_;
  throw Error(ErrorKind::InvalidArgument, "region id must be 1 or 2");
}

int BiPhaseMap::region_of(const Vec2& z, std::optional<int> previous) const {
  const double g = interface_.value(z) - interface_.level();
  if (std::abs(g) <= interface_tie_tolerance) {
    return previous.value_or(1);
  }
  return g < 0.0 ? 1 : 2;
}

Interface make_equal_potential_interface(const QuadraticPhase& p1, const QuadraticPhase& p2) {
  if (p1 == p2) {
    throw Error(ErrorKind::NoRealInterface, "identical phases have no interface");
  }
  const double a1 = p1.u0();
  const double a2 = p2.u0();
  const Vec2& c1 = p1.center();
  const Vec2& c2 = p2.center();
  const double b1 = p1.u1();
  const double b2 = p2.u1();
  const double scale = std::max({std::abs(a1), std::abs(a2), 1e-300});

  if (std::abs(a1 - a2) <= 1e-14 * scale) {
    // g(z) = u1 - u2 = w.z + w0 is affine; region 1 is g > 0.
    const Vec2 w = a1 * (c2 - c1);
    const double w0 = 0.5 * a1 * (norm2(c1) - norm2(c2)) + b1 - b2;
    const double wn = norm(w);
    if (wn <= 1e-14 * (std::abs(w0) + scale * (norm(c1) + norm(c2)) + 1e-300)) {
      throw Error(ErrorKind::NoRealInterface, "equal-curvature phases with coincident centers never meet");
    }
    return Interface::line(-w / wn, w0 / wn);
  }

  // g(z) = 1/2 d (|z - m|^2 - r^2) with d = a1 - a2.
  const double d = a1 - a2;
  const Vec2 m = (a1 * c1 - a2 * c2) / d;
  const double r2 = norm2(m) - (a1 * norm2(c1) - a2 * norm2(c2)) / d - 2.0 * (b1 - b2) / d;
  const double r2_scale = norm2(m) + norm2(c1) + norm2(c2) + std::abs(2.0 * (b1 - b2) / d) + 1e-300;
  if (!(r2 > 1e-12 * r2_scale)) {
    throw Error(ErrorKind::NoRealInterface, "equal-potential locus is empty or a single point");
  }
  // d < 0: g > 0 inside the circle, so region 1 is the inside (orientation +1).
  return Interface::circle(m, std::sqrt(r2), d < 0.0 ? +1 : -1);
}

BiPhaseMap make_equal_potential_map(const QuadraticPhase& phase1, const QuadraticPhase& phase2) {
  return BiPhaseMap(phase1, phase2, make_equal_potential_interface(phase1, phase2));
}

double equal_potential_defect(const BiPhaseMap& map, int samples) {
  const Interface& iface = map.interface();
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double s;
    if (iface.kind() == Interface::Kind::Line) {
      const double span = 10.0 * (1.0 + norm(map.phase1().center()) + norm(map.phase2().center()));
      s = -span + 2.0 * span * i / std::max(1, samples - 1);
    } else {
      s = 2.0 * std::numbers::pi * i / samples;
    }
    const Vec2 xi = iface.point_at(s);
    const double u1 = traffic_intensity(map.phase1(), xi);
    const double u2 = traffic_intensity(map.phase2(), xi);
    worst = std::max(worst, std::abs(u1 - u2) / (1.0 + std::abs(u1)));
  }
  return worst;
}

}  // namespace uavtraj
