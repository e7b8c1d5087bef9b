#pragma once

#include <cmath>

#include "uavtraj/error.hpp"

namespace uavtraj {

/// Planar vector used for positions, velocities and impulsions.
///
/// Both components are finite; every constructor (including the results of the
/// arithmetic operators) rejects NaN or infinity, so non-finite values never
/// propagate through the planners.
class Vec2 {
 public:
  constexpr Vec2() noexcept = default;
  Vec2(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw Error(ErrorKind::InvalidArgument, "Vec2 components must be finite");
    }
  }

  constexpr double x() const noexcept { return x_; }
  constexpr double y() const noexcept { return y_; }

  friend bool operator==(const Vec2&, const Vec2&) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
};

inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x() + b.x(), a.y() + b.y()}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x() - b.x(), a.y() - b.y()}; }
inline Vec2 operator-(const Vec2& a) { return {-a.x(), -a.y()}; }
inline Vec2 operator*(double s, const Vec2& a) { return {s * a.x(), s * a.y()}; }
inline Vec2 operator*(const Vec2& a, double s) { return s * a; }
inline Vec2 operator/(const Vec2& a, double s) { return {a.x() / s, a.y() / s}; }

inline double dot(const Vec2& a, const Vec2& b) noexcept { return a.x() * b.x() + a.y() * b.y(); }
inline double norm2(const Vec2& a) noexcept { return dot(a, a); }
inline double norm(const Vec2& a) noexcept { return std::sqrt(dot(a, a)); }

/// Linear blend a + s (b - a).
inline Vec2 lerp(const Vec2& a, const Vec2& b, double s) { return a + s * (b - a); }

/// Time interval [t0, T] with T > t0.
class TimeWindow {
 public:
  TimeWindow(double t0, double T) : t0_(t0), T_(T) {
    if (!std::isfinite(t0) || !std::isfinite(T)) {
      throw Error(ErrorKind::InvalidArgument, "time window bounds must be finite");
    }
    if (!(T > t0)) {
      throw Error(ErrorKind::InvalidArgument, "time window requires T > t0");
    }
  }

  double t0() const noexcept { return t0_; }
  double T() const noexcept { return T_; }
  double duration() const noexcept { return T_ - t0_; }
  bool contains(double t) const noexcept { return t >= t0_ && t <= T_; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;

 private:
  double t0_;
  double T_;
};

/// Start and end constraints. The terminal cost (zero at zT, infinite
/// elsewhere) is enforced as a hard endpoint, never as a penalty.
struct BoundaryConditions {
  TimeWindow window;
  Vec2 z0;
  Vec2 zT;

  double t0() const noexcept { return window.t0(); }
  double T() const noexcept { return window.T(); }
  double duration() const noexcept { return window.duration(); }

  friend bool operator==(const BoundaryConditions&, const BoundaryConditions&) = default;
};

}  // namespace uavtraj
