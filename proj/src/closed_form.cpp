#include "uavtraj/closed_form.hpp"

#include <cmath>
#include <sstream>

namespace uavtraj {

namespace {

// sinh(a) / sinh(b) for 0 <= a <= b, without overflowing for large b.
double sinh_ratio(double a, double b) {
  if (b < 20.0) return std::sinh(a) / std::sinh(b);
  return std::exp(a - b) * std::expm1(-2.0 * a) / std::expm1(-2.0 * b);
}

// cosh(a) / sinh(b), same range.
double cosh_sinh_ratio(double a, double b) {
  if (b < 20.0) return std::cosh(a) / std::sinh(b);
  return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / -std::expm1(-2.0 * b);
}

void check_regime(const QuadraticPhase& phase, double duration) {
  const double arg = phase.omega() * duration;
  switch (phase.regime()) {
    case Regime::Hyperbolic:
      if (arg > hyperbolic_argument_limit) {
        std::ostringstream msg;
        msg << "omega (T - t0) = " << arg << " exceeds " << hyperbolic_argument_limit;
        throw Error(ErrorKind::HorizonOverflow, msg.str());
      }
      break;
    case Regime::Trigonometric:
      if (std::abs(std::sin(arg)) <= conjugate_point_threshold) {
        std::ostringstream msg;
        msg << "sin(omega (T - t0)) vanishes at omega (T - t0) = " << arg;
        throw Error(ErrorKind::ConjugatePoint, msg.str());
      }
      break;
    case Regime::Linear:
      break;
  }
}

}  // namespace

ClosedFormTrajectory::ClosedFormTrajectory(const QuadraticPhase& phase, const BoundaryConditions& bc)
    : phase_(phase), bc_(bc), start_(bc.z0 - phase.center()), end_(bc.zT - phase.center()) {
  check_regime(phase_, bc_.duration());
}

void ClosedFormTrajectory::check_time(double t) const {
  if (!bc_.window.contains(t)) {
    std::ostringstream msg;
    msg << "t = " << t << " outside [" << bc_.t0() << ", " << bc_.T() << "]";
    throw Error(ErrorKind::OutOfWindow, msg.str());
  }
}

Vec2 ClosedFormTrajectory::centered_position(double t) const {
  const double since = t - bc_.t0();
  const double until = bc_.T() - t;
  const double w = phase_.omega();
  const double d = bc_.duration();
  switch (regime()) {
    case Regime::Hyperbolic:
      return sinh_ratio(w * since, w * d) * end_ + sinh_ratio(w * until, w * d) * start_;
    case Regime::Trigonometric: {
      const double s = std::sin(w * d);
      return (std::sin(w * since) / s) * end_ + (std::sin(w * until) / s) * start_;
    }
    case Regime::Linear:
      break;
  }
  return (since / d) * end_ + (until / d) * start_;
}

Vec2 ClosedFormTrajectory::position(double t) const {
  check_time(t);
  return centered_position(t) + phase_.center();
}

Vec2 ClosedFormTrajectory::velocity(double t) const {
  check_time(t);
  const double since = t - bc_.t0();
  const double until = bc_.T() - t;
  const double w = phase_.omega();
  const double d = bc_.duration();
  switch (regime()) {
    case Regime::Hyperbolic:
      return w * (cosh_sinh_ratio(w * since, w * d) * end_ - cosh_sinh_ratio(w * until, w * d) * start_);
    case Regime::Trigonometric: {
      const double s = std::sin(w * d);
      return (w / s) * (std::cos(w * since) * end_ - std::cos(w * until) * start_);
    }
    case Regime::Linear:
      break;
  }
  return (bc_.zT - bc_.z0) / d;
}

ClosedFormTrajectory plan_single_phase(const QuadraticPhase& phase, const BoundaryConditions& bc) {
  return ClosedFormTrajectory(phase, bc);
}

Vec2 eval_position(const ClosedFormTrajectory& traj, double t) { return traj.position(t); }
Vec2 eval_velocity(const ClosedFormTrajectory& traj, double t) { return traj.velocity(t); }

Vec2 impulsion(const QuadraticPhase& phase, const Vec2& a) { return phase.k() * a; }

double hamiltonian(const QuadraticPhase& phase, const Vec2& z, const Vec2& p) {
  return norm2(p) / (2.0 * phase.k()) + traffic_intensity(phase, z);
}

double lagrangian(const QuadraticPhase& phase, const Vec2& z, const Vec2& a) {
  return 0.5 * phase.k() * norm2(a) - traffic_intensity(phase, z);
}

CostBreakdown action_closed_form(const QuadraticPhase& phase, const BoundaryConditions& bc) {
  const ClosedFormTrajectory traj(phase, bc);
  const Vec2& z0 = traj.centered_start();
  const Vec2& zT = traj.centered_end();
  const double k = phase.k();
  const double w = phase.omega();
  const double d = bc.duration();
  const double wd = w * d;

  // Centered action (offset u1 excluded).
  double centered = 0.0;
  switch (phase.regime()) {
    case Regime::Hyperbolic: {
      const double coth = 1.0 / std::tanh(wd);
      const double csch = cosh_sinh_ratio(0.0, wd);
      centered = 0.5 * k * w * ((norm2(z0) + norm2(zT)) * coth - 2.0 * dot(z0, zT) * csch);
      break;
    }
    case Regime::Trigonometric:
      centered = k * w / (2.0 * std::sin(wd)) * ((norm2(z0) + norm2(zT)) * std::cos(wd) - 2.0 * dot(z0, zT));
      break;
    case Regime::Linear:
      centered = 0.5 * k * norm2(zT - z0) / d;
      break;
  }

  const Vec2 p0 = impulsion(phase, traj.start_velocity());
  const Vec2 pT = impulsion(phase, traj.end_velocity());
  const double offset = -phase.u1() * d;

  // The centered Lagrangian conserves E = K/2 |a|^2 + 1/2 u0 |z|^2, so the
  // kinetic and centered-potential integrals are (E d +- S) / 2.
  const double energy = norm2(p0) / (2.0 * k) + 0.5 * phase.u0() * norm2(z0);

  CostBreakdown out;
  out.action = centered + offset;
  out.kinetic_integral = 0.5 * (energy * d + centered);
  out.potential_integral = 0.5 * (energy * d - centered) + phase.u1() * d;
  out.terminal_constant = offset;
  out.boundary_form = 0.5 * (dot(zT, pT) - dot(z0, p0)) + offset;
  return out;
}

}  // namespace uavtraj
