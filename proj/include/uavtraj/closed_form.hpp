#pragma once

#include "uavtraj/potential.hpp"
#include "uavtraj/vec2.hpp"

namespace uavtraj {

/// |sin(omega (T - t0))| at or below this is treated as a conjugate point.
inline constexpr double conjugate_point_threshold = 1e-9;
/// Largest omega (T - t0) accepted in the hyperbolic regime.
inline constexpr double hyperbolic_argument_limit = 700.0;

/// Optimal trajectory of a single quadratic phase between fixed endpoints.
///
/// The trajectory is stored in coordinates centered on the phase's hot spot or
/// hole; evaluation adds the center back. Construction validates the regime
/// (no conjugate point, no sinh overflow), so every member is total on the
/// time window.
class ClosedFormTrajectory {
 public:
  /// Throws ConjugatePoint or HorizonOverflow.
  ClosedFormTrajectory(const QuadraticPhase& phase, const BoundaryConditions& bc);

  Regime regime() const noexcept { return phase_.regime(); }
  const QuadraticPhase& phase() const noexcept { return phase_; }
  const BoundaryConditions& boundary() const noexcept { return bc_; }
  const Vec2& centered_start() const noexcept { return start_; }
  const Vec2& centered_end() const noexcept { return end_; }

  /// Throws OutOfWindow outside [t0, T].
  Vec2 position(double t) const;
  Vec2 velocity(double t) const;

  Vec2 start_velocity() const { return velocity(bc_.t0()); }
  Vec2 end_velocity() const { return velocity(bc_.T()); }

 private:
  void check_time(double t) const;
  Vec2 centered_position(double t) const;

  QuadraticPhase phase_;
  BoundaryConditions bc_;
  Vec2 start_;
  Vec2 end_;
};

ClosedFormTrajectory plan_single_phase(const QuadraticPhase& phase, const BoundaryConditions& bc);
Vec2 eval_position(const ClosedFormTrajectory& traj, double t);
Vec2 eval_velocity(const ClosedFormTrajectory& traj, double t);

/// p = K a.
Vec2 impulsion(const QuadraticPhase& phase, const Vec2& a);
/// H(z, p) = |p|^2 / (2K) + u(z).
double hamiltonian(const QuadraticPhase& phase, const Vec2& z, const Vec2& p);
/// L(z, a) = K/2 |a|^2 - u(z).
double lagrangian(const QuadraticPhase& phase, const Vec2& z, const Vec2& a);

struct CostBreakdown {
  /// Optimal action S, including the -u1 (T - t0) offset.
  double action = 0.0;
  /// Integral of K/2 |a|^2.
  double kinetic_integral = 0.0;
  /// Integral of u(z), offset included.
  double potential_integral = 0.0;
  /// -u1 (T - t0).
  double terminal_constant = 0.0;
  /// The same action from endpoint impulsions: 1/2 [z.p] over the window
  /// (centered coordinates) plus the offset term.
  double boundary_form = 0.0;
};

/// Throws ConjugatePoint or HorizonOverflow.
CostBreakdown action_closed_form(const QuadraticPhase& phase, const BoundaryConditions& bc);

}  // namespace uavtraj
