#pragma once

#include <functional>
#include <vector>

#include "uavtraj/closed_form.hpp"
#include "uavtraj/potential.hpp"

namespace uavtraj::oracle {

/// Positions on a uniform grid of N intervals over [t0, T]; endpoints are the
/// boundary conditions and are never moved by the optimizer.
class DiscreteTrajectory {
 public:
  /// Requires N >= 8 and N + 1 positions whose ends match bc.
  DiscreteTrajectory(const BoundaryConditions& bc, std::vector<Vec2> positions);

  static DiscreteTrajectory straight_line(const BoundaryConditions& bc, int intervals);
  static DiscreteTrajectory sample(const ClosedFormTrajectory& traj, int intervals);

  const BoundaryConditions& boundary() const noexcept { return bc_; }
  int intervals() const noexcept { return static_cast<int>(positions_.size()) - 1; }
  double step() const noexcept { return bc_.duration() / intervals(); }
  double time(int i) const noexcept;
  const std::vector<Vec2>& positions() const noexcept { return positions_; }
  const Vec2& operator[](int i) const { return positions_[static_cast<std::size_t>(i)]; }

  /// Replaces interior node i (0 < i < N).
  void set_interior(int i, const Vec2& z);

 private:
  BoundaryConditions bc_;
  std::vector<Vec2> positions_;
};

struct Potential {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;

  static Potential of(const QuadraticPhase& phase);
  static Potential zero();
};

/// sum_i dt [K/2 |(z_{i+1} - z_i)/dt|^2 - u((z_i + z_{i+1})/2)].
double discrete_action(const DiscreteTrajectory& traj, const std::function<double(const Vec2&)>& potential_at,
                       double k);

struct DirectResult {
  DiscreteTrajectory trajectory;
  double action = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  /// False when max_iters was hit before the gradient tolerance (MaxItersExceeded).
  bool converged = false;
};

struct DirectOptions {
  int intervals = 2000;
  int max_iters = 2000;
  /// Stop once |grad| <= gradient_tol (1 + |action|).
  double gradient_tol = 1e-6;
};

/// Deterministic descent on discrete_action from the straight line, with
/// backtracking. Directions are preconditioned by the inverse of the kinetic
/// term's tridiagonal Hessian; the gradient is analytic.
DirectResult direct_optimize(const Potential& potential, double k, const BoundaryConditions& bc,
                             const DirectOptions& options = {});

/// max_i |K (z_{i-1} - 2 z_i + z_{i+1}) / dt^2 + u0 (z_i - z_h)| over interior nodes.
double euler_lagrange_residual(const DiscreteTrajectory& samples, const QuadraticPhase& phase);

/// Largest distance between two equally sized position lists.
double max_deviation(const DiscreteTrajectory& a, const DiscreteTrajectory& b);

}  // namespace uavtraj::oracle
