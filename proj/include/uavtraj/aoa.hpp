#pragma once

#include <vector>

#include "uavtraj/closed_form.hpp"
#include "uavtraj/mpc.hpp"
#include "uavtraj/potential.hpp"

namespace uavtraj {

struct AoaParams {
  double delta_tau = 0.0;
  double eps_tau = 0.0;
  double eps_xi = 0.0;
  double eps_S = 0.0;
  int max_iters = 10000;
  /// Stationarity tolerances reported through AoaResult::converged; scaled by
  /// max(1, |H|) and max(1, |p|) respectively.
  double tol_H = 1e-4;
  double tol_p = 1e-4;
  /// Extension: once the fixed-step sign descent in tau stalls, bisect on the
  /// sign of H1 - H2 inside the last step bracket.
  bool refine_tau = true;

  /// delta_tau = (T - t0)/200, eps_tau = delta_tau/2, eps_xi = 1e-6 * scene
  /// scale, eps_S = 1e-8 * |initial cost|, max_iters = 10^4.
  static AoaParams defaults_for(const BiPhaseMap& map, const BoundaryConditions& bc, double initial_cost);
};

struct CrossingState {
  double tau = 0.0;
  Vec2 xi;
  /// Least-squares multiplier of p- - p+ = mu grad f.
  double mu = 0.0;
  /// H1(xi, p-) - H2(xi, p+).
  double gap_H = 0.0;
  /// |p- - p+ - mu grad f|.
  double residual_p = 0.0;
};

/// Leg 1 lives on phase 1 over [t0, tau], leg 2 on phase 2 over [tau, T].
struct CrossingLegs {
  ClosedFormTrajectory leg1;
  ClosedFormTrajectory leg2;

  Vec2 position(double t) const;
  Vec2 velocity(double t) const;
  int region_at(double t) const;
};

struct AoaResult {
  CrossingState crossing;
  CrossingLegs legs;
  /// history[0] is the initial trajectory's cost; one entry per iteration after that.
  std::vector<double> cost_history;
  int iterations = 0;
  bool converged = false;
  /// S1 + S2 at the final crossing.
  double cost = 0.0;
  double leg1_cost = 0.0;
  double leg2_cost = 0.0;
};

struct Impulsions {
  Vec2 minus;
  Vec2 plus;
};

/// Requires t0 < tau < T. Throws whatever plan_single_phase throws for a leg.
CrossingLegs plan_crossing_legs(const BiPhaseMap& map, const BoundaryConditions& bc, double tau, const Vec2& xi);
/// Total cost S1 + S2 of the concatenated legs.
double crossing_cost(const BiPhaseMap& map, const BoundaryConditions& bc, double tau, const Vec2& xi);

Impulsions crossing_impulsions(const BiPhaseMap& map, const BoundaryConditions& bc, double tau, const Vec2& xi);
/// H1 - H2; equals -dS/dtau at fixed xi.
double hamiltonian_gap(const BiPhaseMap& map, const BoundaryConditions& bc, double tau, const Vec2& xi);

struct CrossingHessian {
  /// Point where the xi-gradient of S1 + S2 vanishes at fixed tau.
  Vec2 B;
  /// Scalar Hessian: grad_xi (S1 + S2) = K h (xi - B).
  double h = 0.0;
};

/// Both phases must be hot spots (NotHyperbolic otherwise).
CrossingHessian compute_B_and_h(const BiPhaseMap& map, const BoundaryConditions& bc, double tau);

/// Stationarity diagnostics at a given crossing.
CrossingState crossing_state(const BiPhaseMap& map, const BoundaryConditions& bc, double tau, const Vec2& xi);

struct InitialCrossing {
  double tau;
  Vec2 xi;
};

/// First sign change of f(z) - C along the trace, linearly interpolated and
/// projected onto the interface. Throws SingleCrossingViolated unless the trace
/// crosses exactly once.
InitialCrossing extract_crossing(const BiPhaseMap& map, const SampledTrajectory& trace);

/// Number of sign changes of f(z) - C over `samples` uniform times.
int count_interface_crossings(const BiPhaseMap& map, const CrossingLegs& legs, int samples = 1000);

/// Alternating optimization of the crossing: sign steps in tau, projection
/// jumps in xi. Throws NotHyperbolic, SingleCrossingViolated, NonDecreasingCost.
AoaResult aoa_optimize(const BiPhaseMap& map, const BoundaryConditions& bc, const SampledTrajectory& init,
                       const AoaParams& params);

}  // namespace uavtraj
