#include "uavtraj/aoa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uavtraj {

namespace {

double signed_level(const BiPhaseMap& map, const Vec2& z) {
  return map.interface().value(z) - map.interface().level();
}

void require_hot_spots(const BiPhaseMap& map) {
  if (map.phase1().u0() >= 0.0 || map.phase2().u0() >= 0.0) {
    throw Error(ErrorKind::NotHyperbolic, "alternating optimization needs u0 < 0 in both phases");
  }
}

void require_inside(const BoundaryConditions& bc, double tau) {
  if (!(tau > bc.t0() && tau < bc.T())) {
    std::ostringstream msg;
    msg << "crossing time " << tau << " must lie strictly inside (" << bc.t0() << ", " << bc.T() << ")";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

// Sign changes of a sampled level function, ignoring samples that sit on the
// interface to within the tie tolerance.
template <class Levels>
int sign_changes(const Levels& levels) {
  int changes = 0;
  int last = 0;
  for (double g : levels) {
    if (std::abs(g) <= interface_tie_tolerance) continue;
    const int s = g < 0.0 ? -1 : 1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

double scene_scale(const BiPhaseMap& map, const BoundaryConditions& bc) {
  const Vec2& c1 = map.phase1().center();
  const Vec2& c2 = map.phase2().center();
  return std::max({norm(bc.z0 - bc.zT), norm(c1 - c2), norm(bc.z0 - c1), norm(bc.zT - c2), 1e-12});
}

}  // namespace

AoaParams AoaParams::defaults_for(const BiPhaseMap& map, const BoundaryConditions& bc, double initial_cost) {
  AoaParams p;
  p.delta_tau = bc.duration() / 200.0;
  p.eps_tau = p.delta_tau / 2.0;
  p.eps_xi = 1e-6 * scene_scale(map, bc);
  p.eps_S = initial_cost != 0.0 ? 1e-8 * std::abs(initial_cost) : 1e-12;
  p.max_iters = 10000;
  return p;
}

Vec2 CrossingLegs::position(double t) const {
  return t <= leg1.boundary().T() ? leg1.position(t) : leg2.position(t);
}

Vec2 CrossingLegs::velocity(double t) const {
  return t <= leg1.boundary().T() ? leg1.velocity(t) : leg2.velocity(t);
}

int CrossingLegs::region_at(double t) const { return t <= leg1.boundary().T() ? 1 : 2; }

CrossingLegs plan_crossing_legs(const BiPhaseMap& map, const BoundaryConditions& bc, double tau, const Vec2& xi) {
  require_inside(bc, tau);
  return CrossingLegs{
      ClosedFormTrajectory(map.phase1(), BoundaryConditions{TimeWindow(bc.t0(), tau), bc.z0, xi}),
      ClosedFormTrajectory(map.phase2(), BoundaryConditions{TimeWindow(tau, bc.T()), xi, bc.zT}),
  };
}

double crossing_cost(const BiPhaseMap& map, const BoundaryConditions& bc, double tau, const Vec2& xi) {
  require_inside(bc, tau);
  const double s1 = action_closed_form(map.phase1(), BoundaryConditions{TimeWindow(bc.t0(), tau), bc.z0, xi}).action;
  const double s2 = action_closed_form(map.phase2(), BoundaryConditions{TimeWindow(tau, bc.T()), xi, bc.zT}).action;
  return s1 + s2;
}

Impulsions crossing_impulsions(const BiPhaseMap& map, const BoundaryConditions& bc, double tau, const Vec2& xi) {
  const CrossingLegs legs = plan_crossing_legs(map, bc, tau, xi);
  return {impulsion(map.phase1(), legs.leg1.end_velocity()), impulsion(map.phase2(), legs.leg2.start_velocity())};
}

double hamiltonian_gap(const BiPhaseMap& map, const BoundaryConditions& bc, double tau, const Vec2& xi) {
  const Impulsions p = crossing_impulsions(map, bc, tau, xi);
  return hamiltonian(map.phase1(), xi, p.minus) - hamiltonian(map.phase2(), xi, p.plus);
}

CrossingHessian compute_B_and_h(const BiPhaseMap& map, const BoundaryConditions& bc, double tau) {
  require_hot_spots(map);
  require_inside(bc, tau);
  const QuadraticPhase& p1 = map.phase1();
  const QuadraticPhase& p2 = map.phase2();
  const double w1 = p1.omega();
  const double w2 = p2.omega();
  const double a1 = w1 * (tau - bc.t0());
  const double a2 = w2 * (bc.T() - tau);
  if (a1 > hyperbolic_argument_limit || a2 > hyperbolic_argument_limit) {
    throw Error(ErrorKind::HorizonOverflow, "leg horizon exceeds the hyperbolic argument limit");
  }
  const double coth1 = 1.0 / std::tanh(a1);
  const double coth2 = 1.0 / std::tanh(a2);
  const double csch1 = 1.0 / std::sinh(a1);
  const double csch2 = 1.0 / std::sinh(a2);

  const double h = w1 * coth1 + w2 * coth2;
  const Vec2 sum = (w1 * coth1) * p1.center() + (w2 * coth2) * p2.center() + (w1 * csch1) * (bc.z0 - p1.center()) +
                   (w2 * csch2) * (bc.zT - p2.center());
  return {sum / h, h};
}

CrossingState crossing_state(const BiPhaseMap& map, const BoundaryConditions& bc, double tau, const Vec2& xi) {
  const Impulsions p = crossing_impulsions(map, bc, tau, xi);
  const Vec2 jump = p.minus - p.plus;
  const Vec2 n = map.interface().gradient(xi);
  CrossingState state;
  state.tau = tau;
  state.xi = xi;
  state.mu = dot(jump, n) / norm2(n);
  state.residual_p = norm(jump - state.mu * n);
  state.gap_H = hamiltonian(map.phase1(), xi, p.minus) - hamiltonian(map.phase2(), xi, p.plus);
  return state;
}

InitialCrossing extract_crossing(const BiPhaseMap& map, const SampledTrajectory& trace) {
  if (trace.size() < 2) {
    throw Error(ErrorKind::SingleCrossingViolated, "initial trajectory has fewer than two samples");
  }
  std::vector<double> levels(trace.size());
  std::transform(trace.positions.begin(), trace.positions.end(), levels.begin(),
                 [&](const Vec2& z) { return signed_level(map, z); });
  const int changes = sign_changes(levels);
  if (changes != 1) {
    std::ostringstream msg;
    msg << "initial trajectory crosses the interface " << changes << " times";
    throw Error(ErrorKind::SingleCrossingViolated, msg.str());
  }
  if (!(levels.front() < 0.0)) {
    throw Error(ErrorKind::SingleCrossingViolated, "initial trajectory must start in region 1");
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const double g0 = levels[i];
    const double g1 = levels[i + 1];
    if (g0 < 0.0 && g1 >= 0.0) {
      const double s = g0 / (g0 - g1);
      const double tau = trace.times[i] + s * (trace.times[i + 1] - trace.times[i]);
      const Vec2 xi = map.interface().project(lerp(trace.positions[i], trace.positions[i + 1], s));
      return {tau, xi};
    }
  }
  throw Error(ErrorKind::SingleCrossingViolated, "no crossing found");
}

int count_interface_crossings(const BiPhaseMap& map, const CrossingLegs& legs, int samples) {
  const double t0 = legs.leg1.boundary().t0();
  const double T = legs.leg2.boundary().T();
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(samples) + 1);
  for (int i = 0; i <= samples; ++i) {
    const double t = i == samples ? T : t0 + (T - t0) * i / samples;
    levels.push_back(signed_level(map, legs.position(t)));
  }
  return sign_changes(levels);
}

AoaResult aoa_optimize(const BiPhaseMap& map, const BoundaryConditions& bc, const SampledTrajectory& init,
                       const AoaParams& params) {
  require_hot_spots(map);
  if (!(params.delta_tau > 0.0) || !(params.eps_tau > 0.0) || !(params.eps_xi > 0.0) || !(params.eps_S > 0.0) ||
      params.max_iters < 1) {
    throw Error(ErrorKind::InvalidArgument, "AOA tolerances must be positive and max_iters >= 1");
  }

  const InitialCrossing start = extract_crossing(map, init);
  double tau = start.tau;
  Vec2 xi = start.xi;

  const double lo = bc.t0() + params.eps_tau;
  const double hi = bc.T() - params.eps_tau;
  tau = std::clamp(tau, lo, hi);

  // Cost of the concatenated legs; every iterate must cross exactly once.
  auto evaluate = [&](double t, const Vec2& x) {
    const CrossingLegs legs = plan_crossing_legs(map, bc, t, x);
    if (const int n = count_interface_crossings(map, legs); n != 1) {
      std::ostringstream msg;
      msg << "iterate (tau = " << t << ") crosses the interface " << n << " times";
      throw Error(ErrorKind::SingleCrossingViolated, msg.str());
    }
    return crossing_cost(map, bc, t, x);
  };
  auto gap_at = [&](double t) { return hamiltonian_gap(map, bc, t, xi); };

  double cost = evaluate(tau, xi);
  std::vector<double> history{init.action_estimate};

  // Bisection on the sign of H1 - H2 within one step of the stalled tau.
  auto refine = [&]() {
    double a = std::max(lo, tau - params.delta_tau);
    double b = std::min(hi, tau + params.delta_tau);
    if (!(gap_at(a) > 0.0 && gap_at(b) < 0.0)) return;
    for (int i = 0; i < 200 && b - a > 4.0 * 1e-16 * std::max(std::abs(a), std::abs(b)); ++i) {
      const double mid = 0.5 * (a + b);
      (gap_at(mid) > 0.0 ? a : b) = mid;
    }
    const double refined = 0.5 * (a + b);
    const double refined_cost = evaluate(refined, xi);
    if (refined_cost <= cost) {
      tau = refined;
      cost = refined_cost;
    }
  };

  bool time_phase = true;
  bool position_phase = false;
  bool terminated = false;
  double cycle_start = cost;
  int iterations = 0;

  while (iterations < params.max_iters) {
    ++iterations;
    bool cycle_done = false;

    if (time_phase) {
      const double tau_before = tau;
      const double gap = gap_at(tau);
      const double direction = gap > 0.0 ? 1.0 : (gap < 0.0 ? -1.0 : 0.0);
      double candidate = tau + direction * params.delta_tau;
      const bool clamped = candidate < lo || candidate > hi;
      candidate = std::clamp(candidate, lo, hi);
      // A sign step is taken only if it lowers the cost; otherwise tau stays
      // put and the time phase ends.
      if (candidate != tau) {
        const double candidate_cost = evaluate(candidate, xi);
        if (candidate_cost < cost) {
          tau = candidate;
          cost = candidate_cost;
        }
      }
      if (std::abs(tau - tau_before) < params.eps_tau || clamped) {
        if (params.refine_tau) refine();
        time_phase = false;
        position_phase = true;
      }
    }

    if (position_phase) {
      const CrossingHessian hb = compute_B_and_h(map, bc, tau);
      const Vec2 next = map.interface().project(hb.B);
      const bool settled = norm(next - xi) < params.eps_xi;
      cost = evaluate(tau, next);
      xi = next;
      if (settled) {
        position_phase = false;
        time_phase = true;
        cycle_done = true;
      }
    }

    if (cost > history.back() + params.eps_S) {
      std::ostringstream msg;
      msg << "cost rose from " << history.back() << " to " << cost << " at iteration " << iterations;
      throw Error(ErrorKind::NonDecreasingCost, msg.str());
    }
    history.push_back(cost);

    if (cycle_done) {
      if (std::abs(cycle_start - cost) <= params.eps_S) {
        terminated = true;
        break;
      }
      cycle_start = cost;
    }
  }

  const CrossingState state = crossing_state(map, bc, tau, xi);
  const Impulsions p = crossing_impulsions(map, bc, tau, xi);
  const double h_scale = std::max(1.0, std::abs(hamiltonian(map.phase1(), xi, p.minus)));
  const double p_scale = std::max(1.0, norm(p.minus));

  const double s1 = action_closed_form(map.phase1(), BoundaryConditions{TimeWindow(bc.t0(), tau), bc.z0, xi}).action;
  const double s2 = action_closed_form(map.phase2(), BoundaryConditions{TimeWindow(tau, bc.T()), xi, bc.zT}).action;

  return AoaResult{
      .crossing = state,
      .legs = plan_crossing_legs(map, bc, tau, xi),
      .cost_history = std::move(history),
      .iterations = iterations,
      .converged = terminated && std::abs(state.gap_H) <= params.tol_H * h_scale &&
                   state.residual_p <= params.tol_p * p_scale,
      .cost = s1 + s2,
      .leg1_cost = s1,
      .leg2_cost = s2,
  };
}

}  // namespace uavtraj
