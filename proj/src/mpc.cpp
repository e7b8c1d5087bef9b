#include "uavtraj/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uavtraj {

namespace {

constexpr int stall_limit = 10;
constexpr double stall_displacement = 1e-9;

std::size_t step_count(double duration, double dt) {
  const double ratio = duration / dt;
  return static_cast<std::size_t>(std::ceil(ratio - 1e-9));
}

}  // namespace

SampledTrajectory mpc_plan(const MapProvider& maps, const BoundaryConditions& bc, const MpcParams& params) {
  const double duration = bc.duration();
  if (!(params.dt > 0.0) || !(params.dt < duration / 2.0)) {
    std::ostringstream msg;
    msg << "MPC step dt = " << params.dt << " must lie in (0, " << duration / 2.0 << ")";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }

  const std::size_t steps = step_count(duration, params.dt);
  SampledTrajectory trace;
  trace.times.reserve(steps + 1);
  trace.positions.reserve(steps + 1);
  trace.velocities.reserve(steps + 1);
  trace.region_ids.reserve(steps + 1);

  Vec2 z = bc.z0;
  std::optional<int> previous;
  int stalled = 0;
  double action = 0.0;
  double previous_lagrangian = 0.0;

  for (std::size_t n = 0; n <= steps; ++n) {
    const double t = n == steps ? bc.T() : bc.t0() + static_cast<double>(n) * params.dt;
    const BiPhaseMap map = maps(t);
    const int region = map.region_of(z, params.region_hysteresis ? previous : std::nullopt);
    const QuadraticPhase& phase = map.phase(region);

    Vec2 velocity;
    Vec2 next = z;
    if (n < steps) {
      const BoundaryConditions remaining{TimeWindow(t, bc.T()), z, bc.zT};
      const ClosedFormTrajectory plan(phase, remaining);
      velocity = plan.velocity(t);
      if (n + 1 == steps) {
        next = bc.zT;
      } else {
        next = plan.position(bc.t0() + static_cast<double>(n + 1) * params.dt);
      }
    } else {
      // Final sample: velocity with which the last plan arrives at zT.
      const double t_prev = trace.times.back();
      const BoundaryConditions last{TimeWindow(t_prev, bc.T()), trace.positions.back(), bc.zT};
      const ClosedFormTrajectory plan(map.phase(trace.region_ids.back()), last);
      velocity = plan.velocity(bc.T());
    }

    const double l = lagrangian(phase, z, velocity);
    if (n > 0) {
      action += 0.5 * (t - trace.times.back()) * (previous_lagrangian + l);
    }
    previous_lagrangian = l;

    if (previous && *previous != region && norm(next - z) < stall_displacement) {
      if (++stalled > stall_limit) {
        std::ostringstream msg;
        msg << "trajectory oscillates across the interface near t = " << t;
        throw Error(ErrorKind::StalledOnInterface, msg.str());
      }
    } else {
      stalled = 0;
    }

    trace.times.push_back(t);
    trace.positions.push_back(z);
    trace.velocities.push_back(velocity);
    trace.region_ids.push_back(region);
    previous = region;
    z = next;
  }

  trace.action_estimate = action;
  return trace;
}

SampledTrajectory mpc_plan(const BiPhaseMap& map, const BoundaryConditions& bc, const MpcParams& params) {
  return mpc_plan([&map](double) { return map; }, bc, params);
}

TraceState mpc_state_at(const BiPhaseMap& map, const BoundaryConditions& bc, const SampledTrajectory& trace,
                        double t) {
  if (trace.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "trace needs at least two samples");
  }
  if (!bc.window.contains(t)) {
    throw Error(ErrorKind::OutOfWindow, "time outside the trace window");
  }
  const auto it = std::upper_bound(trace.times.begin(), trace.times.end(), t);
  std::size_t n = static_cast<std::size_t>(std::distance(trace.times.begin(), it));
  n = n == 0 ? 0 : n - 1;
  if (n + 1 >= trace.size()) n = trace.size() - 2;
  const int region = trace.region_ids[n];
  const BoundaryConditions remaining{TimeWindow(trace.times[n], bc.T()), trace.positions[n], bc.zT};
  const ClosedFormTrajectory plan(map.phase(region), remaining);
  return {plan.position(t), plan.velocity(t), region};
}

}  // namespace uavtraj
