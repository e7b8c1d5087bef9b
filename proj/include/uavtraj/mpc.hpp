#pragma once

#include <functional>
#include <vector>

#include "uavtraj/closed_form.hpp"
#include "uavtraj/potential.hpp"

namespace uavtraj {

struct MpcParams {
  /// Step length; must satisfy 0 < dt < (T - t0) / 2.
  double dt = 0.0;
  /// On an interface tie, stay in the previous step's region.
  bool region_hysteresis = true;

  friend bool operator==(const MpcParams&, const MpcParams&) = default;
};

/// Discrete trace of an online run. Sample n carries the position reached,
/// the velocity commanded by the plan made there, and the region that was frozen.
struct SampledTrajectory {
  std::vector<double> times;
  std::vector<Vec2> positions;
  std::vector<Vec2> velocities;
  std::vector<int> region_ids;
  /// Trapezoid rule of the Lagrangian along the trace (region-local potential).
  double action_estimate = 0.0;

  std::size_t size() const noexcept { return times.size(); }
};

/// Traffic map as seen at time t.
using MapProvider = std::function<BiPhaseMap(double t)>;

/// Receding-horizon planner: at each step the current region's phase is
/// assumed to hold until T, the single-phase optimum to (T, zT) is computed,
/// and the vehicle advances along it for one step.
///
/// Throws InvalidArgument (bad dt), ConjugatePoint / HorizonOverflow from the
/// per-step plans, and StalledOnInterface.
SampledTrajectory mpc_plan(const MapProvider& maps, const BoundaryConditions& bc, const MpcParams& params);
SampledTrajectory mpc_plan(const BiPhaseMap& map, const BoundaryConditions& bc, const MpcParams& params);

struct TraceState {
  Vec2 position;
  Vec2 velocity;
  int region = 1;
};

/// Continuous evaluation of an MPC trace on a time-independent map: inside
/// step n the vehicle follows the plan made at sample n.
TraceState mpc_state_at(const BiPhaseMap& map, const BoundaryConditions& bc, const SampledTrajectory& trace,
                        double t);

}  // namespace uavtraj
