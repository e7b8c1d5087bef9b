#include "uavtraj/scenario.hpp"

namespace uavtraj::scenario {

std::string_view schema_reference() {
  return R"(Scenario document (JSON; // and /* */ comments are accepted)

name         string, required. Letters, digits, '_', '-', '.'.
description  string, optional. Free text.
k            number, required. Velocity cost constant K > 0.
boundary     object, required.
  t0         number. Start time.
  T          number. End time, T > t0.
  z0         [x, y]. Start position.
  zT         [x, y]. End position.
map          object, required. One of:
  { "type": "single_phase", "u0": n, "u1": n, "center": [x, y], "allow_flat": bool }
      u(z) = 1/2 u0 |z - center|^2 + u1. u0 < 0 hot spot, u0 > 0 traffic hole,
      u0 = 0 only with allow_flat = true. u1 defaults to 0.
  { "type": "hotspot_sum", "terms": [ { "u": n, "z": [x, y] }, ... ], "u1": n }
      u(z) = sum 1/2 u_i |z - z_i|^2 + u1, reduced to one phase at the
      barycentre. The u_i must not sum to zero.
  { "type": "biphase", "phase1": {u0, u1, center}, "phase2": {u0, u1, center},
    "interface": { "kind": "line", "normal": [x, y], "offset": C }
               | { "kind": "circle", "center": [x, y], "radius": r, "orientation": 1 | -1 } }
      Region 1 is f(z) < C, region 2 is f(z) > C (line: f = normal . z;
      circle: f = orientation |z - center|, C = orientation radius).
      Without "interface" the equal-potential locus is used, oriented so that
      region 1 is where phase1 has the larger intensity.
planner      "closed_form" | "mpc" | "aoa", required.
      closed_form needs a single_phase or hotspot_sum map.
      aoa needs a biphase map whose phases both have u0 < 0.
mpc          object, optional (also used to initialize aoa).
  dt                 number, 0 < dt < (T - t0)/2. Default (T - t0)/1000.
  region_hysteresis  bool. Default true.
aoa          object, optional. Unset fields use the defaults shown.
  delta_tau  number > 0. tau step. Default (T - t0)/200.
  eps_tau    number > 0. Default delta_tau/2.
  eps_xi     number > 0. Default 1e-6 * scene scale.
  eps_S      number > 0. Default 1e-8 * |initial cost|.
  max_iters  integer >= 1. Default 10000.
  tol_H      number > 0. Reported stationarity tolerance on |H1 - H2|. Default 1e-4.
  tol_p      number > 0. Reported tolerance on the tangential impulsion jump. Default 1e-4.
  refine_tau bool. Bisection on sign(H1 - H2) after the tau sign steps stall. Default true.
output       object, optional.
  csv        string. Default <name>.csv (relative to --out).
  summary    string. Default <name>.summary.json (relative to --out).
  samples    integer >= 2. Rows in the trajectory CSV. Default 1000.

Trajectory CSV columns: t,x,y,vx,vy,u,H,region
Exit codes: 0 ok, 2 parse error, 3 validation error, 4 planner error, 5 verification failure.
)";
}

}  // namespace uavtraj::scenario
