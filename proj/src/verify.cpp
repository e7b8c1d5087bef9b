#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "uavtraj/closed_form.hpp"
#include "uavtraj/oracle.hpp"
#include "uavtraj/scenario.hpp"

namespace uavtraj::scenario {

namespace {

constexpr double action_tolerance = 1e-4;
constexpr double boundary_form_tolerance = 1e-8;
constexpr double euler_lagrange_tolerance = 1e-3;
constexpr double energy_tolerance = 1e-8;
constexpr double direct_deviation_tolerance = 1e-3;
constexpr double stationarity_tolerance = 1e-4;
constexpr double interface_tolerance = 1e-9;
constexpr double endpoint_tolerance = 1e-6;
constexpr double file_deviation_tolerance = 1e-9;

class Checks {
 public:
  void add(std::string name, double value, double tolerance) {
    const bool pass = std::isfinite(value) && value <= tolerance;
    checks_.push_back(Check{std::move(name), value, tolerance, pass});
  }
  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::vector<Check> checks_;
};

double relative(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Largest |H(t) - H(t0)| relative to the size of its kinetic and potential parts.
double energy_drift(const QuadraticPhase& phase, const ClosedFormTrajectory& traj, int samples) {
  const BoundaryConditions& bc = traj.boundary();
  double h0 = 0.0;
  double worst = 0.0;
  double scale = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = i == samples ? bc.T() : bc.t0() + bc.duration() * i / samples;
    const Vec2 z = traj.position(t);
    const Vec2 a = traj.velocity(t);
    const double kinetic = 0.5 * phase.k() * norm2(a);
    const double potential = traffic_intensity(phase, z);
    const double h = hamiltonian(phase, z, impulsion(phase, a));
    if (i == 0) h0 = h;
    worst = std::max(worst, std::abs(h - h0));
    scale = std::max({scale, std::abs(h), kinetic + std::abs(potential)});
  }
  return worst / std::max(scale, 1e-300);
}

bool is_minimizer(const QuadraticPhase& phase, double duration) {
  return phase.regime() != Regime::Trigonometric || phase.omega() * duration < std::numbers::pi;
}

void check_closed_form(Checks& checks, const QuadraticPhase& phase, const BoundaryConditions& bc, int n) {
  const ClosedFormTrajectory traj = plan_single_phase(phase, bc);
  const CostBreakdown cost = action_closed_form(phase, bc);
  const auto samples = oracle::DiscreteTrajectory::sample(traj, n);
  const auto u = oracle::Potential::of(phase);

  checks.add("action_gap", relative(oracle::discrete_action(samples, u.value, phase.k()), cost.action),
             action_tolerance);
  checks.add("boundary_form_gap", relative(cost.boundary_form, cost.action), boundary_form_tolerance);

  double zscale = 0.0;
  for (const auto& z : samples.positions()) zscale = std::max(zscale, norm(z - phase.center()));
  checks.add("euler_lagrange_residual", oracle::euler_lagrange_residual(samples, phase),
             euler_lagrange_tolerance * (1.0 + std::abs(phase.u0()) * zscale));
  checks.add("energy_drift", energy_drift(phase, traj, n), energy_tolerance);

  if (is_minimizer(phase, bc.duration())) {
    const auto direct = oracle::direct_optimize(u, phase.k(), bc, {.intervals = n, .max_iters = 5000,
                                                                  .gradient_tol = 1e-9});
    checks.add("direct_method_deviation", oracle::max_deviation(direct.trajectory, samples),
               direct_deviation_tolerance);
    checks.add("direct_method_action_gap", relative(direct.action, cost.action), action_tolerance);
  }
}

void check_file(Checks& checks, const Scenario& s, const std::vector<TrajectoryRow>& rows) {
  if (rows.size() < 2) {
    checks.add("trajectory_rows", 0.0, -1.0);
    return;
  }
  Scenario resampled = s;
  resampled.output.samples = static_cast<int>(rows.size());
  const PlanOutcome plan = plan_scenario(resampled);

  double deviation = 0.0;
  double time_skew = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    deviation = std::max(deviation, norm(rows[i].position - plan.rows[i].position));
    time_skew = std::max(time_skew, std::abs(rows[i].t - plan.rows[i].t));
    scale = std::max(scale, norm(plan.rows[i].position));
  }
  checks.add("trajectory_time_grid", time_skew, file_deviation_tolerance * std::max(1.0, std::abs(s.boundary.T())));
  checks.add("trajectory_deviation", deviation, file_deviation_tolerance * scale);
  checks.add("trajectory_start", norm(rows.front().position - s.boundary.z0), endpoint_tolerance);
  checks.add("trajectory_end", norm(rows.back().position - s.boundary.zT), endpoint_tolerance);

  if (s.planner == PlannerKind::ClosedForm && rows.size() >= 9) {
    const QuadraticPhase phase = build_single_phase(s);
    std::vector<Vec2> pts;
    pts.reserve(rows.size());
    for (const auto& r : rows) pts.push_back(r.position);
    pts.front() = s.boundary.z0;
    pts.back() = s.boundary.zT;
    const oracle::DiscreteTrajectory file(s.boundary, std::move(pts));
    double zscale = 0.0;
    for (const auto& z : file.positions()) zscale = std::max(zscale, norm(z - phase.center()));
    checks.add("euler_lagrange_residual", oracle::euler_lagrange_residual(file, phase),
               euler_lagrange_tolerance * (1.0 + std::abs(phase.u0()) * zscale));
  }
}

}  // namespace

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["pass"] = pass;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  return j;
}

VerificationReport verify_scenario(const Scenario& s, int oracle_n, const std::optional<std::string>& trajectory_csv) {
  if (oracle_n < 8) throw Error(ErrorKind::InvalidArgument, "oracle grid needs N >= 8");
  Checks checks;

  if (trajectory_csv) {
    std::ifstream in(*trajectory_csv);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + *trajectory_csv);
    std::stringstream buf;
    buf << in.rdbuf();
    check_file(checks, s, parse_csv(buf.str()));
  } else {
    switch (s.planner) {
      case PlannerKind::ClosedForm:
        check_closed_form(checks, build_single_phase(s), s.boundary, oracle_n);
        break;
      case PlannerKind::Mpc: {
        const bool single = !std::holds_alternative<BiphaseMapSpec>(s.map);
        const BiPhaseMap map = single ? BiPhaseMap::uniform(build_single_phase(s)) : build_biphase(s);
        const SampledTrajectory trace = mpc_plan(map, s.boundary, s.mpc);
        checks.add("endpoint_feasibility", norm(trace.positions.back() - s.boundary.zT), endpoint_tolerance);
        if (single) {
          const QuadraticPhase phase = map.phase1();
          const ClosedFormTrajectory traj = plan_single_phase(phase, s.boundary);
          double deviation = 0.0;
          for (std::size_t i = 0; i < trace.size(); ++i) {
            deviation = std::max(deviation, norm(trace.positions[i] - traj.position(trace.times[i])));
          }
          checks.add("closed_form_deviation", deviation, endpoint_tolerance);
          checks.add("action_estimate_gap", relative(trace.action_estimate, action_closed_form(phase, s.boundary).action),
                     action_tolerance);
        }
        break;
      }
      case PlannerKind::Aoa: {
        const BiPhaseMap map = build_biphase(s);
        const SampledTrajectory trace = mpc_plan(map, s.boundary, s.mpc);
        const AoaResult result = aoa_optimize(map, s.boundary, trace, build_aoa_params(s, map, trace.action_estimate));
        const Impulsions p = crossing_impulsions(map, s.boundary, result.crossing.tau, result.crossing.xi);
        checks.add("hamiltonian_gap", std::abs(result.crossing.gap_H),
                   stationarity_tolerance * std::max(1.0, std::abs(hamiltonian(map.phase1(), result.crossing.xi, p.minus))));
        checks.add("tangential_impulsion_residual", result.crossing.residual_p,
                   stationarity_tolerance * std::max(1.0, norm(p.minus)));
        checks.add("interface_residual",
                   std::abs(map.interface().value(result.crossing.xi) - map.interface().level()), interface_tolerance);
        checks.add("improvement_over_mpc", result.cost - result.cost_history.front(), 0.0);
        checks.add("not_converged", result.converged ? 0.0 : 1.0, 0.0);
        for (const auto* leg : {&result.legs.leg1, &result.legs.leg2}) {
          const auto samples = oracle::DiscreteTrajectory::sample(*leg, oracle_n);
          const double closed = action_closed_form(leg->phase(), leg->boundary()).action;
          const auto u = oracle::Potential::of(leg->phase());
          checks.add(leg == &result.legs.leg1 ? "leg1_action_gap" : "leg2_action_gap",
                     relative(oracle::discrete_action(samples, u.value, leg->phase().k()), closed), action_tolerance);
        }
        break;
      }
    }
  }

  VerificationReport report;
  report.scenario = s.name;
  report.checks = checks.take();
  report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const Check& c) { return c.pass; });
  return report;
}

}  // namespace uavtraj::scenario
