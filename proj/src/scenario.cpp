#include "uavtraj/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uavtraj/closed_form.hpp"

namespace uavtraj::scenario {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ValidationError, field + ": " + what);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) invalid(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (key == "comment") continue;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      invalid(join(path, key), "unknown field");
    }
  }
}

const json& require(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) invalid(join(path, key), "missing required field");
  return j.at(key);
}

double as_number(const json& j, const std::string& field) {
  if (!j.is_number()) invalid(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(field, "must be finite");
  return v;
}

double number(const json& j, const std::string& path, const std::string& key) {
  return as_number(require(j, path, key), join(path, key));
}

std::optional<double> opt_number(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) return std::nullopt;
  return as_number(j.at(key), join(path, key));
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) invalid(field, "expected an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& field) {
  if (!j.is_boolean()) invalid(field, "expected true or false");
  return j.get<bool>();
}

std::string string(const json& j, const std::string& field) {
  if (!j.is_string()) invalid(field, "expected a string");
  return j.get<std::string>();
}

Vec2 vec2(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) invalid(field, "expected [x, y]");
  return Vec2{as_number(j[0], field + "[0]"), as_number(j[1], field + "[1]")};
}

PhaseSpec parse_phase(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"u0", "u1", "center", "allow_flat"});
  PhaseSpec p;
  p.u0 = number(j, path, "u0");
  p.u1 = opt_number(j, path, "u1").value_or(0.0);
  p.center = vec2(require(j, path, "center"), join(path, "center"));
  if (j.contains("allow_flat")) p.allow_flat = boolean(j.at("allow_flat"), join(path, "allow_flat"));
  return p;
}

InterfaceSpec parse_interface(const json& j, const std::string& path) {
  require_object(j, path);
  InterfaceSpec spec;
  const std::string kind = string(require(j, path, "kind"), join(path, "kind"));
  if (kind == "line") {
    reject_unknown(j, path, {"kind", "normal", "offset"});
    spec.kind = Interface::Kind::Line;
    spec.normal = vec2(require(j, path, "normal"), join(path, "normal"));
    spec.offset = number(j, path, "offset");
  } else if (kind == "circle") {
    reject_unknown(j, path, {"kind", "center", "radius", "orientation"});
    spec.kind = Interface::Kind::Circle;
    spec.center = vec2(require(j, path, "center"), join(path, "center"));
    spec.radius = number(j, path, "radius");
    if (j.contains("orientation")) spec.orientation = integer(j.at("orientation"), join(path, "orientation"));
  } else {
    invalid(join(path, "kind"), "expected \"line\" or \"circle\"");
  }
  return spec;
}

MapSpec parse_map(const json& j) {
  const std::string path = "map";
  require_object(j, path);
  const std::string type = string(require(j, path, "type"), "map.type");
  if (type == "single_phase") {
    reject_unknown(j, path, {"type", "u0", "u1", "center", "allow_flat"});
    json phase = j;
    phase.erase("type");
    return SinglePhaseMap{parse_phase(phase, path)};
  }
  if (type == "hotspot_sum") {
    reject_unknown(j, path, {"type", "terms", "u1"});
    HotspotSumMap m;
    const json& terms = require(j, path, "terms");
    if (!terms.is_array() || terms.empty()) invalid("map.terms", "expected a non-empty array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string tp = "map.terms[" + std::to_string(i) + "]";
      require_object(terms[i], tp);
      reject_unknown(terms[i], tp, {"u", "z"});
      m.terms.push_back(HotspotTerm{number(terms[i], tp, "u"), vec2(require(terms[i], tp, "z"), tp + ".z")});
    }
    m.u1 = opt_number(j, path, "u1").value_or(0.0);
    return m;
  }
  if (type == "biphase") {
    reject_unknown(j, path, {"type", "phase1", "phase2", "interface"});
    BiphaseMapSpec m;
    m.phase1 = parse_phase(require(j, path, "phase1"), "map.phase1");
    m.phase2 = parse_phase(require(j, path, "phase2"), "map.phase2");
    if (j.contains("interface")) m.interface = parse_interface(j.at("interface"), "map.interface");
    return m;
  }
  invalid("map.type", "expected single_phase, hotspot_sum or biphase");
}

PlannerKind parse_planner(const json& j) {
  const std::string name = string(j, "planner");
  if (name == "closed_form") return PlannerKind::ClosedForm;
  if (name == "mpc") return PlannerKind::Mpc;
  if (name == "aoa") return PlannerKind::Aoa;
  invalid("planner", "expected closed_form, mpc or aoa");
}

ordered_json vec_json(const Vec2& v) { return ordered_json::array({v.x(), v.y()}); }

ordered_json phase_json(const PhaseSpec& p) {
  ordered_json j;
  j["u0"] = p.u0;
  j["u1"] = p.u1;
  j["center"] = vec_json(p.center);
  if (p.allow_flat) j["allow_flat"] = true;
  return j;
}

// Wraps errors raised by value-type constructors with the field they came from.
template <class F>
auto at_field(const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ValidationError) throw;
    invalid(field, e.what());
  }
}

Interface build_interface(const InterfaceSpec& spec) {
  if (spec.kind == Interface::Kind::Line) {
    return at_field("map.interface.normal", [&] { return Interface::line(spec.normal, spec.offset); });
  }
  if (!(spec.radius > 0.0)) invalid("map.interface.radius", "must be > 0");
  return at_field("map.interface.orientation",
                  [&] { return Interface::circle(spec.center, spec.radius, spec.orientation); });
}

void validate(const Scenario& s) {
  if (s.name.empty()) invalid("name", "must not be empty");
  for (char c : s.name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
      invalid("name", "only letters, digits, '_', '-' and '.' are allowed");
    }
  }
  if (!(s.k > 0.0)) invalid("k", "must be > 0");

  const bool biphase = std::holds_alternative<BiphaseMapSpec>(s.map);
  if (biphase) {
    const BiPhaseMap map = build_biphase(s);
    if (s.planner == PlannerKind::ClosedForm) invalid("planner", "closed_form requires a single_phase or hotspot_sum map");
    if (s.planner == PlannerKind::Aoa) {
      if (map.phase1().u0() >= 0.0) invalid("map.phase1.u0", "aoa requires a hot spot (u0 < 0)");
      if (map.phase2().u0() >= 0.0) invalid("map.phase2.u0", "aoa requires a hot spot (u0 < 0)");
    }
  } else {
    build_single_phase(s);
    if (s.planner == PlannerKind::Aoa) invalid("planner", "aoa requires a biphase map");
  }

  const double d = s.boundary.duration();
  if (!(s.mpc.dt > 0.0) || !(s.mpc.dt < d / 2.0)) invalid("mpc.dt", "must satisfy 0 < dt < (T - t0) / 2");

  auto positive = [](const std::optional<double>& v, const char* field) {
    if (v && !(*v > 0.0)) invalid(field, "must be > 0");
  };
  positive(s.aoa.delta_tau, "aoa.delta_tau");
  positive(s.aoa.eps_tau, "aoa.eps_tau");
  positive(s.aoa.eps_xi, "aoa.eps_xi");
  positive(s.aoa.eps_S, "aoa.eps_S");
  positive(s.aoa.tol_H, "aoa.tol_H");
  positive(s.aoa.tol_p, "aoa.tol_p");
  if (s.aoa.max_iters && *s.aoa.max_iters < 1) invalid("aoa.max_iters", "must be >= 1");

  if (s.output.samples < 2) invalid("output.samples", "must be >= 2");
  if (s.output.csv_path.empty()) invalid("output.csv", "must not be empty");
  if (s.output.summary_path.empty()) invalid("output.summary", "must not be empty");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

TrajectoryRow make_row(const QuadraticPhase& phase, double t, const Vec2& z, const Vec2& v, int region) {
  return TrajectoryRow{t, z, v, traffic_intensity(phase, z), hamiltonian(phase, z, impulsion(phase, v)), region};
}

std::vector<double> sample_times(const BoundaryConditions& bc, int samples) {
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    t[static_cast<std::size_t>(i)] = i == samples - 1 ? bc.T() : bc.t0() + bc.duration() * i / (samples - 1);
  }
  return t;
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::Hyperbolic: return "hyperbolic";
    case Regime::Trigonometric: return "trigonometric";
    case Regime::Linear: return "linear";
  }
  return "unknown";
}

BiPhaseMap map_for_mpc(const Scenario& s) {
  if (std::holds_alternative<BiphaseMapSpec>(s.map)) return build_biphase(s);
  return BiPhaseMap::uniform(build_single_phase(s));
}

// Trapezoid cost of an MPC trace split by the region frozen at each step's start.
std::pair<double, double> mpc_region_costs(const BiPhaseMap& map, const SampledTrajectory& trace) {
  double c1 = 0.0;
  double c2 = 0.0;
  for (std::size_t n = 0; n + 1 < trace.size(); ++n) {
    const double l0 = lagrangian(map.phase(trace.region_ids[n]), trace.positions[n], trace.velocities[n]);
    const double l1 =
        lagrangian(map.phase(trace.region_ids[n + 1]), trace.positions[n + 1], trace.velocities[n + 1]);
    const double c = 0.5 * (trace.times[n + 1] - trace.times[n]) * (l0 + l1);
    (trace.region_ids[n] == 1 ? c1 : c2) += c;
  }
  return {c1, c2};
}

ordered_json legs_json(double t0, double tau, double T, double c1, double c2) {
  return ordered_json::array({ordered_json{{"region", 1}, {"t_start", t0}, {"t_end", tau}, {"cost", c1}},
                              ordered_json{{"region", 2}, {"t_start", tau}, {"t_end", T}, {"cost", c2}}});
}

}  // namespace

std::string_view planner_name(PlannerKind kind) noexcept {
  switch (kind) {
    case PlannerKind::ClosedForm: return "closed_form";
    case PlannerKind::Mpc: return "mpc";
    case PlannerKind::Aoa: return "aoa";
  }
  return "unknown";
}

QuadraticPhase build_phase(const PhaseSpec& spec, double k) {
  return QuadraticPhase(spec.u0, spec.u1, spec.center, k, spec.allow_flat);
}

QuadraticPhase build_single_phase(const Scenario& s) {
  if (const auto* single = std::get_if<SinglePhaseMap>(&s.map)) {
    return at_field("map.u0", [&] { return build_phase(single->phase, s.k); });
  }
  if (const auto* sum = std::get_if<HotspotSumMap>(&s.map)) {
    return at_field("map.terms", [&] { return reduce_hotspots(sum->terms, s.k, sum->u1); });
  }
  throw Error(ErrorKind::InvalidArgument, "scenario map is not single-phase");
}

BiPhaseMap build_biphase(const Scenario& s) {
  const auto* spec = std::get_if<BiphaseMapSpec>(&s.map);
  if (spec == nullptr) throw Error(ErrorKind::InvalidArgument, "scenario map is not biphase");
  const QuadraticPhase p1 = at_field("map.phase1.u0", [&] { return build_phase(spec->phase1, s.k); });
  const QuadraticPhase p2 = at_field("map.phase2.u0", [&] { return build_phase(spec->phase2, s.k); });
  const Interface iface = spec->interface ? build_interface(*spec->interface)
                                          : at_field("map.interface", [&] { return make_equal_potential_interface(p1, p2); });
  return BiPhaseMap(p1, p2, iface);
}

AoaParams build_aoa_params(const Scenario& s, const BiPhaseMap& map, double initial_cost) {
  AoaParams p = AoaParams::defaults_for(map, s.boundary, initial_cost);
  if (s.aoa.delta_tau) {
    p.delta_tau = *s.aoa.delta_tau;
    p.eps_tau = p.delta_tau / 2.0;
  }
  if (s.aoa.eps_tau) p.eps_tau = *s.aoa.eps_tau;
  if (s.aoa.eps_xi) p.eps_xi = *s.aoa.eps_xi;
  if (s.aoa.eps_S) p.eps_S = *s.aoa.eps_S;
  if (s.aoa.max_iters) p.max_iters = *s.aoa.max_iters;
  if (s.aoa.tol_H) p.tol_H = *s.aoa.tol_H;
  if (s.aoa.tol_p) p.tol_p = *s.aoa.tol_p;
  if (s.aoa.refine_tau) p.refine_tau = *s.aoa.refine_tau;
  return p;
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  require_object(doc, "");
  reject_unknown(doc, "", {"name", "description", "k", "boundary", "map", "planner", "mpc", "aoa", "output"});

  Scenario s;
  s.name = string(require(doc, "", "name"), "name");
  if (doc.contains("description")) s.description = string(doc.at("description"), "description");
  s.k = number(doc, "", "k");

  const json& b = require(doc, "", "boundary");
  require_object(b, "boundary");
  reject_unknown(b, "boundary", {"t0", "T", "z0", "zT"});
  const double t0 = number(b, "boundary", "t0");
  const double T = number(b, "boundary", "T");
  if (!(T > t0)) invalid("boundary.T", "must be greater than boundary.t0");
  s.boundary = BoundaryConditions{TimeWindow(t0, T), vec2(require(b, "boundary", "z0"), "boundary.z0"),
                                  vec2(require(b, "boundary", "zT"), "boundary.zT")};

  s.map = parse_map(require(doc, "", "map"));
  s.planner = parse_planner(require(doc, "", "planner"));

  s.mpc.dt = s.boundary.duration() / 1000.0;
  if (doc.contains("mpc")) {
    const json& m = doc.at("mpc");
    require_object(m, "mpc");
    reject_unknown(m, "mpc", {"dt", "region_hysteresis"});
    if (auto dt = opt_number(m, "mpc", "dt")) s.mpc.dt = *dt;
    if (m.contains("region_hysteresis")) {
      s.mpc.region_hysteresis = boolean(m.at("region_hysteresis"), "mpc.region_hysteresis");
    }
  }

  if (doc.contains("aoa")) {
    const json& a = doc.at("aoa");
    require_object(a, "aoa");
    reject_unknown(a, "aoa",
                   {"delta_tau", "eps_tau", "eps_xi", "eps_S", "max_iters", "tol_H", "tol_p", "refine_tau"});
    s.aoa.delta_tau = opt_number(a, "aoa", "delta_tau");
    s.aoa.eps_tau = opt_number(a, "aoa", "eps_tau");
    s.aoa.eps_xi = opt_number(a, "aoa", "eps_xi");
    s.aoa.eps_S = opt_number(a, "aoa", "eps_S");
    s.aoa.tol_H = opt_number(a, "aoa", "tol_H");
    s.aoa.tol_p = opt_number(a, "aoa", "tol_p");
    if (a.contains("max_iters")) s.aoa.max_iters = integer(a.at("max_iters"), "aoa.max_iters");
    if (a.contains("refine_tau")) s.aoa.refine_tau = boolean(a.at("refine_tau"), "aoa.refine_tau");
  }

  s.output.csv_path = s.name + ".csv";
  s.output.summary_path = s.name + ".summary.json";
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    require_object(o, "output");
    reject_unknown(o, "output", {"csv", "summary", "samples"});
    if (o.contains("csv")) s.output.csv_path = string(o.at("csv"), "output.csv");
    if (o.contains("summary")) s.output.summary_path = string(o.at("summary"), "output.summary");
    if (o.contains("samples")) s.output.samples = integer(o.at("samples"), "output.samples");
  }

  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string emit_scenario(const Scenario& s) {
  ordered_json doc;
  doc["name"] = s.name;
  if (!s.description.empty()) doc["description"] = s.description;
  doc["k"] = s.k;
  doc["boundary"] = {{"t0", s.boundary.t0()},
                     {"T", s.boundary.T()},
                     {"z0", vec_json(s.boundary.z0)},
                     {"zT", vec_json(s.boundary.zT)}};

  ordered_json map;
  if (const auto* single = std::get_if<SinglePhaseMap>(&s.map)) {
    map["type"] = "single_phase";
    map.update(phase_json(single->phase));
  } else if (const auto* sum = std::get_if<HotspotSumMap>(&s.map)) {
    map["type"] = "hotspot_sum";
    map["terms"] = ordered_json::array();
    for (const auto& t : sum->terms) map["terms"].push_back({{"u", t.u}, {"z", vec_json(t.z)}});
    map["u1"] = sum->u1;
  } else {
    const auto& bi = std::get<BiphaseMapSpec>(s.map);
    map["type"] = "biphase";
    map["phase1"] = phase_json(bi.phase1);
    map["phase2"] = phase_json(bi.phase2);
    if (bi.interface) {
      const InterfaceSpec& i = *bi.interface;
      if (i.kind == Interface::Kind::Line) {
        map["interface"] = {{"kind", "line"}, {"normal", vec_json(i.normal)}, {"offset", i.offset}};
      } else {
        map["interface"] = {{"kind", "circle"},
                            {"center", vec_json(i.center)},
                            {"radius", i.radius},
                            {"orientation", i.orientation}};
      }
    }
  }
  doc["map"] = map;
  doc["planner"] = planner_name(s.planner);
  doc["mpc"] = {{"dt", s.mpc.dt}, {"region_hysteresis", s.mpc.region_hysteresis}};

  ordered_json aoa = ordered_json::object();
  if (s.aoa.delta_tau) aoa["delta_tau"] = *s.aoa.delta_tau;
  if (s.aoa.eps_tau) aoa["eps_tau"] = *s.aoa.eps_tau;
  if (s.aoa.eps_xi) aoa["eps_xi"] = *s.aoa.eps_xi;
  if (s.aoa.eps_S) aoa["eps_S"] = *s.aoa.eps_S;
  if (s.aoa.max_iters) aoa["max_iters"] = *s.aoa.max_iters;
  if (s.aoa.tol_H) aoa["tol_H"] = *s.aoa.tol_H;
  if (s.aoa.tol_p) aoa["tol_p"] = *s.aoa.tol_p;
  if (s.aoa.refine_tau) aoa["refine_tau"] = *s.aoa.refine_tau;
  if (!aoa.empty()) doc["aoa"] = aoa;

  doc["output"] = {{"csv", s.output.csv_path}, {"summary", s.output.summary_path}, {"samples", s.output.samples}};
  return doc.dump(2) + "\n";
}

std::string format_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out(csv_header);
  out += '\n';
  for (const auto& r : rows) {
    out += fmt(r.t) + ',' + fmt(r.position.x()) + ',' + fmt(r.position.y()) + ',' + fmt(r.velocity.x()) + ',' +
           fmt(r.velocity.y()) + ',' + fmt(r.intensity) + ',' + fmt(r.hamiltonian) + ',' + std::to_string(r.region) +
           '\n';
  }
  return out;
}

std::vector<TrajectoryRow> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != csv_header) {
    throw Error(ErrorKind::ParseError, "trajectory CSV header must be exactly " + std::string(csv_header));
  }
  std::vector<TrajectoryRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 8 columns");
    }
    try {
      double v[7];
      for (int i = 0; i < 7; ++i) v[i] = std::stod(cells[static_cast<std::size_t>(i)]);
      rows.push_back(TrajectoryRow{v[0], Vec2{v[1], v[2]}, Vec2{v[3], v[4]}, v[5], v[6], std::stoi(cells[7])});
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": malformed number");
    }
  }
  return rows;
}

PlanOutcome plan_scenario(const Scenario& s) {
  PlanOutcome out;
  const auto times = sample_times(s.boundary, s.output.samples);
  auto& summary = out.summary;
  summary["name"] = s.name;
  summary["planner"] = planner_name(s.planner);

  switch (s.planner) {
    case PlannerKind::ClosedForm: {
      const QuadraticPhase phase = build_single_phase(s);
      const ClosedFormTrajectory traj = plan_single_phase(phase, s.boundary);
      const CostBreakdown cost = action_closed_form(phase, s.boundary);
      for (double t : times) out.rows.push_back(make_row(phase, t, traj.position(t), traj.velocity(t), 1));
      out.action = cost.action;
      summary["action"] = cost.action;
      summary["regime"] = regime_name(phase.regime());
      summary["omega"] = phase.omega();
      summary["kinetic_integral"] = cost.kinetic_integral;
      summary["potential_integral"] = cost.potential_integral;
      summary["terminal_constant"] = cost.terminal_constant;
      summary["boundary_form"] = cost.boundary_form;
      summary["legs"] = ordered_json::array(
          {ordered_json{{"region", 1}, {"t_start", s.boundary.t0()}, {"t_end", s.boundary.T()}, {"cost", cost.action}}});
      break;
    }
    case PlannerKind::Mpc: {
      const BiPhaseMap map = map_for_mpc(s);
      const SampledTrajectory trace = mpc_plan(map, s.boundary, s.mpc);
      for (double t : times) {
        const TraceState st = mpc_state_at(map, s.boundary, trace, t);
        out.rows.push_back(make_row(map.phase(st.region), t, st.position, st.velocity, st.region));
      }
      const auto [c1, c2] = mpc_region_costs(map, trace);
      out.action = trace.action_estimate;
      summary["action"] = trace.action_estimate;
      summary["steps"] = trace.size() - 1;
      summary["dt"] = s.mpc.dt;
      summary["legs"] = ordered_json::array({ordered_json{{"region", 1}, {"cost", c1}},
                                             ordered_json{{"region", 2}, {"cost", c2}}});
      break;
    }
    case PlannerKind::Aoa: {
      const BiPhaseMap map = build_biphase(s);
      const SampledTrajectory trace = mpc_plan(map, s.boundary, s.mpc);
      const AoaParams params = build_aoa_params(s, map, trace.action_estimate);
      const AoaResult result = aoa_optimize(map, s.boundary, trace, params);
      for (double t : times) {
        const int region = result.legs.region_at(t);
        out.rows.push_back(
            make_row(map.phase(region), t, result.legs.position(t), result.legs.velocity(t), region));
      }
      out.action = result.cost;
      summary["action"] = result.cost;
      summary["mpc_action"] = trace.action_estimate;
      summary["legs"] = legs_json(s.boundary.t0(), result.crossing.tau, s.boundary.T(), result.leg1_cost,
                                  result.leg2_cost);
      summary["tau"] = result.crossing.tau;
      summary["xi"] = vec_json(result.crossing.xi);
      summary["mu"] = result.crossing.mu;
      summary["gap_H"] = std::abs(result.crossing.gap_H);
      summary["residual_p"] = result.crossing.residual_p;
      summary["interface_residual"] =
          std::abs(map.interface().value(result.crossing.xi) - map.interface().level());
      summary["iterations"] = result.iterations;
      summary["converged"] = result.converged;
      summary["params"] = {{"delta_tau", params.delta_tau}, {"eps_tau", params.eps_tau},
                           {"eps_xi", params.eps_xi},       {"eps_S", params.eps_S},
                           {"max_iters", params.max_iters}, {"refine_tau", params.refine_tau}};
      summary["cost_history"] = result.cost_history;
      break;
    }
  }
  return out;
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError: return ExitCode::ParseFailure;
    case ErrorKind::ValidationError: return ExitCode::ValidationFailure;
    default: return ExitCode::PlannerFailure;
  }
}

RunReport run_scenario(const Scenario& s, const std::filesystem::path& out_dir) {
  RunReport report;
  report.csv = out_dir / s.output.csv_path;
  report.summary = out_dir / s.output.summary_path;
  try {
    const PlanOutcome plan = plan_scenario(s);
    std::filesystem::create_directories(report.csv.parent_path());
    std::filesystem::create_directories(report.summary.parent_path());
    std::ofstream csv(report.csv, std::ios::binary);
    csv << format_csv(plan.rows);
    std::ofstream summary(report.summary, std::ios::binary);
    summary << plan.summary.dump(2) << '\n';
    if (!csv || !summary) {
      report.exit_code = ExitCode::Failure;
      report.error = "failed to write outputs under " + out_dir.string();
    }
  } catch (const Error& e) {
    report.exit_code = exit_code_for(e.kind());
    report.error = "scenario '" + s.name + "': " + e.what();
  } catch (const std::filesystem::filesystem_error& e) {
    report.exit_code = ExitCode::Failure;
    report.error = e.what();
  }
  return report;
}

}  // namespace uavtraj::scenario
