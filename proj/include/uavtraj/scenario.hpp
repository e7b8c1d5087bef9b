#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "uavtraj/aoa.hpp"
#include "uavtraj/mpc.hpp"
#include "uavtraj/potential.hpp"

namespace uavtraj::scenario {

struct PhaseSpec {
  double u0 = 0.0;
  double u1 = 0.0;
  Vec2 center;
  bool allow_flat = false;

  friend bool operator==(const PhaseSpec&, const PhaseSpec&) = default;
};

struct InterfaceSpec {
  Interface::Kind kind = Interface::Kind::Line;
  Vec2 normal{1.0, 0.0};
  double offset = 0.0;
  Vec2 center;
  double radius = 1.0;
  int orientation = 1;

  friend bool operator==(const InterfaceSpec&, const InterfaceSpec&) = default;
};

struct SinglePhaseMap {
  PhaseSpec phase;
  friend bool operator==(const SinglePhaseMap&, const SinglePhaseMap&) = default;
};

struct HotspotSumMap {
  std::vector<HotspotTerm> terms;
  double u1 = 0.0;
  friend bool operator==(const HotspotSumMap&, const HotspotSumMap&) = default;
};

struct BiphaseMapSpec {
  PhaseSpec phase1;
  PhaseSpec phase2;
  /// Derived from the equal-potential locus when absent.
  std::optional<InterfaceSpec> interface;
  friend bool operator==(const BiphaseMapSpec&, const BiphaseMapSpec&) = default;
};

using MapSpec = std::variant<SinglePhaseMap, HotspotSumMap, BiphaseMapSpec>;

enum class PlannerKind { ClosedForm, Mpc, Aoa };

std::string_view planner_name(PlannerKind kind) noexcept;

/// AOA settings; unset fields take AoaParams::defaults_for values at run time.
struct AoaSpec {
  std::optional<double> delta_tau;
  std::optional<double> eps_tau;
  std::optional<double> eps_xi;
  std::optional<double> eps_S;
  std::optional<int> max_iters;
  std::optional<double> tol_H;
  std::optional<double> tol_p;
  std::optional<bool> refine_tau;

  friend bool operator==(const AoaSpec&, const AoaSpec&) = default;
};

struct OutputSpec {
  std::string csv_path;
  std::string summary_path;
  int samples = 1000;

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct Scenario {
  std::string name;
  std::string description;
  double k = 1.0;
  BoundaryConditions boundary{TimeWindow(0.0, 1.0), Vec2{}, Vec2{}};
  MapSpec map;
  PlannerKind planner = PlannerKind::ClosedForm;
  /// dt defaults to (T - t0) / 1000.
  MpcParams mpc;
  AoaSpec aoa;
  OutputSpec output;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws Error{ParseError} for malformed text and Error{ValidationError}
/// (message starts with the offending field path) for schema or invariant violations.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
std::string emit_scenario(const Scenario& s);

/// Reference for the scenario document format.
std::string_view schema_reference();

QuadraticPhase build_phase(const PhaseSpec& spec, double k);
/// Single-phase view of single_phase and hotspot_sum maps.
QuadraticPhase build_single_phase(const Scenario& s);
BiPhaseMap build_biphase(const Scenario& s);
AoaParams build_aoa_params(const Scenario& s, const BiPhaseMap& map, double initial_cost);

struct TrajectoryRow {
  double t = 0.0;
  Vec2 position;
  Vec2 velocity;
  double intensity = 0.0;
  double hamiltonian = 0.0;
  int region = 1;
};

inline constexpr std::string_view csv_header = "t,x,y,vx,vy,u,H,region";

std::string format_csv(const std::vector<TrajectoryRow>& rows);
/// Throws Error{ParseError} on a header or row mismatch.
std::vector<TrajectoryRow> parse_csv(std::string_view text);

struct PlanOutcome {
  std::vector<TrajectoryRow> rows;
  nlohmann::ordered_json summary;
  double action = 0.0;
};

/// Runs the configured planner and samples `output.samples` rows uniformly over [t0, T].
PlanOutcome plan_scenario(const Scenario& s);

enum ExitCode : int { Ok = 0, Failure = 1, ParseFailure = 2, ValidationFailure = 3, PlannerFailure = 4,
                      VerificationFailure = 5 };

int exit_code_for(ErrorKind kind) noexcept;

struct RunReport {
  int exit_code = ExitCode::Ok;
  std::string error;
  std::filesystem::path csv;
  std::filesystem::path summary;
};

/// Plans and writes the CSV and summary under out_dir. Never throws for
/// planner errors; they are reported via exit_code and error.
RunReport run_scenario(const Scenario& s, const std::filesystem::path& out_dir);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string scenario;
  std::vector<Check> checks;
  bool pass = true;

  nlohmann::ordered_json to_json() const;
};

/// Cross-checks the planner result against the direct-method oracle at grid size N.
/// With `trajectory_csv`, the file's rows are checked instead of a fresh plan.
VerificationReport verify_scenario(const Scenario& s, int oracle_n,
                                   const std::optional<std::string>& trajectory_csv = std::nullopt);

}  // namespace uavtraj::scenario
