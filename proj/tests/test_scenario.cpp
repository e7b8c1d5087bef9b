#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "uavtraj/scenario.hpp"

using namespace uavtraj;
using namespace uavtraj::scenario;

namespace {

const char* kSingle = R"({
  // hot spot at the origin
  "name": "unit",
  "k": 1,
  "boundary": {"t0": 0, "T": 1, "z0": [1, 0], "zT": [0, 0]},
  "map": {"type": "single_phase", "u0": -1, "center": [0, 0]},
  "planner": "closed_form",
  "output": {"samples": 11}
})";

const char* kBiphase = R"({
  "name": "two_spots",
  "k": 1,
  "boundary": {"t0": 0, "T": 4, "z0": [-1, 0], "zT": [5, 0]},
  "map": {"type": "biphase",
          "phase1": {"u0": -1, "center": [0, 0]},
          "phase2": {"u0": -1, "u1": 0.5, "center": [4, 0]}},
  "planner": "aoa",
  "mpc": {"dt": 0.01},
  "output": {"samples": 101}
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  if (at != std::string::npos) s.replace(at, from.size(), to);
  return s;
}

void expect_validation(const std::string& text, const std::string& path) {
  try {
    parse_scenario(text);
    ADD_FAILURE() << "accepted: " << path;
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError) << e.what();
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos) << e.what();
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Scenario, ParsesWithDefaults) {
  const Scenario s = parse_scenario(kSingle);
  EXPECT_EQ(s.name, "unit");
  EXPECT_EQ(s.planner, PlannerKind::ClosedForm);
  EXPECT_DOUBLE_EQ(s.mpc.dt, 1e-3);
  EXPECT_EQ(s.output.csv_path, "unit.csv");
  EXPECT_EQ(s.output.summary_path, "unit.summary.json");
  EXPECT_EQ(s.output.samples, 11);
  ASSERT_TRUE(std::holds_alternative<SinglePhaseMap>(s.map));
  EXPECT_EQ(std::get<SinglePhaseMap>(s.map).phase.u0, -1.0);
}

TEST(Scenario, RoundTrip) {
  for (const char* text : {kSingle, kBiphase}) {
    const Scenario s = parse_scenario(text);
    EXPECT_EQ(parse_scenario(emit_scenario(s)), s);
  }
}

TEST(Scenario, MalformedTextIsParseError) {
  try {
    parse_scenario("{\"name\": ");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}

TEST(Scenario, ValidationErrorsNameTheField) {
  const std::string base = kSingle;
  expect_validation(replace(base, "\"k\": 1", "\"k\": 0"), "k");
  expect_validation(replace(base, "\"T\": 1", "\"T\": 0"), "boundary");
  expect_validation(replace(base, "\"u0\": -1", "\"u0\": 0"), "map");
  expect_validation(replace(base, "\"u0\": -1", "\"u0\": -1, \"bogus\": 2"), "map.bogus");
  expect_validation(replace(base, "\"closed_form\"", "\"warp\""), "planner");
  expect_validation(replace(base, "\"closed_form\"", "\"aoa\""), "planner");
  expect_validation(replace(base, "\"name\": \"unit\"", "\"name\": \"a/b\""), "name");
  expect_validation(replace(base, "\"samples\": 11", "\"samples\": 1"), "output.samples");
  expect_validation(replace(base, "[1, 0]", "[1]"), "boundary.z0");
  expect_validation(replace(base, "\"planner\"", "\"mpc\": {\"dt\": 0.9}, \"planner\""), "mpc.dt");
  const std::string bi = kBiphase;
  expect_validation(replace(bi, "\"u0\": -1, \"u1\": 0.5, \"center\": [4, 0]}",
                            "\"u0\": 1, \"center\": [4, 0]},\n \"interface\": {\"kind\": \"line\", \"normal\": [1, 0], \"offset\": 2}"),
                    "map.phase2.u0");
  expect_validation(replace(bi, "\"u0\": -1, \"u1\": 0.5", "\"u0\": 1, \"u1\": 0.5"), "map.interface");
}

TEST(Scenario, HotspotSumReduces) {
  const Scenario s = parse_scenario(R"({
    "name": "sum", "k": 2,
    "boundary": {"t0": 0, "T": 1, "z0": [0, 0], "zT": [1, 1]},
    "map": {"type": "hotspot_sum", "terms": [{"u": -1, "z": [0, 0]}, {"u": -1, "z": [2, 0]}], "u1": 0.25},
    "planner": "closed_form"})");
  const QuadraticPhase p = build_single_phase(s);
  EXPECT_EQ(p.center(), Vec2(1, 0));
  EXPECT_EQ(p.u0(), -2.0);
  EXPECT_DOUBLE_EQ(p.u1(), 0.25 - 1.0);
  EXPECT_EQ(p.k(), 2.0);
}

TEST(Scenario, CsvRoundTripAndHeader) {
  const PlanOutcome out = plan_scenario(parse_scenario(kSingle));
  ASSERT_EQ(out.rows.size(), 11u);
  const std::string csv = format_csv(out.rows);
  EXPECT_EQ(csv.substr(0, csv_header.size()), csv_header);
  const auto back = parse_csv(csv);
  ASSERT_EQ(back.size(), out.rows.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].t, out.rows[i].t);
    EXPECT_EQ(back[i].position, out.rows[i].position);
    EXPECT_EQ(back[i].region, out.rows[i].region);
  }
  EXPECT_THROW(parse_csv("t,x\n1,2\n"), Error);
  EXPECT_NEAR(out.action, 0.656517642749666, 1e-12);
  EXPECT_EQ(out.summary["planner"], "closed_form");
}

TEST(Scenario, AoaSummary) {
  const PlanOutcome out = plan_scenario(parse_scenario(kBiphase));
  EXPECT_EQ(out.rows.size(), 101u);
  EXPECT_TRUE(out.summary["converged"].get<bool>());
  EXPECT_LE(out.summary["action"].get<double>(), out.summary["mpc_action"].get<double>());
  EXPECT_EQ(out.rows.front().region, 1);
  EXPECT_EQ(out.rows.back().region, 2);
}

TEST(Scenario, ExitCodes) {
  EXPECT_EQ(exit_code_for(ErrorKind::ParseError), ExitCode::ParseFailure);
  EXPECT_EQ(exit_code_for(ErrorKind::ValidationError), ExitCode::ValidationFailure);
  EXPECT_EQ(exit_code_for(ErrorKind::ConjugatePoint), ExitCode::PlannerFailure);
  EXPECT_EQ(exit_code_for(ErrorKind::SingleCrossingViolated), ExitCode::PlannerFailure);
}

TEST(Scenario, RunWritesDeterministicFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "uavtraj_test_run";
  std::filesystem::remove_all(dir);
  const Scenario s = parse_scenario(kSingle);
  const RunReport a = run_scenario(s, dir / "a");
  const RunReport b = run_scenario(s, dir / "b");
  ASSERT_EQ(a.exit_code, ExitCode::Ok) << a.error;
  EXPECT_EQ(slurp(a.csv), slurp(b.csv));
  EXPECT_EQ(slurp(a.summary), slurp(b.summary));
  std::filesystem::remove_all(dir);
}

TEST(Scenario, PlannerFailureIsReported) {
  const Scenario s = parse_scenario(replace(replace(kSingle, "\"u0\": -1", "\"u0\": 1"), "\"T\": 1", "\"T\": 3.141592653589793"));
  const auto dir = std::filesystem::temp_directory_path() / "uavtraj_test_fail";
  const RunReport r = run_scenario(s, dir);
  EXPECT_EQ(r.exit_code, ExitCode::PlannerFailure);
  EXPECT_NE(r.error.find("ConjugatePoint"), std::string::npos) << r.error;
  std::filesystem::remove_all(dir);
}

TEST(Scenario, VerifyPassesAndCatchesCorruption) {
  const Scenario s = parse_scenario(kSingle);
  const VerificationReport good = verify_scenario(s, 2000);
  EXPECT_TRUE(good.pass) << good.to_json().dump(2);

  const auto dir = std::filesystem::temp_directory_path() / "uavtraj_test_verify";
  std::filesystem::remove_all(dir);
  const RunReport r = run_scenario(s, dir);
  ASSERT_EQ(r.exit_code, ExitCode::Ok);
  EXPECT_TRUE(verify_scenario(s, 2000, r.csv.string()).pass);

  auto rows = parse_csv(slurp(r.csv));
  rows[5].position = rows[5].position + Vec2{1e-3, 0};
  const auto bad = dir / "bad.csv";
  std::ofstream(bad) << format_csv(rows);
  EXPECT_FALSE(verify_scenario(s, 2000, bad.string()).pass);
  std::filesystem::remove_all(dir);
}
