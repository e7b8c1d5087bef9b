#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavtraj/scenario.hpp"

namespace fs = std::filesystem;
using namespace uavtraj;
using namespace uavtraj::scenario;

namespace {

struct Loaded {
  std::optional<Scenario> scenario;
  int exit_code = ExitCode::Ok;
};

Loaded load(const fs::path& path, std::optional<int> samples) {
  try {
    Scenario s = load_scenario(path);
    if (samples) {
      if (*samples < 2) throw Error(ErrorKind::ValidationError, "--samples: must be >= 2");
      s.output.samples = *samples;
    }
    return {std::move(s), ExitCode::Ok};
  } catch (const Error& e) {
    std::cerr << path.string() << ": " << e.what() << '\n';
    return {std::nullopt, exit_code_for(e.kind())};
  }
}

int plan(const fs::path& scenario_path, const fs::path& out, std::optional<int> samples) {
  const Loaded loaded = load(scenario_path, samples);
  if (!loaded.scenario) return loaded.exit_code;
  const RunReport report = run_scenario(*loaded.scenario, out);
  if (report.exit_code != ExitCode::Ok) {
    std::cerr << report.error << '\n';
  } else {
    std::cout << report.csv.string() << '\n' << report.summary.string() << '\n';
  }
  return report.exit_code;
}

int verify(const fs::path& scenario_path, int oracle_n, const std::optional<std::string>& trajectory,
           const std::optional<fs::path>& out) {
  const Loaded loaded = load(scenario_path, std::nullopt);
  if (!loaded.scenario) return loaded.exit_code;
  try {
    const VerificationReport report = verify_scenario(*loaded.scenario, oracle_n, trajectory);
    const std::string text = report.to_json().dump(2);
    std::cout << text << '\n';
    if (out) {
      fs::create_directories(*out);
      std::ofstream(*out / (loaded.scenario->name + ".verify.json")) << text << '\n';
    }
    return report.pass ? ExitCode::Ok : ExitCode::VerificationFailure;
  } catch (const Error& e) {
    std::cerr << loaded.scenario->name << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

int batch(const fs::path& dir, const fs::path& out, std::optional<int> samples) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<std::future<std::pair<fs::path, RunReport>>> jobs;
  jobs.reserve(files.size());
  for (const auto& file : files) {
    jobs.push_back(std::async(std::launch::async, [file, &out, samples] {
      const Loaded loaded = load(file, samples);
      if (!loaded.scenario) return std::pair{file, RunReport{loaded.exit_code, "failed to load", {}, {}}};
      return std::pair{file, run_scenario(*loaded.scenario, out / loaded.scenario->name)};
    }));
  }

  int worst = ExitCode::Ok;
  for (auto& job : jobs) {
    const auto [file, report] = job.get();
    std::cout << (report.exit_code == ExitCode::Ok ? "ok     " : "FAILED ") << file.filename().string();
    if (report.exit_code != ExitCode::Ok) std::cout << "  (" << report.error << ")";
    std::cout << '\n';
    worst = std::max(worst, report.exit_code);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal UAV base-station trajectories over quadratic traffic maps"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<int> samples;
  int oracle_n = 10000;
  std::optional<std::string> trajectory;
  std::optional<std::string> verify_out;

  auto* plan_cmd = app.add_subcommand("plan", "Plan one scenario and write its CSV and summary");
  plan_cmd->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  plan_cmd->add_option("--out", out_dir, "Output directory");
  plan_cmd->add_option("--samples", samples, "Override output.samples");

  auto* verify_cmd = app.add_subcommand("verify", "Cross-check a scenario against the direct-method oracle");
  verify_cmd->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--oracle-n", oracle_n, "Oracle grid intervals")->check(CLI::Range(8, 10000000));
  verify_cmd->add_option("--trajectory", trajectory, "Check this trajectory CSV instead of a fresh plan")
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--out", verify_out, "Also write <name>.verify.json here");

  auto* batch_cmd = app.add_subcommand("batch", "Plan every *.json scenario in a directory concurrently");
  batch_cmd->add_option("--scenario", scenario_path, "Directory of scenario files")
      ->required()
      ->check(CLI::ExistingDirectory);
  batch_cmd->add_option("--out", out_dir, "Output directory (one subdirectory per scenario)");
  batch_cmd->add_option("--samples", samples, "Override output.samples");

  app.add_subcommand("schema", "Print the scenario format reference");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*plan_cmd) return plan(scenario_path, out_dir, samples);
  if (*verify_cmd) {
    std::optional<fs::path> vout;
    if (verify_out) vout = fs::path(*verify_out);
    return verify(scenario_path, oracle_n, trajectory, vout);
  }
  if (*batch_cmd) return batch(scenario_path, out_dir, samples);
  std::cout << schema_reference();
  return 0;
}
