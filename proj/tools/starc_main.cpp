// starc: scenario-driven checks for the spacetime-algebra geometry engine.
//
//   starc run <config.json|builtin> [--checks a,b,...] [--fd-step X]
//         [--tol X] [--samples N] [--seed S] [--output text|json]
//   starc verify-algebra [--samples N] [--seed S]
//   starc list-scenarios
//
// Exit codes: 0 all checks pass, 1 any check failed, 2 configuration error.
// STARC_SEED overrides the seed from every other source.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "starc/scenario.hpp"

namespace {

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int report_exit(const starc::Report& report, const std::string& output) {
  if (output == "json")
    std::cout << starc::emit_report_json(report);
  else
    std::cout << starc::emit_report_text(report);
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spacetime algebra / Riemann-Cartan geometry checks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string checks_csv;
  std::string output = "text";
  double fd_step = -1.0;
  double tol = -1.0;
  int samples = -1;
  long long seed = -1;

  CLI::App* run = app.add_subcommand("run", "run a scenario's checks");
  run->add_option("config", config_path, "config file or builtin scenario name")->required();
  run->add_option("--checks", checks_csv, "comma-separated check names");
  run->add_option("--fd-step", fd_step, "finite difference step override");
  run->add_option("--tol", tol, "tolerance override");
  run->add_option("--samples", samples, "sample point count override");
  run->add_option("--seed", seed, "sample seed override");
  run->add_option("--output", output, "text|json")->check(CLI::IsMember({"text", "json"}));

  int alg_samples = 10000;
  long long alg_seed = 0;
  CLI::App* verify = app.add_subcommand("verify-algebra", "run the algebra property suite");
  verify->add_option("--samples", alg_samples, "random sample count");
  verify->add_option("--seed", alg_seed, "random seed");
  verify->add_option("--output", output, "text|json")->check(CLI::IsMember({"text", "json"}));

  CLI::App* list = app.add_subcommand("list-scenarios", "list builtin scenarios");

  CLI11_PARSE(app, argc, argv);

  const char* env_seed = std::getenv("STARC_SEED");

  try {
    if (list->parsed()) {
      for (const auto& name : starc::list_builtins()) std::cout << name << "\n";
      return 0;
    }

    if (verify->parsed()) {
      std::uint64_t s = alg_seed < 0 ? 0 : static_cast<std::uint64_t>(alg_seed);
      if (env_seed) s = std::strtoull(env_seed, nullptr, 10);
      return report_exit(starc::run_algebra_suite(alg_samples, s), output);
    }

    // run
    starc::ScenarioConfig config;
    if (std::filesystem::exists(config_path)) {
      config = starc::load_config(config_path);
    } else {
      const auto builtins = starc::list_builtins();
      if (std::find(builtins.begin(), builtins.end(), config_path) == builtins.end())
        throw starc::IoError("no such file or builtin scenario: '" + config_path + "'");
      config = starc::builtin_scenario(config_path);
    }
    if (fd_step > 0) config.numerics.fd_step = fd_step;
    if (tol > 0) config.numerics.tolerance = tol;
    if (samples > 0) {
      config.numerics.samples = samples;
      config.chart.sample_count = samples;
    }
    if (seed >= 0) {
      config.numerics.seed = static_cast<std::uint64_t>(seed);
      config.chart.seed = config.numerics.seed;
    }
    if (env_seed) {
      config.numerics.seed = std::strtoull(env_seed, nullptr, 10);
      config.chart.seed = config.numerics.seed;
    }
    return report_exit(starc::run_scenario(config, split_names(checks_csv)), output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
