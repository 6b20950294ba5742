#pragma once

// Scenario configuration, the check registry, builtin scenarios, and the
// algebra property suite behind `starc verify-algebra`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starc/dirac_matrix.hpp"
#include "starc/gauge.hpp"
#include "starc/report.hpp"

namespace starc {

inline constexpr const char* kToolVersion = "0.1.0";

struct NumericsConfig {
  double fd_step = 1e-3;
  double tolerance = 1e-5;
  int samples = 64;
  std::uint64_t seed = 0;
};

// Declarative scenario: a chart, a coframe, a connection, and optional
// rotor / spinor / electromagnetic data, all as expression strings.
struct ScenarioConfig {
  std::string name;
  Chart chart;
  std::array<std::array<std::string, 4>, 4> coframe;

  bool levi_civita = true;
  std::array<std::array<std::string, 6>, 4> connection{};  // pair order 01,02,03,12,13,23

  std::optional<std::array<std::string, 6>> rotor_generator;
  std::optional<std::array<std::string, 8>> spinor;  // blades 1,01,02,03,12,13,23,0123

  struct Em {
    std::array<std::string, 4> A{{"0", "0", "0", "0"}};
    std::optional<std::array<std::string, 6>> F;
    std::array<std::string, 4> J{{"0", "0", "0", "0"}};
    double q = 0.0;
    double m = 0.0;
  };
  std::optional<Em> em;

  NumericsConfig numerics;
  std::vector<std::string> default_checks;

  std::string canonical_json;  // sorted-key echo of the source document
};

// Compiled scenario: every expression parsed and bound.
struct CompiledScenario {
  ScenarioConfig config;
  Coframe frame;
  Connection conn;
  std::optional<RotorField> rotor;
  std::optional<SpinorRepresentative> psi;
  std::optional<MultivectorField> em_A;
  std::optional<MultivectorField> em_F;
  std::optional<MultivectorField> em_J;
  std::vector<Point> points;

  CompiledScenario() : frame(Coframe::minkowski()) {}
};

// Parse and validate a configuration document / file.
// Throws SchemaError, IoError, or the expression errors.
ScenarioConfig parse_config_json(const std::string& text);
ScenarioConfig load_config(const std::string& path);

CompiledScenario compile_scenario(const ScenarioConfig& config);

// Registry of named checks; names listed by list_checks().
std::vector<std::string> list_checks();

// Executes the selected checks (the scenario's default set when `which`
// is empty). Check errors are recorded as failures, never thrown.
Report run_scenario(const ScenarioConfig& config, const std::vector<std::string>& which = {});

// Builtin scenario registry.
std::vector<std::string> list_builtins();
ScenarioConfig builtin_scenario(const std::string& name);

// sta_core property suite: Clifford-calculus identities, generator
// relations, Hodge pairing, idempotent, rotor orthogonality, and an
// independently coded Cayley-table cross-check, over `samples` random
// inputs drawn from `seed`.
Report run_algebra_suite(int samples, std::uint64_t seed);

}  // namespace starc
