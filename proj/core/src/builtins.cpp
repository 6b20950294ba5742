#include <algorithm>
#include <map>

#include "starc/scenario.hpp"

namespace starc {

namespace {

const char* kFlatMinkowski = R"json({
  "name": "flat_minkowski",
  "chart": {"coordinates": ["t","x","y","z"], "domain": [[0,1],[0,1],[0,1],[0,1]]},
  "coframe": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
  "connection": "levi_civita",
  "rotor_generator": ["0","0","0","0.4*x","0","0"],
  "spinor": ["1+0.1*sin(t)","0.2*x","0.05*y","0","0.3*cos(t)","0.1*z","0.15","0.05*x"],
  "numerics": {"fd_step": 1e-3, "tolerance": 1e-4, "samples": 64, "seed": 1},
  "checks": ["coframe_duality","structure_antisymmetry","metric_compatibility",
             "torsion_zero","curvature_zero","torsion_two_path","curvature_two_path",
             "cartan_torsion_two_path","cartan_curvature_two_path","commutator_identity",
             "bianchi_first","bianchi_second","grade_preservation","derivation_law",
             "convergence_order","rotor_normalization","rotor_lambda",
             "active_orthonormality","active_roundtrip","generalized_connection",
             "spinor_commutator","evenness"]
})json";

const char* kRindlerLc = R"json({
  "name": "rindler_lc",
  "chart": {"coordinates": ["t","x","y","z"], "domain": [[0,1],[0.8,1.8],[0,1],[0,1]]},
  "coframe": [["x","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
  "connection": "levi_civita",
  "rotor_generator": ["0","0","0","0.3*x","0","0"],
  "spinor": ["1","0.1*x","0","0","0.2*sin(t)","0","0.1","0"],
  "numerics": {"fd_step": 5e-4, "tolerance": 1e-4, "samples": 64, "seed": 2},
  "checks": ["coframe_duality","structure_antisymmetry","metric_compatibility",
             "torsion_zero","curvature_zero","torsion_two_path","curvature_two_path",
             "cartan_torsion_two_path","cartan_curvature_two_path","commutator_identity",
             "bianchi_first","bianchi_second","grade_preservation","derivation_law",
             "convergence_order","rotor_normalization","rotor_lambda",
             "active_orthonormality","active_roundtrip","generalized_connection",
             "spinor_commutator","evenness"]
})json";

const char* kSphereBlock = R"json({
  "name": "sphere_block",
  "chart": {"coordinates": ["t","x","th","ph"], "domain": [[0,1],[0,1],[0.5,2.6],[0,1]]},
  "coframe": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","sin(th)"]],
  "connection": "levi_civita",
  "numerics": {"fd_step": 5e-4, "tolerance": 1e-4, "samples": 64, "seed": 3},
  "checks": ["coframe_duality","structure_antisymmetry","metric_compatibility",
             "torsion_zero","torsion_two_path","curvature_two_path",
             "cartan_torsion_two_path","cartan_curvature_two_path","commutator_identity",
             "bianchi_first","bianchi_second","grade_preservation","derivation_law",
             "convergence_order"]
})json";

const char* kTorsionGenAbelian = R"json({
  "name": "torsion_gen_abelian",
  "chart": {"coordinates": ["t","x","y","z"], "domain": [[0,1],[0,1],[0,1],[0,1]]},
  "coframe": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
  "connection": "levi_civita",
  "rotor_generator": ["0","0","0","x","0","0"],
  "spinor": ["1","0","0.1*y","0","0.2*x","0","0","0"],
  "numerics": {"fd_step": 1e-3, "tolerance": 1e-4, "samples": 64, "seed": 4},
  "checks": ["torsion_gen_before","torsion_gen_generated","torsion_gen_after","torsion_gen_two_path",
             "generalized_connection","curvature_covariance","rotor_normalization",
             "rotor_lambda","active_orthonormality","active_roundtrip"]
})json";

const char* kTorsionGenConstantRotor = R"json({
  "name": "torsion_gen_constant_rotor",
  "chart": {"coordinates": ["t","x","y","z"], "domain": [[0,1],[0,1],[0,1],[0,1]]},
  "coframe": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
  "connection": "levi_civita",
  "rotor_generator": ["0.3","0","0","0.7","0","0"],
  "numerics": {"fd_step": 1e-3, "tolerance": 1e-4, "samples": 64, "seed": 5},
  "checks": ["torsion_gen_before","torsion_gen_absent","torsion_gen_two_path",
             "rotor_normalization","rotor_lambda"]
})json";

const char* kMaxwellPlanewaveGauge = R"json({
  "name": "maxwell_planewave_gauge",
  "chart": {"coordinates": ["t","x","y","z"], "domain": [[0,1],[0,1],[0,1],[0,1]]},
  "coframe": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
  "connection": "levi_civita",
  "rotor_generator": ["0","0","0","x","0","0"],
  "em": {"F": ["cos(t-z)","0","0","0","cos(t-z)","0"],
         "J": ["0","0","0","0"], "q": 0, "m": 0},
  "numerics": {"fd_step": 1e-3, "tolerance": 1e-5, "samples": 64, "seed": 6},
  "checks": ["maxwell_action_invariance","maxwell_original","maxwell_naive_breaks",
             "maxwell_repaired","action_density_invariance","rotor_normalization",
             "rotor_lambda"]
})json";

const char* kDheRestwave = R"json({
  "name": "dhe_restwave",
  "chart": {"coordinates": ["t","x","y","z"], "domain": [[0,1],[0,1],[0,1],[0,1]]},
  "coframe": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
  "connection": "levi_civita",
  "spinor": ["cos(t)","0","0","0","sin(t)","0","0","0"],
  "em": {"A": ["0","0","0","0"], "J": ["0","0","0","0"], "q": 0, "m": 1},
  "numerics": {"fd_step": 1e-4, "tolerance": 1e-5, "samples": 64, "seed": 7},
  "checks": ["dhe_restwave","dhe_matrix_oracle","dhe_rc_collapse",
             "dhe_lagrangian_consistency","evenness"]
})json";

const char* kDhePassiveGauge = R"json({
  "name": "dhe_passive_gauge",
  "chart": {"coordinates": ["t","x","y","z"], "domain": [[0,1],[0,1],[0,1],[0,1]]},
  "coframe": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
  "connection": "levi_civita",
  "rotor_generator": ["0","0","0","0.5*x","0","0"],
  "spinor": ["cos(t)","0","0","0","sin(t)","0","0","0"],
  "em": {"A": ["0","0","0","0"], "J": ["0","0","0","0"], "q": 0, "m": 1},
  "numerics": {"fd_step": 1e-4, "tolerance": 1e-5, "samples": 32, "seed": 8},
  "checks": ["dhe_passive_invariance","dhe_restwave","evenness","rotor_normalization"]
})json";

const std::map<std::string, const char*>& builtin_registry() {
  static const std::map<std::string, const char*> registry = {
      {"flat_minkowski", kFlatMinkowski},
      {"rindler_lc", kRindlerLc},
      {"sphere_block", kSphereBlock},
      {"torsion_gen_abelian", kTorsionGenAbelian},
      {"torsion_gen_constant_rotor", kTorsionGenConstantRotor},
      {"maxwell_planewave_gauge", kMaxwellPlanewaveGauge},
      {"dhe_restwave", kDheRestwave},
      {"dhe_passive_gauge", kDhePassiveGauge},
  };
  return registry;
}

}  // namespace

std::vector<std::string> list_builtins() {
  std::vector<std::string> names;
  for (const auto& [name, text] : builtin_registry()) names.push_back(name);
  std::sort(names.begin(), names.end());
  return names;
}

ScenarioConfig builtin_scenario(const std::string& name) {
  auto it = builtin_registry().find(name);
  if (it == builtin_registry().end()) throw IoError("unknown builtin scenario '" + name + "'");
  return parse_config_json(it->second);
}

}  // namespace starc
