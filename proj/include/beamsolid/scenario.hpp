#pragma once

#include "beamsolid/analysis.hpp"
#include "beamsolid/beam.hpp"
#include "beamsolid/saddle.hpp"
#include "beamsolid/solid.hpp"
#include "beamsolid/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace beamsolid {

/// Fully validated scenario: a solid block coupled to a cantilever beam on
/// one planar face set, plus analysis switches and output locations.
struct ScenarioConfig {
  Vec3 solid_dimensions = Vec3::Ones();
  std::array<int, 3> solid_divisions{1, 1, 1};
  SolidMaterial material;

  double beam_length = 1.0;
  int beam_elements = 1;
  BeamSection section;
  std::optional<Vec3> axis_origin;     // default: interface centroid - L * direction
  std::optional<Vec3> axis_direction;  // default: inward interface normal

  std::string interface_face_set;

  SolidLoads solid_loads;
  BeamLoads beam_loads;

  double characteristic_length = 0.0;  // materialized default: beam length

  bool do_solve = true;
  bool do_stability = false;
  bool do_export = false;
  int refinement_levels = 1;
  bool parallel_assembly = false;

  std::string output_directory = ".";
};

ScenarioConfig parse_config(const std::string& path);
ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& config);

/// One refinement level of a run.
struct LevelArtifacts {
  int level = 0;
  bool solved = false;
  SolveReport solve;
  bool analyzed = false;
  StabilityReport stability;
};

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> failures;  // machine-readable: level=<l> check=<name> ...
  std::vector<LevelArtifacts> levels;
};

/// Executes the requested stages for each refinement level (uniform
/// bisection of divisions and beam elements per level). Writes the solve
/// record, the stability CSV and optional MatrixMarket dumps under the
/// output directory. Exit code 0 iff every invariant check passed.
RunResult run(const ScenarioConfig& config);

}  // namespace beamsolid
