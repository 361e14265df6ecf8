#include "beamsolid/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace beamsolid {

using nlohmann::json;

namespace {

const json* find(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double require_number(const json& j, const std::string& key,
                      const std::string& full_name = {}) {
  const std::string& shown = full_name.empty() ? key : full_name;
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError("config: missing key '" + shown + "'");
  if (!it->is_number()) throw ConfigError("config: '" + shown + "' must be a number");
  return it->get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) throw ConfigError("config: '" + key + "' must be a number");
  return it->get<double>();
}

Vec3 read_vec3(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
      !j[2].is_number()) {
    throw ConfigError("config: '" + key + "' must be an array of 3 numbers");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Vec3 vec3_or(const json& parent, const std::string& key, const Vec3& fallback) {
  const auto it = parent.find(key);
  if (it == parent.end()) return fallback;
  return read_vec3(*it, key);
}

SolidMaterial read_material(const json& j) {
  if (find(j, "lambda") != nullptr || find(j, "mu") != nullptr) {
    try {
      return SolidMaterial::from_lame(
          require_number(j, "lambda", "solid.material.lambda"),
          require_number(j, "mu", "solid.material.mu"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: solid.material: ") + e.what());
    }
  }
  const auto keys = std::pair{"youngs_modulus", "poisson_ratio"};
  if (find(j, keys.first) == nullptr) {
    throw ConfigError("config: missing key 'solid.material.youngs_modulus'");
  }
  if (find(j, keys.second) == nullptr) {
    throw ConfigError("config: missing key 'solid.material.poisson_ratio'");
  }
  try {
    return SolidMaterial::from_young_poisson(j[keys.first].get<double>(),
                                             j[keys.second].get<double>());
  } catch (const std::invalid_argument& e) {
    // Names the offending key, e.g. poisson_ratio out of range.
    throw ConfigError(std::string("config: solid.material: ") + e.what());
  }
}

BeamSection read_section(const json& j) {
  auto field = [&j](const char* key) {
    return require_number(j, key, std::string("beam.section.") + key);
  };
  BeamSection s;
  s.E = field("youngs_modulus");
  s.G = field("shear_modulus");
  s.A = field("area");
  s.A1 = field("shear_area_1");
  s.A2 = field("shear_area_2");
  s.I1 = field("inertia_1");
  s.I2 = field("inertia_2");
  s.It = field("torsion_inertia");
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: beam.section: ") + e.what());
  }
  return s;
}

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace

ScenarioConfig config_from_json(const json& j) {
  ScenarioConfig cfg;

  const json* solid = find(j, "solid");
  if (solid == nullptr) throw ConfigError("config: missing key 'solid'");
  cfg.solid_dimensions = read_vec3(
      solid->contains("dimensions") ? (*solid)["dimensions"] : json(),
      "solid.dimensions");
  {
    const json* div = find(*solid, "divisions");
    if (div == nullptr || !div->is_array() || div->size() != 3) {
      throw ConfigError("config: 'solid.divisions' must be an array of 3 integers");
    }
    for (int d = 0; d < 3; ++d) {
      if (!(*div)[d].is_number_integer() || (*div)[d].get<int>() < 1) {
        throw ConfigError("config: 'solid.divisions' entries must be positive integers");
      }
      cfg.solid_divisions[d] = (*div)[d].get<int>();
    }
  }
  for (int d = 0; d < 3; ++d) {
    if (!(cfg.solid_dimensions[d] > 0.0)) {
      throw ConfigError("config: 'solid.dimensions' entries must be positive");
    }
  }
  const json* material = find(*solid, "material");
  if (material == nullptr) throw ConfigError("config: missing key 'solid.material'");
  cfg.material = read_material(*material);

  const json* beam = find(j, "beam");
  if (beam == nullptr) throw ConfigError("config: missing key 'beam'");
  cfg.beam_length = require_number(*beam, "length", "beam.length");
  if (!(cfg.beam_length > 0.0)) {
    throw ConfigError("config: 'beam.length' must be positive");
  }
  {
    const json* elems = find(*beam, "elements");
    if (elems == nullptr || !elems->is_number_integer() || elems->get<int>() < 1) {
      throw ConfigError("config: 'beam.elements' must be a positive integer");
    }
    cfg.beam_elements = elems->get<int>();
  }
  const json* section = find(*beam, "section");
  if (section == nullptr) throw ConfigError("config: missing key 'beam.section'");
  cfg.section = read_section(*section);
  if (const json* v = find(*beam, "axis_origin")) {
    cfg.axis_origin = read_vec3(*v, "beam.axis_origin");
  }
  if (const json* v = find(*beam, "axis_direction")) {
    cfg.axis_direction = read_vec3(*v, "beam.axis_direction");
  }

  const json* interface = find(j, "interface");
  if (interface == nullptr || find(*interface, "face_set") == nullptr ||
      !(*interface)["face_set"].is_string()) {
    throw ConfigError("config: missing key 'interface.face_set'");
  }
  cfg.interface_face_set = (*interface)["face_set"].get<std::string>();

  if (const json* loads = find(j, "loads")) {
    cfg.solid_loads.body_force = vec3_or(*loads, "body_force", Vec3::Zero());
    if (const json* tractions = find(*loads, "tractions")) {
      if (!tractions->is_array()) {
        throw ConfigError("config: 'loads.tractions' must be an array");
      }
      for (const auto& t : *tractions) {
        if (find(t, "face_set") == nullptr || !t["face_set"].is_string()) {
          throw ConfigError("config: 'loads.tractions[].face_set' is required");
        }
        SurfaceTraction st;
        st.face_set = t["face_set"].get<std::string>();
        st.traction = read_vec3(
            t.contains("traction") ? t["traction"] : json(),
            "loads.tractions[].traction");
        if (st.face_set == cfg.interface_face_set) {
          throw ConfigError(
              "config: 'loads.tractions[].face_set' must not be the interface set");
        }
        cfg.solid_loads.tractions.push_back(st);
      }
    }
    cfg.beam_loads.distributed_force = vec3_or(*loads, "beam_force", Vec3::Zero());
    cfg.beam_loads.distributed_moment = vec3_or(*loads, "beam_moment", Vec3::Zero());
    cfg.beam_loads.tip_force = vec3_or(*loads, "tip_force", Vec3::Zero());
    cfg.beam_loads.tip_moment = vec3_or(*loads, "tip_moment", Vec3::Zero());
  }

  cfg.characteristic_length =
      number_or(j, "characteristic_length", cfg.beam_length);
  if (!(cfg.characteristic_length > 0.0)) {
    throw ConfigError("config: 'characteristic_length' must be positive");
  }

  if (const json* analysis = find(j, "analysis")) {
    auto flag = [&](const char* key, bool fallback) {
      const json* v = find(*analysis, key);
      if (v == nullptr) return fallback;
      if (!v->is_boolean()) {
        throw ConfigError(std::string("config: 'analysis.") + key +
                          "' must be a boolean");
      }
      return v->get<bool>();
    };
    cfg.do_solve = flag("solve", cfg.do_solve);
    cfg.do_stability = flag("stability", cfg.do_stability);
    cfg.do_export = flag("export", cfg.do_export);
    cfg.parallel_assembly = flag("parallel_assembly", cfg.parallel_assembly);
    if (const json* v = find(*analysis, "refinement_levels")) {
      if (!v->is_number_integer() || v->get<int>() < 1) {
        throw ConfigError("config: 'analysis.refinement_levels' must be a positive integer");
      }
      cfg.refinement_levels = v->get<int>();
    }
  }

  if (const json* output = find(j, "output")) {
    if (const json* dir = find(*output, "directory")) {
      if (!dir->is_string()) {
        throw ConfigError("config: 'output.directory' must be a string");
      }
      cfg.output_directory = dir->get<std::string>();
    }
  }
  return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config: parse error in '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const ScenarioConfig& cfg) {
  json j;
  j["solid"]["dimensions"] = vec3_to_json(cfg.solid_dimensions);
  j["solid"]["divisions"] = cfg.solid_divisions;
  j["solid"]["material"] = {{"lambda", cfg.material.lambda}, {"mu", cfg.material.mu}};

  j["beam"]["length"] = cfg.beam_length;
  j["beam"]["elements"] = cfg.beam_elements;
  j["beam"]["section"] = {
      {"youngs_modulus", cfg.section.E}, {"shear_modulus", cfg.section.G},
      {"area", cfg.section.A},           {"shear_area_1", cfg.section.A1},
      {"shear_area_2", cfg.section.A2},  {"inertia_1", cfg.section.I1},
      {"inertia_2", cfg.section.I2},     {"torsion_inertia", cfg.section.It}};
  if (cfg.axis_origin) j["beam"]["axis_origin"] = vec3_to_json(*cfg.axis_origin);
  if (cfg.axis_direction) {
    j["beam"]["axis_direction"] = vec3_to_json(*cfg.axis_direction);
  }

  j["interface"]["face_set"] = cfg.interface_face_set;

  j["loads"]["body_force"] = vec3_to_json(cfg.solid_loads.body_force);
  j["loads"]["tractions"] = json::array();
  for (const auto& t : cfg.solid_loads.tractions) {
    j["loads"]["tractions"].push_back(
        {{"face_set", t.face_set}, {"traction", vec3_to_json(t.traction)}});
  }
  j["loads"]["beam_force"] = vec3_to_json(cfg.beam_loads.distributed_force);
  j["loads"]["beam_moment"] = vec3_to_json(cfg.beam_loads.distributed_moment);
  j["loads"]["tip_force"] = vec3_to_json(cfg.beam_loads.tip_force);
  j["loads"]["tip_moment"] = vec3_to_json(cfg.beam_loads.tip_moment);

  j["characteristic_length"] = cfg.characteristic_length;

  j["analysis"] = {{"solve", cfg.do_solve},
                   {"stability", cfg.do_stability},
                   {"export", cfg.do_export},
                   {"refinement_levels", cfg.refinement_levels},
                   {"parallel_assembly", cfg.parallel_assembly}};
  j["output"]["directory"] = cfg.output_directory;
  return j;
}

namespace {

struct LevelModel {
  Mesh mesh;
  InterfaceSurface surface;
  BeamModel beam;
};

LevelModel build_level(const ScenarioConfig& cfg, int level) {
  const int factor = 1 << level;  // uniform bisection per level
  LevelModel model;
  model.mesh = build_block_mesh(
      cfg.solid_dimensions, {cfg.solid_divisions[0] * factor,
                             cfg.solid_divisions[1] * factor,
                             cfg.solid_divisions[2] * factor});

  if (model.mesh.face_sets.find(cfg.interface_face_set) ==
          model.mesh.face_sets.end() ||
      model.mesh.face_sets.at(cfg.interface_face_set).empty()) {
    throw ConfigError("config: 'interface.face_set' names a missing or empty set");
  }
  model.surface = extract_interface(model.mesh, cfg.interface_face_set);
  if (!(model.surface.area > 0.0)) {
    throw ConfigError("config: interface surface has zero area");
  }
  if (!model.surface.is_planar) {
    std::cerr << "warning: interface surface is not planar; the coupling "
                 "constraints are only validated for planar interfaces\n";
  }

  const Vec3 outward = model.surface.quad_points.front().normal;
  const Vec3 direction = cfg.axis_direction ? *cfg.axis_direction : Vec3(-outward);
  const Vec3 origin = cfg.axis_origin
                          ? *cfg.axis_origin
                          : Vec3(model.surface.centroid - cfg.beam_length * direction);

  model.beam = build_beam(cfg.beam_length, cfg.beam_elements * factor, origin,
                          direction, cfg.section);

  const Vec3 tip = model.beam.node_position(model.beam.node_count() - 1);
  if ((tip - model.surface.centroid).norm() > 1e-8 * cfg.beam_length) {
    throw ConfigError(
        "config: beam axis must meet the interface at its centroid "
        "(beam.axis_origin/axis_direction)");
  }
  if (model.surface.is_planar) {
    if (std::abs(std::abs(direction.dot(outward)) - 1.0) > 1e-8) {
      throw ConfigError("config: beam axis must be normal to the interface");
    }
    const Vec3 d1 = model.beam.reference_rotation.col(0);
    if (std::abs(d1.dot(outward)) > 1e-8) {
      throw ConfigError(
          "config: section principal axes must lie in the interface plane");
    }
  }
  return model;
}

std::string failure_line(int level, const std::string& check,
                         const std::string& detail) {
  std::ostringstream os;
  os << "level=" << level << " check=" << check << " detail=" << detail;
  return os.str();
}

}  // namespace

RunResult run(const ScenarioConfig& cfg) {
  RunResult result;
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_directory);
  const fs::path out_dir(cfg.output_directory);
  const std::string csv_path = (out_dir / "stability.csv").string();
  if (cfg.do_stability) {
    fs::remove(csv_path);  // one CSV per run
  }

  for (int level = 0; level < cfg.refinement_levels; ++level) {
    LevelArtifacts artifacts;
    artifacts.level = level;

    const LevelModel model = build_level(cfg, level);
    const SaddleSystem system = assemble_system(
        model.mesh, model.beam, model.surface, cfg.material, cfg.solid_loads,
        cfg.beam_loads, cfg.characteristic_length, cfg.interface_face_set,
        cfg.parallel_assembly);

    if (cfg.do_solve) {
      artifacts.solve = solve(system);
      artifacts.solved = true;
      if (!artifacts.solve.constraint_residual_ok()) {
        result.failures.push_back(failure_line(
            level, "constraint_residual",
            std::to_string(artifacts.solve.constraint_residual.norm())));
      }
      if (!artifacts.solve.energy_ok()) {
        result.failures.push_back(failure_line(
            level, "energy_identity", std::to_string(artifacts.solve.energy_gap)));
      }
      if (artifacts.solve.zero_pivots != 0) {
        result.failures.push_back(failure_line(
            level, "zero_pivots", std::to_string(artifacts.solve.zero_pivots)));
      }
      std::ostringstream name;
      name << "solve_level" << level << ".txt";
      write_solve_report(artifacts.solve, system, (out_dir / name.str()).string());
    }

    if (cfg.do_export) {
      std::ostringstream prefix;
      prefix << "system_level" << level;
      export_system(system, (out_dir / prefix.str()).string(), true);
    }

    if (cfg.do_stability) {
      StabilityReport report;
      report.level = level;
      report.n_primal = system.primal_dofs();
      report.alpha = kernel_ellipticity(system);
      report.beta = inf_sup_constant(system);
      report.rigid_modes_unconstrained = rigid_mode_census(system.K, 1e-8);
      report.rigid_modes_constrained = rigid_mode_census(kkt_matrix(system), 1e-8);
      artifacts.stability = report;
      artifacts.analyzed = true;

      if (!(report.alpha > 0.0)) {
        result.failures.push_back(
            failure_line(level, "kernel_ellipticity", std::to_string(report.alpha)));
      }
      if (!(report.beta > 0.0)) {
        result.failures.push_back(
            failure_line(level, "inf_sup", std::to_string(report.beta)));
      }
      if (report.rigid_modes_constrained != 0) {
        result.failures.push_back(
            failure_line(level, "rigid_modes_constrained",
                         std::to_string(report.rigid_modes_constrained)));
      }
      append_stability_csv(csv_path, report);
    }

    result.levels.push_back(std::move(artifacts));
  }

  result.exit_code = result.failures.empty() ? 0 : 1;
  return result;
}

}  // namespace beamsolid
