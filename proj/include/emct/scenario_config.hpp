// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emct/array_config.hpp"
#include "emct/correlation.hpp"
#include "emct/kv.hpp"

namespace emct {

/// Delay-grid description for curve emission. `geolinear` (the default) packs
/// half the points geometrically between tau_max * 1e-4 and tau_max / 10 and
/// the rest linearly up to tau_max, since correlation varies fastest near 0;
/// 0 is always the first grid point.
struct TauGridSpec {
  enum class Spacing { geolinear, linear, log };
  double tau_max_s = 2.0;
  int points = 60;
  Spacing spacing = Spacing::geolinear;
};

std::vector<double> make_tau_grid(const TauGridSpec& spec);

/// Typed view of a scenario config file. Dotted key paths in the file match
/// the nested field names here exactly (e.g. `array.n_elements`).
struct ScenarioConfig {
  struct Carrier {
    double wavelength_m = 0.125;
  } carrier;

  struct Array {
    int n_elements = 64;
    double spacing_in_wavelengths = 0.5;
    double height_m = 3.0;
  } array;

  struct Ue {
    std::array<double, 2> initial_position_m{200.0, 0.0};
    std::vector<double> speed_mps{2.0};
    bool linear_motion = false;               ///< turn_radius_m = linear
    std::vector<double> turn_radius_m{10.0};  ///< empty iff linear_motion
    std::optional<double> heading_deg;    ///< fixed initial heading; absent = random per trial
  } ue;

  struct Sweep {
    enum class Variable { none, distance, radius };
    enum class Spacing { linear, log };
    Variable variable = Variable::none;
    std::array<double, 2> range{10.0, 300.0};
    int points = 30;
    Spacing spacing = Spacing::linear;
  } sweep;

  struct Correlation {
    std::vector<CorrelationVariant> variants{CorrelationVariant::exact};
    int n_trials = 2000;
    std::uint64_t seed = 7;
    TauGridSpec tau_grid;
  } correlation;

  struct Solver {
    double zeta = 0.9;
    double tau_max_s = 30.0;
    double tol_s = 1e-4;
  } solver;
};

/// Strict mapping from a parsed document: unknown keys, missing required keys
/// (carrier.wavelength_m, array.n_elements, array.height_m,
/// ue.initial_position_m, ue.speed_mps, ue.turn_radius_m, solver.zeta) and
/// type mismatches all throw config_error naming the field path.
ScenarioConfig scenario_config_from_kv(const kv::Document& doc);
kv::Document to_kv(const ScenarioConfig& cfg);

ScenarioConfig parse_scenario_config(const std::string& text);
std::string serialize_scenario_config(const ScenarioConfig& cfg);
ScenarioConfig load_scenario_config(const std::string& path);

/// Range/sanity validation with field-path messages; called by the parsers.
void validate(const ScenarioConfig& cfg);

ArrayConfig<double> make_array(const ScenarioConfig& cfg);

/// The swept values (distances or radii) ordered ascending.
std::vector<double> sweep_values(const ScenarioConfig::Sweep& sweep);

}  // namespace emct
