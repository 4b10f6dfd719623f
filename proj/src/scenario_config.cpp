// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#include "emct/scenario_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "emct/errors.hpp"

namespace emct {

std::vector<double> make_tau_grid(const TauGridSpec& spec) {
  if (!(spec.tau_max_s > 0)) throw config_error("correlation.tau_grid.tau_max_s: must be > 0");
  if (spec.points < 2) throw config_error("correlation.tau_grid.points: must be >= 2");
  std::vector<double> taus;
  taus.reserve(std::size_t(spec.points));
  taus.push_back(0.0);
  const int rest = spec.points - 1;
  switch (spec.spacing) {
    case TauGridSpec::Spacing::linear: {
      for (int j = 1; j <= rest; ++j) taus.push_back(spec.tau_max_s * double(j) / double(rest));
      break;
    }
    case TauGridSpec::Spacing::log: {
      const double lo = spec.tau_max_s * 1e-4;
      for (int j = 0; j < rest; ++j)
        taus.push_back(lo * std::pow(spec.tau_max_s / lo,
                                     rest == 1 ? 1.0 : double(j) / double(rest - 1)));
      break;
    }
    case TauGridSpec::Spacing::geolinear: {
      if (spec.points < 6) throw config_error("correlation.tau_grid.points: geolinear needs >= 6");
      const int n_geo = rest / 2;
      const int n_lin = rest - n_geo;
      const double lo = spec.tau_max_s * 1e-4;
      const double knee = spec.tau_max_s / 10.0;
      for (int j = 0; j < n_geo; ++j)
        taus.push_back(lo * std::pow(knee / lo, double(j) / double(n_geo - 1)));
      for (int j = 1; j <= n_lin; ++j)
        taus.push_back(knee + (spec.tau_max_s - knee) * double(j) / double(n_lin));
      break;
    }
  }
  for (std::size_t i = 1; i < taus.size(); ++i)
    if (!(taus[i] > taus[i - 1])) throw config_error("correlation.tau_grid: grid not increasing");
  return taus;
}

namespace {

const std::set<std::string> kKnownKeys = {
    "carrier.wavelength_m",
    "array.n_elements",
    "array.spacing_in_wavelengths",
    "array.height_m",
    "ue.initial_position_m",
    "ue.speed_mps",
    "ue.turn_radius_m",
    "ue.heading_deg",
    "sweep.variable",
    "sweep.range",
    "sweep.points",
    "sweep.spacing",
    "correlation.variants",
    "correlation.n_trials",
    "correlation.seed",
    "correlation.tau_grid.tau_max_s",
    "correlation.tau_grid.points",
    "correlation.tau_grid.spacing",
    "solver.zeta",
    "solver.tau_max_s",
    "solver.tol_s",
};

const kv::Value& require(const kv::Document& doc, const std::string& key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw config_error(key + ": required field is missing");
  return it->second;
}

const kv::Value* find(const kv::Document& doc, const std::string& key) {
  const auto it = doc.find(key);
  return it == doc.end() ? nullptr : &it->second;
}

std::vector<double> real_or_list(const kv::Value& v, const std::string& path) {
  if (v.kind == kv::Value::Kind::list) return v.as_real_list(path);
  return {v.as_real(path)};
}

CorrelationVariant variant_from_string(const std::string& s, const std::string& path) {
  if (s == "exact") return CorrelationVariant::exact;
  if (s == "no_polarization") return CorrelationVariant::no_polarization;
  if (s == "polar_only_closed_region") return CorrelationVariant::polar_only_closed_region;
  throw config_error(path + ": unknown variant '" + s + "'");
}

}  // namespace

ScenarioConfig scenario_config_from_kv(const kv::Document& doc) {
  for (const auto& [key, value] : doc)
    if (!kKnownKeys.count(key)) throw config_error(key + ": unknown field");

  ScenarioConfig cfg;
  cfg.carrier.wavelength_m = require(doc, "carrier.wavelength_m").as_real("carrier.wavelength_m");
  cfg.array.n_elements = int(require(doc, "array.n_elements").as_int("array.n_elements"));
  if (const auto* v = find(doc, "array.spacing_in_wavelengths"))
    cfg.array.spacing_in_wavelengths = v->as_real("array.spacing_in_wavelengths");
  cfg.array.height_m = require(doc, "array.height_m").as_real("array.height_m");

  {
    const auto pos = require(doc, "ue.initial_position_m").as_real_list("ue.initial_position_m");
    if (pos.size() != 2) throw config_error("ue.initial_position_m: expected [x, y]");
    cfg.ue.initial_position_m = {pos[0], pos[1]};
  }
  cfg.ue.speed_mps = real_or_list(require(doc, "ue.speed_mps"), "ue.speed_mps");
  {
    const kv::Value& tr = require(doc, "ue.turn_radius_m");
    if (tr.kind == kv::Value::Kind::string) {
      if (tr.s != "linear")
        throw config_error("ue.turn_radius_m: expected a radius, a list, or 'linear'");
      cfg.ue.linear_motion = true;
      cfg.ue.turn_radius_m.clear();
    } else {
      cfg.ue.linear_motion = false;
      cfg.ue.turn_radius_m = real_or_list(tr, "ue.turn_radius_m");
    }
  }
  if (const auto* v = find(doc, "ue.heading_deg")) cfg.ue.heading_deg = v->as_real("ue.heading_deg");

  if (const auto* v = find(doc, "sweep.variable")) {
    const std::string& s = v->as_string("sweep.variable");
    if (s == "distance")
      cfg.sweep.variable = ScenarioConfig::Sweep::Variable::distance;
    else if (s == "radius")
      cfg.sweep.variable = ScenarioConfig::Sweep::Variable::radius;
    else
      throw config_error("sweep.variable: expected 'distance' or 'radius'");
    const auto range = require(doc, "sweep.range").as_real_list("sweep.range");
    if (range.size() != 2) throw config_error("sweep.range: expected [lo, hi]");
    cfg.sweep.range = {range[0], range[1]};
    if (const auto* p = find(doc, "sweep.points"))
      cfg.sweep.points = int(p->as_int("sweep.points"));
    if (const auto* p = find(doc, "sweep.spacing")) {
      const std::string& sp = p->as_string("sweep.spacing");
      if (sp == "linear")
        cfg.sweep.spacing = ScenarioConfig::Sweep::Spacing::linear;
      else if (sp == "log")
        cfg.sweep.spacing = ScenarioConfig::Sweep::Spacing::log;
      else
        throw config_error("sweep.spacing: expected 'linear' or 'log'");
    }
  } else if (find(doc, "sweep.range") || find(doc, "sweep.points") || find(doc, "sweep.spacing")) {
    throw config_error("sweep.variable: required when other sweep fields are present");
  }

  if (const auto* v = find(doc, "correlation.variants")) {
    cfg.correlation.variants.clear();
    for (const std::string& s : v->as_string_list("correlation.variants"))
      cfg.correlation.variants.push_back(variant_from_string(s, "correlation.variants"));
    if (cfg.correlation.variants.empty())
      throw config_error("correlation.variants: must not be empty");
  }
  if (const auto* v = find(doc, "correlation.n_trials"))
    cfg.correlation.n_trials = int(v->as_int("correlation.n_trials"));
  if (const auto* v = find(doc, "correlation.seed"))
    cfg.correlation.seed = std::uint64_t(v->as_int("correlation.seed"));
  if (const auto* v = find(doc, "correlation.tau_grid.tau_max_s"))
    cfg.correlation.tau_grid.tau_max_s = v->as_real("correlation.tau_grid.tau_max_s");
  if (const auto* v = find(doc, "correlation.tau_grid.points"))
    cfg.correlation.tau_grid.points = int(v->as_int("correlation.tau_grid.points"));
  if (const auto* v = find(doc, "correlation.tau_grid.spacing")) {
    const std::string& s = v->as_string("correlation.tau_grid.spacing");
    if (s == "geolinear")
      cfg.correlation.tau_grid.spacing = TauGridSpec::Spacing::geolinear;
    else if (s == "linear")
      cfg.correlation.tau_grid.spacing = TauGridSpec::Spacing::linear;
    else if (s == "log")
      cfg.correlation.tau_grid.spacing = TauGridSpec::Spacing::log;
    else
      throw config_error("correlation.tau_grid.spacing: expected geolinear, linear or log");
  }

  cfg.solver.zeta = require(doc, "solver.zeta").as_real("solver.zeta");
  if (const auto* v = find(doc, "solver.tau_max_s"))
    cfg.solver.tau_max_s = v->as_real("solver.tau_max_s");
  if (const auto* v = find(doc, "solver.tol_s")) cfg.solver.tol_s = v->as_real("solver.tol_s");

  validate(cfg);
  return cfg;
}

kv::Document to_kv(const ScenarioConfig& cfg) {
  using kv::Value;
  kv::Document doc;
  doc.emplace("carrier.wavelength_m", Value::real(cfg.carrier.wavelength_m));
  doc.emplace("array.n_elements", Value::integer(cfg.array.n_elements));
  doc.emplace("array.spacing_in_wavelengths", Value::real(cfg.array.spacing_in_wavelengths));
  doc.emplace("array.height_m", Value::real(cfg.array.height_m));
  doc.emplace("ue.initial_position_m",
              Value::list({Value::real(cfg.ue.initial_position_m[0]),
                           Value::real(cfg.ue.initial_position_m[1])}));
  {
    std::vector<Value> speeds;
    for (double v : cfg.ue.speed_mps) speeds.push_back(Value::real(v));
    doc.emplace("ue.speed_mps", speeds.size() == 1 ? speeds[0] : Value::list(std::move(speeds)));
  }
  if (cfg.ue.linear_motion) {
    doc.emplace("ue.turn_radius_m", Value::string_("linear"));
  } else {
    std::vector<Value> radii;
    for (double v : cfg.ue.turn_radius_m) radii.push_back(Value::real(v));
    doc.emplace("ue.turn_radius_m",
                radii.size() == 1 ? radii[0] : Value::list(std::move(radii)));
  }
  if (cfg.ue.heading_deg) doc.emplace("ue.heading_deg", Value::real(*cfg.ue.heading_deg));

  if (cfg.sweep.variable != ScenarioConfig::Sweep::Variable::none) {
    doc.emplace("sweep.variable",
                Value::string_(cfg.sweep.variable == ScenarioConfig::Sweep::Variable::distance
                                   ? "distance"
                                   : "radius"));
    doc.emplace("sweep.range",
                Value::list({Value::real(cfg.sweep.range[0]), Value::real(cfg.sweep.range[1])}));
    doc.emplace("sweep.points", Value::integer(cfg.sweep.points));
    doc.emplace("sweep.spacing",
                Value::string_(cfg.sweep.spacing == ScenarioConfig::Sweep::Spacing::linear
                                   ? "linear"
                                   : "log"));
  }

  {
    std::vector<Value> variants;
    for (CorrelationVariant v : cfg.correlation.variants)
      variants.push_back(Value::string_(to_string(v)));
    doc.emplace("correlation.variants", Value::list(std::move(variants)));
  }
  doc.emplace("correlation.n_trials", Value::integer(cfg.correlation.n_trials));
  doc.emplace("correlation.seed", Value::integer((long long)cfg.correlation.seed));
  doc.emplace("correlation.tau_grid.tau_max_s", Value::real(cfg.correlation.tau_grid.tau_max_s));
  doc.emplace("correlation.tau_grid.points", Value::integer(cfg.correlation.tau_grid.points));
  {
    const char* s = cfg.correlation.tau_grid.spacing == TauGridSpec::Spacing::geolinear ? "geolinear"
                    : cfg.correlation.tau_grid.spacing == TauGridSpec::Spacing::linear  ? "linear"
                                                                                        : "log";
    doc.emplace("correlation.tau_grid.spacing", Value::string_(s));
  }
  doc.emplace("solver.zeta", Value::real(cfg.solver.zeta));
  doc.emplace("solver.tau_max_s", Value::real(cfg.solver.tau_max_s));
  doc.emplace("solver.tol_s", Value::real(cfg.solver.tol_s));
  return doc;
}

ScenarioConfig parse_scenario_config(const std::string& text) {
  return scenario_config_from_kv(kv::parse(text));
}

std::string serialize_scenario_config(const ScenarioConfig& cfg) {
  return kv::serialize(to_kv(cfg));
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_config(ss.str());
}

void validate(const ScenarioConfig& cfg) {
  if (!(cfg.carrier.wavelength_m > 0)) throw config_error("carrier.wavelength_m: must be > 0");
  if (cfg.array.n_elements < 1) throw config_error("array.n_elements: must be >= 1");
  if (!(cfg.array.spacing_in_wavelengths > 0))
    throw config_error("array.spacing_in_wavelengths: must be > 0");
  if (!(cfg.array.height_m > 0)) throw config_error("array.height_m: must be > 0");
  if (!(cfg.ue.initial_position_m[0] > 0))
    throw config_error("ue.initial_position_m: x must be > 0 (UE in front of the array)");
  if (cfg.ue.speed_mps.empty()) throw config_error("ue.speed_mps: must not be empty");
  for (double v : cfg.ue.speed_mps)
    if (!(v > 0)) throw config_error("ue.speed_mps: speeds must be > 0");
  if (!cfg.ue.linear_motion) {
    if (cfg.ue.turn_radius_m.empty()) throw config_error("ue.turn_radius_m: must not be empty");
    for (double r : cfg.ue.turn_radius_m)
      if (!(r > 0)) throw config_error("ue.turn_radius_m: radii must be > 0");
  }
  if (cfg.sweep.variable != ScenarioConfig::Sweep::Variable::none) {
    if (!(cfg.sweep.range[0] > 0) || !(cfg.sweep.range[1] > cfg.sweep.range[0]))
      throw config_error("sweep.range: need 0 < lo < hi");
    if (cfg.sweep.points < 2) throw config_error("sweep.points: must be >= 2");
  }
  if (cfg.correlation.n_trials < 1) throw config_error("correlation.n_trials: must be >= 1");
  if (!(cfg.solver.zeta > 0 && cfg.solver.zeta < 1))
    throw config_error("solver.zeta: must be in (0, 1)");
  if (!(cfg.solver.tau_max_s > 0)) throw config_error("solver.tau_max_s: must be > 0");
  if (!(cfg.solver.tol_s > 0)) throw config_error("solver.tol_s: must be > 0");
  make_tau_grid(cfg.correlation.tau_grid);  // validates the grid spec
}

ArrayConfig<double> make_array(const ScenarioConfig& cfg) {
  return ArrayConfig<double>(cfg.array.n_elements,
                             cfg.array.spacing_in_wavelengths * cfg.carrier.wavelength_m,
                             cfg.array.height_m, cfg.carrier.wavelength_m);
}

std::vector<double> sweep_values(const ScenarioConfig::Sweep& sweep) {
  std::vector<double> out;
  out.reserve(std::size_t(sweep.points));
  const double lo = sweep.range[0], hi = sweep.range[1];
  for (int j = 0; j < sweep.points; ++j) {
    const double t = double(j) / double(sweep.points - 1);
    out.push_back(sweep.spacing == ScenarioConfig::Sweep::Spacing::linear
                      ? lo + (hi - lo) * t
                      : lo * std::pow(hi / lo, t));
  }
  return out;
}

}  // namespace emct
