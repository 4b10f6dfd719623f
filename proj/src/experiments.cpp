// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#include "emct/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "emct/closed_form.hpp"
#include "emct/geometry.hpp"

namespace emct {

namespace {

std::string format_cell(double v) {
  if (!std::isfinite(v)) throw std::logic_error("csv: refusing to emit a non-finite cell");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

Eigen::Vector3d position_at_distance(const ScenarioConfig& cfg, double distance) {
  Eigen::Vector2d dir(cfg.ue.initial_position_m[0], cfg.ue.initial_position_m[1]);
  dir.normalize();
  return {dir.x() * distance, dir.y() * distance, 0.0};
}

Eigen::Vector3d fixed_position(const ScenarioConfig& cfg) {
  return {cfg.ue.initial_position_m[0], cfg.ue.initial_position_m[1], 0.0};
}

double heading_rad(const ScenarioConfig& cfg) {
  return cfg.ue.heading_deg.value_or(0.0) * std::numbers::pi_v<double> / 180.0;
}

double single_speed(const ScenarioConfig& cfg, const char* who) {
  if (cfg.ue.speed_mps.size() != 1)
    throw config_error(std::string("ue.speed_mps: ") + who + " needs a single speed");
  return cfg.ue.speed_mps[0];
}

double single_radius(const ScenarioConfig& cfg, const char* who) {
  if (cfg.ue.linear_motion || cfg.ue.turn_radius_m.size() != 1)
    throw config_error(std::string("ue.turn_radius_m: ") + who + " needs a single turn radius");
  return cfg.ue.turn_radius_m[0];
}

TurningScenario<double> turning_scenario(const ScenarioConfig& cfg, const Eigen::Vector3d& pos,
                                         double radius, double speed) {
  const double r_h = std::hypot(pos.x(), pos.y());
  return TurningScenario<double>(radius, speed, cfg.solver.zeta, std::atan2(pos.y(), pos.x()),
                                 r_h, cfg.array.height_m);
}

LinearScenario<double> linear_scenario(const ScenarioConfig& cfg,
                                       const TrajectoryState<double>& state,
                                       const ArrayConfig<double>& array) {
  const GeometrySnapshot<double> g = snapshot(state, array);
  const double psi = angle_deltas(state, array, 0.0).psi_angle;
  return LinearScenario<double>(g.horizontal_range, state.speed, cfg.solver.zeta,
                                array.n_elements, g.azimuth, g.elevation, psi);
}

void warn_large_radius(const char* figure, double radius, double r_h) {
  std::cerr << "warning: " << figure << ": turn radius " << radius
            << " m is not small against the horizontal range " << r_h
            << " m; the small-radius analysis is outside its regime there\n";
}

CoherenceResult solve_mc(const ScenarioConfig& cfg, const Eigen::Vector3d& pos, double speed,
                         double turn_rate, CorrelationVariant variant, CoherenceMethod tag,
                         int n_threads) {
  const ArrayConfig<double> array = make_array(cfg);
  const TrialPlan plan(cfg.correlation.n_trials, cfg.correlation.seed);
  const auto source =
      mc_correlation_source(pos, speed, turn_rate, array, plan, variant,
                            SteeringModel::fresnel, n_threads);
  return solve_numeric(source, cfg.solver.zeta, cfg.solver.tau_max_s, cfg.solver.tol_s, tag);
}

}  // namespace

std::string to_csv(const FigureTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const FigureTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << to_csv(table);
}

ScenarioConfig default_figure_config(int figure) {
  ScenarioConfig cfg;  // carries the shared defaults
  switch (figure) {
    case 3:
      cfg.ue.speed_mps = {2.0, 4.0, 6.0};
      cfg.ue.turn_radius_m = {10.0};
      cfg.sweep.variable = ScenarioConfig::Sweep::Variable::distance;
      cfg.sweep.range = {10.0, 300.0};
      cfg.sweep.points = 30;
      cfg.sweep.spacing = ScenarioConfig::Sweep::Spacing::linear;
      break;
    case 4:
      cfg.ue.speed_mps = {2.0, 4.0, 6.0};
      cfg.ue.linear_motion = true;
      cfg.ue.heading_deg = 0.0;  // tangential at broadside: the worst case
      cfg.sweep.variable = ScenarioConfig::Sweep::Variable::distance;
      cfg.sweep.range = {10.0, 300.0};
      cfg.sweep.points = 30;
      cfg.sweep.spacing = ScenarioConfig::Sweep::Spacing::linear;
      break;
    case 5:
      cfg.ue.speed_mps = {4.0};
      cfg.ue.turn_radius_m = {10.0};  // superseded by the radius sweep
      cfg.sweep.variable = ScenarioConfig::Sweep::Variable::radius;
      // below ~1.2 m radius at 200 m range the steering-only correlation
      // never crosses 0.9 (the loop is too tight to misalign the beam), so
      // the sweep starts where all three columns are finite
      cfg.sweep.range = {2.0, 2000.0};
      cfg.sweep.points = 12;
      cfg.sweep.spacing = ScenarioConfig::Sweep::Spacing::log;
      cfg.solver.tau_max_s = 60.0;
      break;
    default:
      throw config_error("figure: expected 3, 4 or 5");
  }
  validate(cfg);
  return cfg;
}

FigureTable run_figure3(const ScenarioConfig& cfg, int n_threads) {
  if (cfg.ue.linear_motion || cfg.ue.turn_radius_m.size() != 1)
    throw config_error("ue.turn_radius_m: figure 3 needs a single turn radius");
  if (cfg.sweep.variable != ScenarioConfig::Sweep::Variable::distance)
    throw config_error("sweep.variable: figure 3 sweeps distance");
  const double radius = cfg.ue.turn_radius_m[0];

  std::vector<double> speeds = cfg.ue.speed_mps;
  std::sort(speeds.begin(), speeds.end());
  const std::vector<double> distances = sweep_values(cfg.sweep);
  if (radius * 10.0 > distances.front()) warn_large_radius("figure 3", radius, distances.front());

  FigureTable table;
  table.header = {"distance_m", "speed_mps", "t_em_simulated_s", "t_em_closed_s",
                  "t_em_no_polarization_s"};
  for (double distance : distances) {
    const Eigen::Vector3d pos = position_at_distance(cfg, distance);
    for (double v : speeds) {
      const double omega = v / radius;
      const double t_sim = solve_mc(cfg, pos, v, omega, CorrelationVariant::exact,
                                    CoherenceMethod::numeric_exact, n_threads)
                               .t_em;
      const double t_closed = coherence_time_turning(turning_scenario(cfg, pos, radius, v));
      const double t_np = solve_mc(cfg, pos, v, omega, CorrelationVariant::no_polarization,
                                   CoherenceMethod::numeric_no_polarization, n_threads)
                              .t_em;
      table.rows.push_back({distance, v, t_sim, t_closed, t_np});
    }
  }
  return table;
}

FigureTable run_figure4(const ScenarioConfig& cfg, int n_threads) {
  (void)n_threads;  // single-realization curves, nothing to parallelize
  if (!cfg.ue.linear_motion)
    throw config_error("ue.turn_radius_m: figure 4 is the linear-motion scenario");
  if (cfg.sweep.variable != ScenarioConfig::Sweep::Variable::distance)
    throw config_error("sweep.variable: figure 4 sweeps distance");

  const ArrayConfig<double> array = make_array(cfg);
  const double heading = heading_rad(cfg);
  std::vector<double> speeds = cfg.ue.speed_mps;
  std::sort(speeds.begin(), speeds.end());

  FigureTable table;
  table.header = {"distance_m", "speed_mps", "t_em_simulated_s", "t_em_lower_bound_s",
                  "t_em_no_polarization_s"};
  for (double distance : sweep_values(cfg.sweep)) {
    const Eigen::Vector3d pos = position_at_distance(cfg, distance);
    for (double v : speeds) {
      const TrajectoryState<double> state(pos, v, heading, 0.0);
      const auto exact_curve = [&](double tau) { return correlation_single(state, array, tau); };
      const auto beam_curve = [&](double tau) { return steering_correlation(state, array, tau); };
      const double t_sim = solve_numeric(exact_curve, cfg.solver.zeta, cfg.solver.tau_max_s,
                                         cfg.solver.tol_s, CoherenceMethod::numeric_exact)
                               .t_em;
      const double t_lb = coherence_time_linear_lower_bound(linear_scenario(cfg, state, array));
      const double t_np =
          solve_numeric(beam_curve, cfg.solver.zeta, cfg.solver.tau_max_s, cfg.solver.tol_s,
                        CoherenceMethod::numeric_no_polarization)
              .t_em;
      table.rows.push_back({distance, v, t_sim, t_lb, t_np});
    }
  }
  return table;
}

FigureTable run_figure5(const ScenarioConfig& cfg, int n_threads) {
  if (cfg.sweep.variable != ScenarioConfig::Sweep::Variable::radius)
    throw config_error("sweep.variable: figure 5 sweeps radius");
  if (cfg.ue.linear_motion)
    throw config_error("ue.turn_radius_m: figure 5 is a turning scenario");
  const double v = single_speed(cfg, "figure 5");
  const Eigen::Vector3d pos = fixed_position(cfg);
  const double r_h = std::hypot(pos.x(), pos.y());

  const std::vector<double> radii = sweep_values(cfg.sweep);
  if (radii.back() * 10.0 > r_h) warn_large_radius("figure 5", radii.back(), r_h);

  FigureTable table;
  table.header = {"radius_m", "t_em_simulated_s", "t_em_polar_only_s",
                  "t_em_no_polarization_s"};
  for (double radius : radii) {
    const double omega = v / radius;
    const double t_sim = solve_mc(cfg, pos, v, omega, CorrelationVariant::exact,
                                  CoherenceMethod::numeric_exact, n_threads)
                             .t_em;
    const TurningScenario<double> scen = turning_scenario(cfg, pos, radius, v);
    const auto polar_curve = [&](double tau) {
      return correlation_turning_region_integral(omega * tau, scen);
    };
    const double t_polar = solve_numeric(polar_curve, cfg.solver.zeta, cfg.solver.tau_max_s,
                                         cfg.solver.tol_s, CoherenceMethod::numeric_polar_only)
                               .t_em;
    const double t_np = solve_mc(cfg, pos, v, omega, CorrelationVariant::no_polarization,
                                 CoherenceMethod::numeric_no_polarization, n_threads)
                            .t_em;
    table.rows.push_back({radius, t_sim, t_polar, t_np});
  }
  return table;
}

CoherenceResult run_coherence(const ScenarioConfig& cfg, const std::string& method,
                              int n_threads) {
  const ArrayConfig<double> array = make_array(cfg);
  const double v = single_speed(cfg, "coherence");
  const Eigen::Vector3d pos = fixed_position(cfg);

  std::string m = method;
  if (m == "auto") m = cfg.ue.linear_motion ? "closed_linear" : "closed_turning";

  if (m == "closed_turning") {
    const double radius = single_radius(cfg, "closed_turning");
    const TurningScenario<double> scen = turning_scenario(cfg, pos, radius, v);
    if (!scen.small_radius_regime())
      warn_large_radius("coherence", radius, scen.horizontal_range);
    return {coherence_time_turning(scen), CoherenceMethod::closed_turning, cfg.solver.zeta, 0, 0};
  }
  if (m == "closed_linear" || m == "lower_bound_linear") {
    const TrajectoryState<double> state(pos, v, heading_rad(cfg), 0.0);
    const LinearScenario<double> scen = linear_scenario(cfg, state, array);
    if (m == "closed_linear")
      return {coherence_time_linear(scen), CoherenceMethod::closed_linear, cfg.solver.zeta, 0, 0};
    return {coherence_time_linear_lower_bound(scen), CoherenceMethod::lower_bound_linear,
            cfg.solver.zeta, 0, 0};
  }
  if (m == "quarter_wavelength")
    return {quarter_wavelength_baseline(v, cfg.carrier.wavelength_m),
            CoherenceMethod::quarter_wavelength, cfg.solver.zeta, 0, 0};
  if (m == "numeric_polar_only") {
    const double radius = single_radius(cfg, "numeric_polar_only");
    const TurningScenario<double> scen = turning_scenario(cfg, pos, radius, v);
    const double omega = v / radius;
    const auto source = [&](double tau) {
      return correlation_turning_region_integral(omega * tau, scen);
    };
    return solve_numeric(source, cfg.solver.zeta, cfg.solver.tau_max_s, cfg.solver.tol_s,
                         CoherenceMethod::numeric_polar_only);
  }
  if (m == "numeric_exact" || m == "numeric_no_polarization") {
    const CorrelationVariant variant = m == "numeric_exact"
                                           ? CorrelationVariant::exact
                                           : CorrelationVariant::no_polarization;
    const CoherenceMethod tag = m == "numeric_exact" ? CoherenceMethod::numeric_exact
                                                     : CoherenceMethod::numeric_no_polarization;
    const double omega = cfg.ue.linear_motion ? 0.0 : v / single_radius(cfg, m.c_str());
    if (cfg.ue.heading_deg) {
      const TrajectoryState<double> state(pos, v, heading_rad(cfg), omega);
      const auto source = [&](double tau) {
        return variant == CorrelationVariant::exact
                   ? correlation_single(state, array, tau)
                   : steering_correlation(state, array, tau);
      };
      return solve_numeric(source, cfg.solver.zeta, cfg.solver.tau_max_s, cfg.solver.tol_s, tag);
    }
    return solve_mc(cfg, pos, v, omega, variant, tag, n_threads);
  }
  throw config_error("method: unknown coherence method '" + method + "'");
}

std::vector<CorrelationCurve> run_correlate(const ScenarioConfig& cfg, int n_threads) {
  const ArrayConfig<double> array = make_array(cfg);
  const double v = single_speed(cfg, "correlate");
  const Eigen::Vector3d pos = fixed_position(cfg);
  const double omega = cfg.ue.linear_motion ? 0.0 : v / single_radius(cfg, "correlate");
  const std::vector<double> taus = make_tau_grid(cfg.correlation.tau_grid);
  const TrialPlan plan(cfg.correlation.n_trials, cfg.correlation.seed);

  std::vector<CorrelationCurve> curves;
  for (CorrelationVariant variant : cfg.correlation.variants) {
    if (variant == CorrelationVariant::polar_only_closed_region) {
      if (cfg.ue.linear_motion)
        throw config_error("correlation.variants: polar_only_closed_region needs a turning "
                           "scenario");
      const TurningScenario<double> scen =
          turning_scenario(cfg, pos, single_radius(cfg, "correlate"), v);
      std::vector<double> values;
      values.reserve(taus.size());
      for (double tau : taus)
        values.push_back(correlation_turning_region_integral(omega * tau, scen));
      curves.emplace_back(taus, std::move(values), CurveMeta{variant, 0, cfg.correlation.seed});
    } else if (cfg.ue.heading_deg) {
      const TrajectoryState<double> state(pos, v, heading_rad(cfg), omega);
      std::vector<double> values;
      values.reserve(taus.size());
      for (double tau : taus)
        values.push_back(variant == CorrelationVariant::exact
                             ? correlation_single(state, array, tau)
                             : steering_correlation(state, array, tau));
      curves.emplace_back(taus, std::move(values), CurveMeta{variant, 1, cfg.correlation.seed});
    } else {
      curves.push_back(correlation_expected(pos, v, omega, array, taus, plan, variant,
                                            SteeringModel::fresnel, n_threads));
    }
  }
  return curves;
}

std::string curves_to_csv(const std::vector<CorrelationCurve>& curves) {
  if (curves.empty()) throw std::invalid_argument("curves_to_csv: no curves");
  std::string out = "tau_s";
  for (const auto& c : curves) {
    out += ",r_";
    out += to_string(c.meta.variant);
  }
  out += '\n';
  for (std::size_t j = 0; j < curves.front().taus.size(); ++j) {
    out += format_cell(curves.front().taus[j]);
    for (const auto& c : curves) {
      out += ',';
      out += format_cell(c.values[j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace emct
