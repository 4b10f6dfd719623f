// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <string>
#include <vector>

#include "emct/coherence.hpp"
#include "emct/correlation.hpp"
#include "emct/scenario_config.hpp"

namespace emct {

/// Numeric table behind one figure CSV. Rows are ordered by the sweep
/// variable, then speed.
struct FigureTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// UTF-8 comma-separated rendering, header row first, every float with 9
/// significant digits. Refuses to emit non-finite cells.
std::string to_csv(const FigureTable& table);
void write_csv(const FigureTable& table, const std::string& path);

/// Built-in defaults reproducing the reference experiments at desk scale
/// (2000 trials, seed 7).
ScenarioConfig default_figure_config(int figure);

/// Coherence time vs distance in the turning scenario.
/// Columns: distance_m, speed_mps, t_em_simulated_s, t_em_closed_s,
/// t_em_no_polarization_s.
FigureTable run_figure3(const ScenarioConfig& cfg, int n_threads = 0);

/// Coherence time vs distance in the linear-motion scenario at a fixed
/// worst-case heading. Columns: distance_m, speed_mps, t_em_simulated_s,
/// t_em_lower_bound_s, t_em_no_polarization_s.
FigureTable run_figure4(const ScenarioConfig& cfg, int n_threads = 0);

/// Coherence time vs turning radius at fixed distance and speed.
/// Columns: radius_m, t_em_simulated_s, t_em_polar_only_s,
/// t_em_no_polarization_s.
FigureTable run_figure5(const ScenarioConfig& cfg, int n_threads = 0);

/// Single-scenario coherence time. `method` is one of the CoherenceMethod
/// tags or "auto" (closed_turning for turning configs, closed_linear for
/// linear ones). Numeric methods honor ue.heading_deg when present and
/// average over random headings otherwise.
CoherenceResult run_coherence(const ScenarioConfig& cfg, const std::string& method = "auto",
                              int n_threads = 0);

/// Correlation curves for every variant in the config, on its delay grid.
std::vector<CorrelationCurve> run_correlate(const ScenarioConfig& cfg, int n_threads = 0);

/// tau_s column plus one r_<variant> column per curve.
std::string curves_to_csv(const std::vector<CorrelationCurve>& curves);

}  // namespace emct
