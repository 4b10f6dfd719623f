// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "emct/closed_form.hpp"
#include "emct/coherence.hpp"
#include "emct/correlation.hpp"
#include "emct/em_channel.hpp"
#include "emct/errors.hpp"
#include "emct/experiments.hpp"
#include "emct/geometry.hpp"
#include "emct/lambert_w.hpp"
#include "emct/scenario_config.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::int64_t seed = -1;   // -1: not set on the command line
  int trials = -1;          // -1: not set on the command line
  bool paper_scale = false;
  int threads = 0;
};

void add_common(CLI::App* sub, CommonOpts& o, bool with_out) {
  sub->add_option("--config", o.config_path, "scenario config file");
  sub->add_option("--seed", o.seed, "override the Monte-Carlo seed");
  sub->add_option("--trials", o.trials, "override the Monte-Carlo trial count");
  sub->add_flag("--paper-scale", o.paper_scale, "use 20000 trials (minutes-scale runs)");
  sub->add_option("--threads", o.threads, "worker threads (0 = all hardware threads)");
  if (with_out) {
    sub->add_option("--out", o.out_path, "output CSV path");
    sub->add_option("--format", o.format, "output format (csv)");
  }
}

std::int64_t env_int(const char* name) {
  const char* s = std::getenv(name);
  if (!s || !*s) return -1;
  char* end = nullptr;
  const long long v = std::strtoll(s, &end, 10);
  if (*end != '\0' || v < 0) throw emct::config_error(std::string(name) + ": not a valid integer");
  return v;
}

// precedence: command line > environment > config file > built-in default
emct::ScenarioConfig resolve_config(const CommonOpts& o, int figure) {
  emct::ScenarioConfig cfg;
  if (!o.config_path.empty())
    cfg = emct::load_scenario_config(o.config_path);
  else if (figure != 0)
    cfg = emct::default_figure_config(figure);
  else
    emct::validate(cfg);  // built-in single-scenario defaults

  if (const std::int64_t v = env_int("EMCT_TRIALS"); v > 0) cfg.correlation.n_trials = int(v);
  if (const std::int64_t v = env_int("EMCT_SEED"); v >= 0)
    cfg.correlation.seed = std::uint64_t(v);
  if (o.paper_scale) cfg.correlation.n_trials = 20000;
  if (o.trials >= 0) {
    if (o.trials < 1) throw emct::config_error("--trials: must be >= 1");
    cfg.correlation.n_trials = o.trials;
  }
  if (o.seed >= 0) cfg.correlation.seed = std::uint64_t(o.seed);
  if (o.format != "csv") throw emct::config_error("--format: only 'csv' is supported");
  return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

int run_figure_cmd(const CommonOpts& o, int figure) {
  const emct::ScenarioConfig cfg = resolve_config(o, figure);
  emct::FigureTable table;
  switch (figure) {
    case 3: table = emct::run_figure3(cfg, o.threads); break;
    case 4: table = emct::run_figure4(cfg, o.threads); break;
    case 5: table = emct::run_figure5(cfg, o.threads); break;
    default: throw emct::config_error("figure: expected 3, 4 or 5");
  }
  const std::string path = o.out_path.empty() ? "fig" + std::to_string(figure) + ".csv"
                                              : o.out_path;
  emct::write_csv(table, path);
  std::cout << "wrote " << path << " (" << table.rows.size() << " rows)\n";
  return 0;
}

int run_coherence_cmd(const CommonOpts& o, const std::string& method) {
  const emct::ScenarioConfig cfg = resolve_config(o, 0);
  const emct::CoherenceResult res = emct::run_coherence(cfg, method, o.threads);
  std::printf("t_em_s=%.9g\n", res.t_em);
  std::printf("method=%s\n", emct::to_string(res.method));
  std::printf("threshold=%.9g\n", res.threshold);
  if (res.bracket_hi > 0) {
    std::printf("bracket_lo_s=%.9g\n", res.bracket_lo);
    std::printf("bracket_hi_s=%.9g\n", res.bracket_hi);
  }
  return 0;
}

int run_correlate_cmd(const CommonOpts& o) {
  const emct::ScenarioConfig cfg = resolve_config(o, 0);
  emit(emct::curves_to_csv(emct::run_correlate(cfg, o.threads)), o.out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// `validate`: a built-in self-check of the library's core invariants.

int checks_failed = 0;

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
  if (!ok) ++checks_failed;
}

void run_validate() {
  using namespace emct;
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  {  // Lambert W residual sweep and branch point
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
      const double x = -std::exp(std::log(1e-8) +
                                 (std::log(1.0 / std::exp(1.0)) - std::log(1e-8)) * i / 199.0);
      const double w = lambert_w_minus1(x);
      worst = std::max(worst, std::abs(w * std::exp(w) - x));
    }
    check(worst <= 1e-12, "lambert_w_minus1 residual <= 1e-12 (worst " +
                              std::to_string(worst) + ")");
    check(lambert_w_minus1(-std::exp(-1.0)) == -1.0, "lambert_w_minus1 branch point -> -1");
  }

  {  // element distances vs direct norms
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const int n = 1 + int(unit(rng) * 127);
      const ArrayConfig<double> array(n, 0.01 + unit(rng) * 0.2, 0.5 + unit(rng) * 9.0,
                                      0.05 + unit(rng) * 0.3);
      const Eigen::Vector3d pos(1.0 + unit(rng) * 300.0, (unit(rng) - 0.5) * 300.0, 0.0);
      const TrajectoryState<double> s(pos, 1.0, 0.0, 0.0);
      const auto g = snapshot(s, array);
      for (int m = 0; m < n; m += std::max(1, n / 7)) {
        const double direct = (array.element_position(m) - pos).norm();
        worst = std::max(worst, std::abs(element_distance(g, array, m) - direct) / direct);
      }
    }
    check(worst <= 1e-12, "element_distance matches direct norms to 1e-12 relative");
  }

  {  // advance composition
    double worst_pos = 0, worst_heading = 0;
    for (int i = 0; i < 100; ++i) {
      const Eigen::Vector3d pos(50.0 + unit(rng) * 300.0, (unit(rng) - 0.5) * 100.0, 0.0);
      const double v = 0.5 + unit(rng) * 8.0;
      const double om = (unit(rng) - 0.5) * 0.8;
      const TrajectoryState<double> s(pos, v, unit(rng) * 6.28, om);
      const double t1 = unit(rng), t2 = unit(rng);
      const auto a = advance(advance(s, t1), t2);
      const auto b = advance(s, t1 + t2);
      worst_pos = std::max(worst_pos, (a.position - b.position).norm());
      worst_heading = std::max(worst_heading, std::abs(a.heading - b.heading));
    }
    check(worst_pos <= 1e-9 && worst_heading <= 1e-12, "advance composes over split delays");
  }

  {  // correlation bounds and R(0) = 1
    bool in_bounds = true, at_zero = true;
    for (int i = 0; i < 500; ++i) {
      const Eigen::Vector3d pos(20.0 + unit(rng) * 280.0, (unit(rng) - 0.5) * 100.0, 0.0);
      const double v = 0.5 + unit(rng) * 8.0;
      const double om = unit(rng) < 0.3 ? 0.0 : (unit(rng) - 0.5) * (v / 5.0);
      const ArrayConfig<double> array(64, 0.0625, 3.0, 0.125);
      const TrajectoryState<double> s(pos, v, unit(rng) * 6.28, om);
      const double tau = unit(rng) * 0.4 * pos.x() / v;  // stays in front of the array
      const double r = correlation_single(s, array, tau);
      in_bounds = in_bounds && r >= 0.0 && r <= 1.0;
      at_zero = at_zero && correlation_single(s, array, 0.0) == 1.0;
    }
    check(in_bounds, "correlation_single in [0, 1] on randomized scenarios");
    check(at_zero, "correlation_single(tau = 0) == 1 exactly");
  }

  {  // serial vs parallel determinism
    const ArrayConfig<double> array(64, 0.0625, 3.0, 0.125);
    const TrialPlan plan(1500, 99);
    const std::vector<double> taus{0.0, 0.05, 0.1, 0.2, 0.4};
    const auto a = correlation_expected({200, 0, 0}, 2.0, 0.2, array, taus, plan,
                                        CorrelationVariant::exact, SteeringModel::fresnel, 1);
    const auto b = correlation_expected({200, 0, 0}, 2.0, 0.2, array, taus, plan,
                                        CorrelationVariant::exact, SteeringModel::fresnel, 4);
    bool same = true;
    for (std::size_t j = 0; j < taus.size(); ++j) same = same && a.values[j] == b.values[j];
    check(same, "Monte-Carlo curve bit-identical for 1 and 4 workers");
  }

  {  // linear closed forms invert and order
    const LinearScenario<double> s(100.0, 10.0, 0.9, 64, 0.3, 1.4, 1.1);
    const double t = coherence_time_linear(s);
    check(std::abs(correlation_linear_gaussian(t, s) - 0.9) <= 1e-12,
          "linear closed form inverts the Gaussian correlation");
    check(coherence_time_linear_lower_bound(s) <= t, "linear lower bound <= closed form");
  }

  {  // turning regions partition one period
    const auto alpha = turning_regions(0.07, 0.3);
    const double total = alpha[4] - alpha[0];
    const TurningScenario<double> s(10.0, 2.0, 0.9, 0.0, 200.0, 3.0);
    check(std::abs(total - 2 * std::numbers::pi_v<double>) <= 1e-12 &&
              correlation_turning_region_integral(0.0, s) == 1.0,
          "turning regions span 2 pi; region integral at 0 is 1");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"electromagnetic coherence time of mobile wireless channels"};
  app.require_subcommand(1);

  CommonOpts correlate_opts, coherence_opts, figure_opts;
  std::string method = "auto";
  int figure = 0;

  CLI::App* correlate = app.add_subcommand("correlate", "emit a correlation curve R(tau) as CSV");
  add_common(correlate, correlate_opts, true);

  CLI::App* coherence =
      app.add_subcommand("coherence", "coherence time of one scenario (key=value output)");
  add_common(coherence, coherence_opts, false);
  coherence->add_option("--method", method,
                        "auto | closed_turning | closed_linear | lower_bound_linear | "
                        "quarter_wavelength | numeric_exact | numeric_no_polarization | "
                        "numeric_polar_only");

  CLI::App* fig = app.add_subcommand("figure", "reproduce a reference experiment as CSV");
  fig->add_option("number", figure, "which figure (3, 4 or 5)")->required();
  add_common(fig, figure_opts, true);

  CLI::App* validate_cmd = app.add_subcommand("validate", "run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (correlate->parsed()) return run_correlate_cmd(correlate_opts);
    if (coherence->parsed()) return run_coherence_cmd(coherence_opts, method);
    if (fig->parsed()) return run_figure_cmd(figure_opts, figure);
    if (validate_cmd->parsed()) {
      run_validate();
      std::cout << (checks_failed ? "validation FAILED\n" : "all checks passed\n");
      return checks_failed ? 1 : 0;
    }
  } catch (const emct::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const emct::no_crossing& e) {
    std::cerr << "no crossing: " << e.what() << "\n";
    return 4;
  } catch (const emct::unbounded_coherence& e) {
    std::cerr << "unbounded: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 3;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
