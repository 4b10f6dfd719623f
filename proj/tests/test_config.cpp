// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "doctest.h"
#include "emct/errors.hpp"
#include "emct/experiments.hpp"
#include "emct/scenario_config.hpp"

namespace {

const char* kMinimal = R"(
# turning scenario
carrier.wavelength_m = 0.125
array.n_elements = 64
array.height_m = 3.0
ue.initial_position_m = [200.0, 0.0]
ue.speed_mps = 2
ue.turn_radius_m = 10
solver.zeta = 0.9
)";

}  // namespace

TEST_CASE("kv parsing: scalars, lists, comments, errors") {
  const auto doc = emct::kv::parse("a.b = 3\nc = 2.5 # trailing\nd = true\ne = [1, 2.5, x]\nf = hi\n");
  CHECK(doc.at("a.b").as_int("a.b") == 3);
  CHECK(doc.at("c").as_real("c") == 2.5);
  CHECK(doc.at("d").as_bool("d"));
  CHECK(doc.at("e").items.size() == 3);
  CHECK(doc.at("f").as_string("f") == "hi");

  CHECK_THROWS_AS(emct::kv::parse("nokey\n"), emct::config_error);
  CHECK_THROWS_AS(emct::kv::parse("a = [1, 2\n"), emct::config_error);
  CHECK_THROWS_AS(emct::kv::parse("a = 1\na = 2\n"), emct::config_error);
  CHECK_THROWS_AS(emct::kv::parse("a b = 1\n"), emct::config_error);
  CHECK_THROWS_AS(emct::kv::parse("a =\n"), emct::config_error);

  // round trip at the document level
  const auto again = emct::kv::parse(emct::kv::serialize(doc));
  CHECK(again.at("c").as_real("c") == 2.5);
  CHECK(again.size() == doc.size());
}

TEST_CASE("minimal scenario config parses with defaults applied") {
  const auto cfg = emct::parse_scenario_config(kMinimal);
  CHECK(cfg.carrier.wavelength_m == 0.125);
  CHECK(cfg.array.n_elements == 64);
  CHECK(cfg.array.spacing_in_wavelengths == 0.5);
  CHECK(cfg.ue.speed_mps == std::vector<double>{2.0});
  CHECK_FALSE(cfg.ue.linear_motion);
  CHECK(cfg.ue.turn_radius_m == std::vector<double>{10.0});
  CHECK_FALSE(cfg.ue.heading_deg.has_value());
  CHECK(cfg.correlation.n_trials == 2000);
  CHECK(cfg.correlation.seed == 7);
  CHECK(cfg.solver.zeta == 0.9);
  CHECK(cfg.sweep.variable == emct::ScenarioConfig::Sweep::Variable::none);
}

TEST_CASE("missing required fields name their path") {
  std::string text(kMinimal);
  const auto pos = text.find("solver.zeta = 0.9");
  text.erase(pos, 17);
  try {
    emct::parse_scenario_config(text);
    FAIL("expected config_error");
  } catch (const emct::config_error& e) {
    CHECK(std::string(e.what()).find("solver.zeta") != std::string::npos);
  }
}

TEST_CASE("unknown fields and bad values are rejected with paths") {
  CHECK_THROWS_WITH_AS(emct::parse_scenario_config(std::string(kMinimal) + "array.bogus = 1\n"),
                       doctest::Contains("array.bogus"), emct::config_error);
  CHECK_THROWS_WITH_AS(
      emct::parse_scenario_config(std::string(kMinimal) + "ue.heading_deg = north\n"),
      doctest::Contains("ue.heading_deg"), emct::config_error);

  std::string bad(kMinimal);
  bad.replace(bad.find("solver.zeta = 0.9"), 17, "solver.zeta = 1.9");
  CHECK_THROWS_WITH_AS(emct::parse_scenario_config(bad), doctest::Contains("solver.zeta"),
                       emct::config_error);

  std::string negx(kMinimal);
  negx.replace(negx.find("[200.0, 0.0]"), 12, "[-5.0, 0.0]");
  CHECK_THROWS_WITH_AS(emct::parse_scenario_config(negx),
                       doctest::Contains("ue.initial_position_m"), emct::config_error);
}

TEST_CASE("linear motion, lists and sweeps parse") {
  const std::string text = R"(
carrier.wavelength_m = 0.125
array.n_elements = 64
array.height_m = 3.0
ue.initial_position_m = [200.0, 0.0]
ue.speed_mps = [2, 4, 6]
ue.turn_radius_m = linear
ue.heading_deg = 0
sweep.variable = distance
sweep.range = [10, 300]
sweep.points = 30
sweep.spacing = linear
correlation.variants = [exact, no_polarization]
correlation.n_trials = 500
correlation.seed = 11
solver.zeta = 0.9
)";
  const auto cfg = emct::parse_scenario_config(text);
  CHECK(cfg.ue.linear_motion);
  CHECK(cfg.ue.speed_mps.size() == 3);
  CHECK(cfg.ue.heading_deg == 0.0);
  CHECK(cfg.sweep.variable == emct::ScenarioConfig::Sweep::Variable::distance);
  CHECK(cfg.correlation.variants.size() == 2);
  const auto values = emct::sweep_values(cfg.sweep);
  CHECK(values.size() == 30);
  CHECK(values.front() == 10.0);
  CHECK(values.back() == 300.0);
  CHECK(values[1] == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("typed config round-trips through text") {
  auto cfg = emct::default_figure_config(5);
  const std::string text = emct::serialize_scenario_config(cfg);
  const auto back = emct::parse_scenario_config(text);
  CHECK(back.carrier.wavelength_m == cfg.carrier.wavelength_m);
  CHECK(back.array.n_elements == cfg.array.n_elements);
  CHECK(back.ue.initial_position_m == cfg.ue.initial_position_m);
  CHECK(back.ue.speed_mps == cfg.ue.speed_mps);
  CHECK(back.ue.linear_motion == cfg.ue.linear_motion);
  CHECK(back.ue.turn_radius_m == cfg.ue.turn_radius_m);
  CHECK(back.sweep.variable == cfg.sweep.variable);
  CHECK(back.sweep.range == cfg.sweep.range);
  CHECK(back.sweep.points == cfg.sweep.points);
  CHECK(back.sweep.spacing == cfg.sweep.spacing);
  CHECK(back.correlation.n_trials == cfg.correlation.n_trials);
  CHECK(back.correlation.seed == cfg.correlation.seed);
  CHECK(back.solver.zeta == cfg.solver.zeta);
  CHECK(back.solver.tau_max_s == cfg.solver.tau_max_s);
  // and the text itself is stable
  CHECK(emct::serialize_scenario_config(back) == text);
}

TEST_CASE("tau grids are strictly increasing and anchored at zero") {
  for (auto spacing : {emct::TauGridSpec::Spacing::geolinear, emct::TauGridSpec::Spacing::linear,
                       emct::TauGridSpec::Spacing::log}) {
    emct::TauGridSpec spec;
    spec.tau_max_s = 3.0;
    spec.points = 41;
    spec.spacing = spacing;
    const auto taus = emct::make_tau_grid(spec);
    CHECK(taus.size() == 41);
    CHECK(taus.front() == 0.0);
    CHECK(taus.back() == doctest::Approx(3.0).epsilon(1e-12));
    for (std::size_t i = 1; i < taus.size(); ++i) CHECK(taus[i] > taus[i - 1]);
  }
  emct::TauGridSpec bad;
  bad.points = 1;
  CHECK_THROWS_AS(emct::make_tau_grid(bad), emct::config_error);
}
