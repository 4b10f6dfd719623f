// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line interface: exit codes, output
// contracts, config errors. Drives the real binary through std::system.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string out_path = std::string(EMCT_TEST_TMPDIR) + "/cli_stdout.txt";
  const std::string err_path = std::string(EMCT_TEST_TMPDIR) + "/cli_stderr.txt";
  const std::string cmd = (env.empty() ? "" : env + " ") + std::string(EMCT_CLI_PATH) + " " +
                          args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WEXITSTATUS(status);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::string write_config(const std::string& name, const std::string& body) {
  const std::string path = std::string(EMCT_TEST_TMPDIR) + "/" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

const char* kTurning = R"(
carrier.wavelength_m = 0.125
array.n_elements = 64
array.height_m = 3.0
ue.initial_position_m = [200.0, 0.0]
ue.speed_mps = 2
ue.turn_radius_m = 10
solver.zeta = 0.9
)";

}  // namespace

TEST_CASE("coherence: closed turning output contract") {
  const std::string cfg = write_config("turning.cfg", kTurning);
  const auto r = run("coherence --config " + cfg);
  CHECK(r.code == 0);
  CHECK(r.out.find("t_em_s=0.201028") != std::string::npos);
  CHECK(r.out.find("method=closed_turning") != std::string::npos);
  CHECK(r.out.find("threshold=0.9") != std::string::npos);
}

TEST_CASE("figure 3: header contract and row count") {
  const std::string out = std::string(EMCT_TEST_TMPDIR) + "/fig3_cli.csv";
  const auto r = run("figure 3 --trials 40 --seed 7 --out " + out);
  CHECK(r.code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("distance_m,speed_mps,t_em_simulated_s,t_em_closed_s,t_em_no_polarization_s\n",
                  0) == 0);
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 1 + 30 * 3);
}

TEST_CASE("missing config field exits 2 and names the path") {
  const std::string cfg = write_config("missing.cfg", R"(
carrier.wavelength_m = 0.125
array.n_elements = 64
array.height_m = 3.0
ue.initial_position_m = [200.0, 0.0]
ue.speed_mps = 2
solver.zeta = 0.9
)");
  const auto r = run("coherence --config " + cfg);
  CHECK(r.code == 2);
  CHECK(r.err.find("ue.turn_radius_m") != std::string::npos);
}

TEST_CASE("numeric domain error exits 3") {
  std::string body(kTurning);
  body.replace(body.find("solver.zeta = 0.9"), 17, "solver.zeta = 0.52");
  const std::string cfg = write_config("low_zeta.cfg", body);
  const auto r = run("coherence --config " + cfg);
  CHECK(r.code == 3);
}

TEST_CASE("no crossing within the horizon exits 4") {
  // radial motion: the steering correlation barely decays, so the
  // no-polarization numeric method finds no crossing within one second
  const std::string cfg = write_config("radial.cfg", R"(
carrier.wavelength_m = 0.125
array.n_elements = 64
array.height_m = 3.0
ue.initial_position_m = [200.0, 0.0]
ue.speed_mps = 2
ue.turn_radius_m = linear
ue.heading_deg = 90
solver.zeta = 0.9
solver.tau_max_s = 1.0
)");
  const auto r = run("coherence --config " + cfg + " --method numeric_no_polarization");
  CHECK(r.code == 4);
}

TEST_CASE("correlate emits one column per variant") {
  const std::string cfg = write_config("correlate.cfg", std::string(kTurning) +
                                                            "correlation.variants = [exact, "
                                                            "no_polarization]\n"
                                                            "correlation.n_trials = 30\n"
                                                            "correlation.tau_grid.points = 10\n"
                                                            "correlation.tau_grid.tau_max_s = "
                                                            "0.5\n");
  const auto r = run("correlate --config " + cfg);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("tau_s,r_exact,r_no_polarization\n", 0) == 0);
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 11);
}

TEST_CASE("environment overrides are honored and validated") {
  const std::string cfg = write_config("turning2.cfg", kTurning);
  const auto ok = run("coherence --config " + cfg + " --method numeric_exact", "EMCT_TRIALS=17");
  CHECK(ok.code == 0);
  const auto bad = run("coherence --config " + cfg, "EMCT_TRIALS=abc");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("EMCT_TRIALS") != std::string::npos);
}

TEST_CASE("validate runs the invariant suite") {
  const auto r = run("validate");
  CHECK(r.code == 0);
  CHECK(r.out.find("all checks passed") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("bogus_subcommand").code == 2);
  CHECK(run("figure").code == 2);
  CHECK(run("--help").code == 0);
  CHECK(run("figure 7 --trials 5").code == 2);
}
