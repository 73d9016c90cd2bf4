// Copyright 2026 The qcollide developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <doctest.h>

#include "qcollide/experiment.hpp"

using namespace qcollide;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  TempDir() {
    path = fs::temp_directory_path() /
           fs::path("qcollide-test-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path path;
  static inline int counter = 0;
};

fs::path write_text(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args, const std::string& env = {}) {
  const std::string cmd =
      (env.empty() ? std::string() : env + " ") + QCOLLIDE_CLI_BIN + " " + args +
      " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("defaults and the missing-experiment diagnostic") {
  TempDir tmp;
  const fs::path cfg = write_text(tmp.path, "empty.cfg", "");

  // Without an implied experiment the field is required by name.
  try {
    (void)validate_config(cfg.string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(e.diagnostics.size() == 1);
    CHECK(e.diagnostics[0].find("experiment") != std::string::npos);
  }

  // With the subcommand implying the experiment, every default applies.
  const ExperimentConfig c = validate_config(cfg.string(), ExperimentKind::ThermoTrace);
  CHECK(c.params.temperature == 1.0);
  CHECK(c.params.omega_s == 1.0);
  CHECK(c.params.gamma == doctest::Approx(pi / 14.0));
  CHECK(c.params.delta == doctest::Approx(pi / 6.0));
  CHECK(c.n_steps == 200);
  CHECK(c.grid.theta_points == 31);
  CHECK(c.grid.phi_points == 37);
  CHECK(c.csv_path() == "thermo-trace.csv");
  CHECK(c.json_path() == "thermo-trace.json");
}

TEST_CASE("range violations carry line numbers") {
  TempDir tmp;
  const fs::path cfg = write_text(tmp.path, "bad.cfg",
                                  "experiment=phase-diagram\n"
                                  "gamma=3.0\n");
  try {
    (void)validate_config(cfg.string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(e.diagnostics.size() == 1);
    CHECK(e.diagnostics[0].find("line 2") != std::string::npos);
    CHECK(e.diagnostics[0].find("gamma") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected, valid keys round-trip") {
  TempDir tmp;
  const fs::path bad = write_text(tmp.path, "unknown.cfg",
                                  "experiment=thermo-trace\nfrobnicate=1\n");
  CHECK_THROWS_AS((void)validate_config(bad.string()), ConfigError);

  const fs::path good = write_text(tmp.path, "good.cfg",
                                   "# comment line\n"
                                   "experiment=coherence-diagram\n"
                                   "p=0.4\n"
                                   "phi1=3.14159\n"
                                   "gamma=pi/14\n"
                                   "delta=pi/6\n");
  const ExperimentConfig c = validate_config(good.string());
  CHECK(c.params.p == 0.4);
  CHECK(c.params.phi1 == 3.14159);
  CHECK(c.params.gamma == doctest::Approx(pi / 14.0).epsilon(1e-15));
}

TEST_CASE("pi-form values parse exactly") {
  const std::vector<ConfigEntry> entries{{"experiment", "thermo-trace", 1},
                                         {"gamma", "pi/14", 2},
                                         {"delta", "0.25pi", 3},
                                         {"theta_max", "pi", 4}};
  const ExperimentConfig c = build_config(entries);
  CHECK(c.params.gamma == pi / 14.0);
  CHECK(c.params.delta == 0.25 * pi);
  CHECK(c.grid.theta_max == pi);
}

TEST_CASE("conflicting experiment key is diagnosed") {
  const std::vector<ConfigEntry> entries{{"experiment", "thermo-trace", 1}};
  CHECK_THROWS_AS((void)build_config(entries, ExperimentKind::PhaseDiagram), ConfigError);
}

TEST_CASE("correlation-trace requires a correlation kind") {
  CHECK_THROWS_AS((void)build_config({}, ExperimentKind::CorrelationTrace), ConfigError);
  const ExperimentConfig c = build_config({{"correlation", "quantum", 1}},
                                          ExperimentKind::CorrelationTrace);
  CHECK(c.correlation == CorrelationKind::Quantum);
}

TEST_CASE("thermodynamic experiments demand resonance") {
  const std::vector<ConfigEntry> entries{{"omega_s", "2.0", 1}};
  CHECK_THROWS_AS((void)build_config(entries, ExperimentKind::ThermoTrace), ConfigError);
  CHECK_NOTHROW((void)build_config(entries, ExperimentKind::CoherenceDiagram));
}

TEST_CASE("CLI: correlation trace writes plot-ready data under the bound") {
  TempDir tmp;
  const fs::path csv = tmp.path / "corr.csv";
  const int rc = run_cli("correlation-trace --correlation quantum --xi 0.855 --output " +
                         csv.string());
  REQUIRE(rc == 0);

  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,distance,bound");
  double max_distance = 0.0, bound = 0.0;
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    int n;
    double distance;
    fields >> n >> distance >> bound;
    CHECK(distance <= bound + 1e-10);
    max_distance = std::max(max_distance, distance);
    ++rows;
  }
  CHECK(rows == 201);
  CHECK(max_distance > 0.0);

  // The JSON summary carries the promised fields.
  const std::string summary = slurp(tmp.path / "corr.json");
  for (const char* key :
       {"\"bound\"", "\"artifact\"", "\"config\"", "\"wall_time_seconds\"",
        "\"classification_counts\"", "\"xi\": 0.855"})
    CHECK(summary.find(key) != std::string::npos);
}

TEST_CASE("CLI: decoupled thermo trace is all zeros") {
  TempDir tmp;
  const fs::path csv = tmp.path / "t.csv";
  const int rc = run_cli("thermo-trace --gamma 0 --n-steps 20 --output " + csv.string());
  REQUIRE(rc == 0);

  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,delta_s,beta_q,heat,heat_dia,heat_coh,mutual_info");
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    int n;
    double delta_s, beta_q, heat, dia, coh, mi;
    fields >> n >> delta_s >> beta_q >> heat >> dia >> coh >> mi;
    CHECK(std::abs(delta_s) <= 1e-12);
    CHECK(std::abs(heat) <= 1e-15);
    CHECK(std::abs(dia) <= 1e-15);
    CHECK(std::abs(coh) <= 1e-15);
    CHECK(std::abs(mi) <= 1e-12);
    CHECK(beta_q == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("CLI: exit codes for config and contract failures") {
  TempDir tmp;
  CHECK(run_cli("thermo-trace --set n_steps=3 --output " + (tmp.path / "ok.csv").string()) == 0);
  CHECK(run_cli("thermo-trace --gamma 9.9 --output " + (tmp.path / "x.csv").string()) == 2);
  CHECK(run_cli("correlation-trace --output " + (tmp.path / "y.csv").string()) == 2);
  CHECK(run_cli("thermo-trace --set nonsense") == 2);
  // Coherent environment violates the thermal-form premise of the
  // decomposition at run time.
  CHECK(run_cli("thermo-trace --p 0.8 --n-steps 5 --output " + (tmp.path / "z.csv").string()) ==
        3);
  // Unreadable config, unwritable output.
  CHECK(run_cli("thermo-trace --config " + (tmp.path / "missing.cfg").string()) == 4);
  CHECK(run_cli("thermo-trace --n-steps 2 --output /nonexistent-dir/out.csv") == 4);
}

TEST_CASE("CLI: repeated runs are byte-identical") {
  TempDir tmp;
  const fs::path cfg = write_text(tmp.path, "small.cfg",
                                  "gamma_points=3\n"
                                  "delta_points=3\n"
                                  "inner_theta_points=3\n"
                                  "inner_phi_points=4\n"
                                  "n_steps=40\n");
  const fs::path a = tmp.path / "a.csv";
  const fs::path b = tmp.path / "b.csv";
  REQUIRE(run_cli("phase-diagram --config " + cfg.string() + " --output " + a.string()) == 0);
  REQUIRE(run_cli("phase-diagram --config " + cfg.string() + " --output " + b.string()) == 0);
  const std::string first = slurp(a);
  CHECK(!first.empty());
  CHECK(first == slurp(b));
  CHECK(first.rfind("gamma,delta,nm,class\n", 0) == 0);

  // The reference coupling rows classify as expected even on a fast sweep.
  auto row_class = [&](double delta) {
    char prefix[128];
    std::snprintf(prefix, sizeof prefix, "%.17g,%.17g,", pi / 14.0, delta);
    const auto at = first.find(prefix);
    REQUIRE(at != std::string::npos);
    const auto end = first.find('\n', at);
    return first.substr(at, end - at);
  };
  CHECK(row_class(pi / 9.0).find("NonMarkovian") != std::string::npos);
  const std::string markov_row = row_class(pi / 6.0);
  CHECK(markov_row.find("Markovian") != std::string::npos);
  CHECK(markov_row.find("NonMarkovian") == std::string::npos);

  // The reference couplings are always present as rows.
  char pi14[64];
  std::snprintf(pi14, sizeof pi14, "%.17g", pi / 14.0);
  CHECK(first.find(pi14) != std::string::npos);

  // The worker count must not influence the data.
  const fs::path c = tmp.path / "c.csv";
  REQUIRE(run_cli("phase-diagram --config " + cfg.string() + " --output " + c.string(),
                  "QCOLLIDE_THREADS=1") == 0);
  CHECK(first == slurp(c));
}
