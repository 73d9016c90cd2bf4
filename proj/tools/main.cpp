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

// Experiment runner: one subcommand per experiment, key=value configuration
// with command-line overrides, deterministic CSV + JSON output.
//
// Exit codes: 0 success, 2 config error, 3 numeric contract violation,
// 4 I/O error.

#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qcollide/experiment.hpp"
#include "qcollide/version.hpp"

namespace {

using qcollide::ConfigEntry;
using qcollide::ExperimentKind;

struct SubcommandState {
  ExperimentKind kind;
  std::string config_path;
  std::vector<std::string> sets;
  // Named sugar options; applied after --set in this fixed order.
  std::vector<std::pair<std::string, std::string>> named;
};

void add_named(CLI::App* sub, SubcommandState& state, const std::string& flag,
               const std::string& key, const std::string& help) {
  sub->add_option_function<std::string>(
      flag, [&state, key](const std::string& value) { state.named.emplace_back(key, value); },
      help);
}

void configure(CLI::App* sub, SubcommandState& state) {
  sub->add_option("--config", state.config_path, "key=value config file");
  sub->add_option("--set", state.sets, "override a config key, e.g. --set gamma=pi/14")
      ->take_all();
  add_named(sub, state, "--gamma", "gamma", "system/auxiliary coupling angle");
  add_named(sub, state, "--delta", "delta", "auxiliary/ancilla coupling angle");
  add_named(sub, state, "--temperature", "temperature", "environment temperature");
  add_named(sub, state, "--omega", "omega", "resonant frequency (sets omega_s and omega_e)");
  add_named(sub, state, "--omega-s", "omega_s", "system frequency");
  add_named(sub, state, "--omega-e", "omega_e", "environment frequency");
  add_named(sub, state, "--p", "p", "environment coherence weight in [0, 1]");
  add_named(sub, state, "--phi1", "phi1", "ancilla coherence phase");
  add_named(sub, state, "--phi2", "phi2", "auxiliary-qubit coherence phase");
  add_named(sub, state, "--xi", "xi", "initial-correlation amplitude in [0, 1]");
  add_named(sub, state, "--correlation", "correlation", "quantum | classical | none");
  add_named(sub, state, "--n-steps", "n_steps", "number of collisions");
  add_named(sub, state, "--theta-points", "theta_points", "theta grid points");
  add_named(sub, state, "--phi-points", "phi_points", "phi grid points");
  add_named(sub, state, "--theta-max", "theta_max", "pi/2 or pi");
  add_named(sub, state, "--gamma-points", "gamma_points", "phase-diagram gamma axis points");
  add_named(sub, state, "--delta-points", "delta_points", "phase-diagram delta axis points");
  add_named(sub, state, "--inner-theta-points", "inner_theta_points",
            "phase-diagram inner maximization theta points");
  add_named(sub, state, "--inner-phi-points", "inner_phi_points",
            "phase-diagram inner maximization phi points");
  add_named(sub, state, "--output,-o", "output", "CSV output path (JSON summary alongside)");
}

int execute(const SubcommandState& state) {
  std::vector<ConfigEntry> entries;
  if (!state.config_path.empty()) entries = qcollide::read_config_file(state.config_path);
  for (const std::string& s : state.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw qcollide::ConfigError({"override: --set expects key=value, got '" + s + "'"});
    entries.push_back(ConfigEntry{s.substr(0, eq), s.substr(eq + 1), 0});
  }
  for (const auto& [key, value] : state.named) entries.push_back(ConfigEntry{key, value, 0});

  const qcollide::ExperimentConfig cfg = qcollide::build_config(entries, state.kind);
  const std::string csv = qcollide::run_experiment(cfg);
  std::cout << csv << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collision-model simulator: non-Markovianity measures and "
               "per-collision thermodynamics for a qubit in a hierarchical environment"};
  app.set_version_flag("--version", qcollide::version_string);
  app.require_subcommand(1);

  std::vector<std::unique_ptr<SubcommandState>> states;
  const std::pair<const char*, ExperimentKind> kinds[] = {
      {"phase-diagram", ExperimentKind::PhaseDiagram},
      {"coherence-diagram", ExperimentKind::CoherenceDiagram},
      {"correlation-trace", ExperimentKind::CorrelationTrace},
      {"thermo-trace", ExperimentKind::ThermoTrace},
      {"heat-alignment", ExperimentKind::HeatAlignment},
  };
  int exit_code = 0;
  for (const auto& [name, kind] : kinds) {
    auto state = std::make_unique<SubcommandState>();
    state->kind = kind;
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    configure(sub, *state);
    SubcommandState* raw = state.get();
    sub->callback([raw, &exit_code] { exit_code = execute(*raw); });
    states.push_back(std::move(state));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const qcollide::ConfigError& e) {
    std::string message = e.diagnostics.empty() ? e.what() : e.diagnostics.front();
    if (e.diagnostics.size() > 1)
      message += " (+" + std::to_string(e.diagnostics.size() - 1) + " more)";
    std::cerr << "config error: " << message << '\n';
    return 2;
  } catch (const qcollide::ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return 3;
  } catch (const qcollide::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
