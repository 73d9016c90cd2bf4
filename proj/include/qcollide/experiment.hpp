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

#ifndef QCOLLIDE_EXPERIMENT_HPP
#define QCOLLIDE_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "qcollide/nonmarkov.hpp"

namespace qcollide {

enum class ExperimentKind {
  PhaseDiagram,
  CoherenceDiagram,
  CorrelationTrace,
  ThermoTrace,
  HeatAlignment,
};

enum class CorrelationKind { Quantum, Classical, None };

const char* to_string(ExperimentKind kind);
const char* to_string(CorrelationKind kind);
const char* to_string(Dynamics cls);

/// Fully resolved, validated experiment description. Runs are seed-free and
/// deterministic: the same config always yields byte-identical CSV output.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::PhaseDiagram;
  CollisionParams params;
  GridSpec grid{31, 37, half_pi};        // (theta, phi) grid of initial pairs
  GridSpec inner_grid{13, 13, half_pi};  // per-cell maximization in phase-diagram
  int gamma_points = 25;
  int delta_points = 25;
  int n_steps = 200;
  double xi = 0.855;
  CorrelationKind correlation = CorrelationKind::None;
  std::string output_path;  // empty: "<experiment>.csv"

  std::string csv_path() const;
  std::string json_path() const;
};

/// Invalid configuration; `diagnostics` lists every violation with its
/// config-file line number (line 0 marks command-line overrides).
struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> problems);
  std::vector<std::string> diagnostics;
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// One key=value assignment and where it came from.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;  // 0 for command-line overrides
};

/// Parses a line-oriented key=value file ('#' comments, blank lines allowed).
/// Throws IoError when unreadable, ConfigError on malformed lines.
std::vector<ConfigEntry> read_config_file(const std::string& path);

/// Applies defaults then the entries in order; collects every violation
/// (unknown key, unparsable value, range error, missing experiment) into one
/// ConfigError. `implied` supplies the experiment when the CLI subcommand
/// already names it; an explicit key must then agree.
ExperimentConfig build_config(const std::vector<ConfigEntry>& entries,
                              std::optional<ExperimentKind> implied = std::nullopt);

/// read_config_file + build_config.
ExperimentConfig validate_config(const std::string& path,
                                 std::optional<ExperimentKind> implied = std::nullopt);

/// Runs the experiment and writes the CSV data file and the JSON summary.
/// Throws ConfigError / ContractViolation / IoError; returns the CSV path.
std::string run_experiment(const ExperimentConfig& config);

}  // namespace qcollide

#endif  // QCOLLIDE_EXPERIMENT_HPP
