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

#include "qcollide/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcollide/thermo.hpp"
#include "qcollide/version.hpp"

namespace qcollide {

namespace {

using nlohmann::ordered_json;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

bool parse_plain_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  out = v;
  return std::isfinite(v);
}

// Accepts plain floats plus readable pi fractions: "pi", "-pi", "pi/14",
// "3pi/4", "0.5pi", so the recurring coupling angles stay exact in configs.
bool parse_double_value(const std::string& raw, double& out) {
  const std::string s = trim(raw);
  if (parse_plain_double(s, out)) return true;
  const auto at = s.find("pi");
  if (at == std::string::npos) return false;
  double factor = 1.0;
  const std::string prefix = trim(s.substr(0, at));
  if (prefix == "-") {
    factor = -1.0;
  } else if (!prefix.empty()) {
    std::string head = prefix;
    if (!head.empty() && head.back() == '*') head.pop_back();
    if (!parse_plain_double(trim(head), factor)) return false;
  }
  double divisor = 1.0;
  const std::string suffix = trim(s.substr(at + 2));
  if (!suffix.empty()) {
    if (suffix.front() != '/') return false;
    if (!parse_plain_double(trim(suffix.substr(1)), divisor) || divisor == 0.0) return false;
  }
  out = factor * pi / divisor;
  return std::isfinite(out);
}

bool parse_int_value(const std::string& raw, int& out) {
  const std::string s = trim(raw);
  if (s.empty()) return false;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) return false;
  if (v < INT_MIN || v > INT_MAX) return false;
  out = static_cast<int>(v);
  return true;
}

std::optional<ExperimentKind> parse_experiment(const std::string& value) {
  if (value == "phase-diagram") return ExperimentKind::PhaseDiagram;
  if (value == "coherence-diagram") return ExperimentKind::CoherenceDiagram;
  if (value == "correlation-trace") return ExperimentKind::CorrelationTrace;
  if (value == "thermo-trace") return ExperimentKind::ThermoTrace;
  if (value == "heat-alignment") return ExperimentKind::HeatAlignment;
  return std::nullopt;
}

std::optional<CorrelationKind> parse_correlation(const std::string& value) {
  if (value == "quantum") return CorrelationKind::Quantum;
  if (value == "classical") return CorrelationKind::Classical;
  if (value == "none") return CorrelationKind::None;
  return std::nullopt;
}

std::string where(int line) {
  return line > 0 ? "line " + std::to_string(line) : std::string("override");
}

// Evenly spaced grid over (0, pi/2]; the open end keeps the trivial
// zero-coupling column out of the sweep.
std::vector<double> coupling_axis(int points) {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    out[static_cast<std::size_t>(i)] = half_pi * (i + 1) / points;
  return out;
}

void insert_value(std::vector<double>& axis, double value) {
  for (double v : axis)
    if (v == value) return;
  axis.insert(std::upper_bound(axis.begin(), axis.end(), value), value);
}

struct RunResult {
  std::string csv;
  long rows = 0;
  int markovian = 0;
  int non_markovian = 0;
  ordered_json extra = ordered_json::object();
};

RunResult run_phase_diagram(const ExperimentConfig& cfg) {
  std::vector<double> gammas = coupling_axis(cfg.gamma_points);
  std::vector<double> deltas = coupling_axis(cfg.delta_points);
  // Reference couplings reported in the source data; kept on every sweep so
  // the two known rows are always present in the output.
  insert_value(gammas, pi / 14.0);
  insert_value(deltas, pi / 6.0);
  insert_value(deltas, pi / 9.0);

  const DensityOperator aq = auxiliary_initial_state(cfg.params);
  const std::vector<PhasePoint> points =
      phase_diagram(gammas, deltas, cfg.inner_grid, aq, cfg.params, cfg.n_steps);

  RunResult out;
  std::ostringstream csv;
  csv << "gamma,delta,nm,class\n";
  for (const PhasePoint& pt : points) {
    csv << g17(pt.gamma) << ',' << g17(pt.delta) << ',' << g17(pt.nm) << ','
        << to_string(pt.cls) << '\n';
    ++out.rows;
    (pt.cls == Dynamics::NonMarkovian ? out.non_markovian : out.markovian)++;
  }
  out.csv = csv.str();
  out.extra["gamma_axis_points"] = gammas.size();
  out.extra["delta_axis_points"] = deltas.size();
  return out;
}

RunResult run_coherence_diagram(const ExperimentConfig& cfg) {
  const std::vector<CoherencePoint> points =
      coherence_diagram(cfg.grid, cfg.params, cfg.n_steps);

  RunResult out;
  std::ostringstream csv;
  csv << "theta,phi,nm,class\n";
  for (const CoherencePoint& pt : points) {
    csv << g17(pt.pair.theta) << ',' << g17(pt.pair.phi) << ',' << g17(pt.nm) << ','
        << to_string(pt.cls) << '\n';
    ++out.rows;
    (pt.cls == Dynamics::NonMarkovian ? out.non_markovian : out.markovian)++;
  }
  out.csv = csv.str();
  return out;
}

RunResult run_correlation_trace(const ExperimentConfig& cfg) {
  if (cfg.correlation == CorrelationKind::None)
    throw ConfigError({"correlation-trace requires correlation=quantum or classical"});
  const DensityOperator initial = cfg.correlation == CorrelationKind::Quantum
                                      ? quantum_correlated_state(cfg.xi)
                                      : classical_correlated_state(cfg.xi);
  const CorrelatedSeries res =
      correlated_distance_series(initial, cfg.params, ancilla_state(cfg.params), cfg.n_steps);

  RunResult out;
  std::ostringstream csv;
  csv << "n,distance,bound\n";
  for (std::size_t n = 0; n < res.series.size(); ++n) {
    csv << n << ',' << g17(res.series[n]) << ',' << g17(res.bound) << '\n';
    ++out.rows;
  }
  out.csv = csv.str();
  out.extra["bound"] = res.bound;
  out.extra["max_distance"] = *std::max_element(res.series.begin(), res.series.end());
  return out;
}

RunResult run_thermo_trace(const ExperimentConfig& cfg) {
  Matrix ground = Matrix::Zero(2, 2);
  ground(1, 1) = 1.0;
  const Trajectory traj =
      run(product_state(DensityOperator(std::move(ground)), auxiliary_initial_state(cfg.params)),
          cfg.params, cfg.n_steps, ancilla_state(cfg.params));
  const std::vector<ThermoRecord> series = thermo_series(traj);

  RunResult out;
  std::ostringstream csv;
  csv << "n,delta_s,beta_q,heat,heat_dia,heat_coh,mutual_info\n";
  for (const ThermoRecord& r : series) {
    csv << r.step_index << ',' << g17(r.delta_s) << ',' << g17(r.beta_aq) << ',' << g17(r.heat)
        << ',' << g17(r.heat_dia) << ',' << g17(r.heat_coh) << ',' << g17(r.mutual_info) << '\n';
    ++out.rows;
  }
  out.csv = csv.str();
  return out;
}

RunResult run_heat_alignment(const ExperimentConfig& cfg) {
  Matrix excited = Matrix::Zero(2, 2);
  excited(0, 0) = 1.0;
  Matrix ground = Matrix::Zero(2, 2);
  ground(1, 1) = 1.0;
  const DensityOperator aq = auxiliary_initial_state(cfg.params);
  const DensityOperator anc = ancilla_state(cfg.params);
  const Trajectory traj_ground =
      run(product_state(DensityOperator(std::move(ground)), aq), cfg.params, cfg.n_steps, anc);
  const Trajectory traj_excited =
      run(product_state(DensityOperator(std::move(excited)), aq), cfg.params, cfg.n_steps, anc);
  // Heat is reported for the trajectory starting in the ground state |1>.
  const AlignmentReport report = alignment_report(traj_ground, traj_excited);

  RunResult out;
  std::ostringstream csv;
  csv << "n,heat,delta_distance\n";
  for (const AlignmentRow& row : report.rows) {
    csv << row.step_index << ',' << g17(row.heat) << ',' << g17(row.delta_distance) << '\n';
    ++out.rows;
  }
  out.csv = csv.str();
  out.extra["sign_consistency"] = report.sign_consistency;
  out.extra["gated_steps"] = report.gated_steps;
  return out;
}

ordered_json config_echo(const ExperimentConfig& cfg) {
  ordered_json j = ordered_json::object();
  j["experiment"] = to_string(cfg.experiment);
  j["gamma"] = cfg.params.gamma;
  j["delta"] = cfg.params.delta;
  j["temperature"] = cfg.params.temperature;
  j["omega_s"] = cfg.params.omega_s;
  j["omega_e"] = cfg.params.omega_e;
  j["p"] = cfg.params.p;
  j["phi1"] = cfg.params.phi1;
  j["phi2"] = cfg.params.phi2;
  j["xi"] = cfg.xi;
  j["correlation"] = to_string(cfg.correlation);
  j["n_steps"] = cfg.n_steps;
  j["theta_points"] = cfg.grid.theta_points;
  j["phi_points"] = cfg.grid.phi_points;
  j["theta_max"] = cfg.grid.theta_max;
  j["gamma_points"] = cfg.gamma_points;
  j["delta_points"] = cfg.delta_points;
  j["inner_theta_points"] = cfg.inner_grid.theta_points;
  j["inner_phi_points"] = cfg.inner_grid.phi_points;
  j["output"] = cfg.csv_path();
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::PhaseDiagram: return "phase-diagram";
    case ExperimentKind::CoherenceDiagram: return "coherence-diagram";
    case ExperimentKind::CorrelationTrace: return "correlation-trace";
    case ExperimentKind::ThermoTrace: return "thermo-trace";
    case ExperimentKind::HeatAlignment: return "heat-alignment";
  }
  return "?";
}

const char* to_string(CorrelationKind kind) {
  switch (kind) {
    case CorrelationKind::Quantum: return "quantum";
    case CorrelationKind::Classical: return "classical";
    case CorrelationKind::None: return "none";
  }
  return "?";
}

const char* to_string(Dynamics cls) {
  return cls == Dynamics::NonMarkovian ? "NonMarkovian" : "Markovian";
}

std::string ExperimentConfig::csv_path() const {
  return output_path.empty() ? std::string(to_string(experiment)) + ".csv" : output_path;
}

std::string ExperimentConfig::json_path() const {
  std::filesystem::path p(csv_path());
  p.replace_extension(".json");
  return p.string();
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(problems.empty() ? "invalid config" : problems.front()),
      diagnostics(std::move(problems)) {}

std::vector<ConfigEntry> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);

  std::vector<ConfigEntry> entries;
  std::vector<std::string> problems;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(number) + ": expected key=value");
      continue;
    }
    entries.push_back(ConfigEntry{trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)),
                                  number});
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return entries;
}

ExperimentConfig build_config(const std::vector<ConfigEntry>& entries,
                              std::optional<ExperimentKind> implied) {
  ExperimentConfig cfg;
  std::optional<ExperimentKind> experiment = implied;
  std::vector<std::string> problems;

  auto set_double = [&](const ConfigEntry& e, double& target, double lo, double hi,
                        const char* range_label) {
    double v = 0.0;
    if (!parse_double_value(e.value, v)) {
      problems.push_back(where(e.line) + ": cannot parse number for '" + e.key + "'");
      return;
    }
    if (v < lo || v > hi) {
      problems.push_back(where(e.line) + ": " + e.key + " out of range " + range_label);
      return;
    }
    target = v;
  };
  auto set_positive = [&](const ConfigEntry& e, double& target) {
    double v = 0.0;
    if (!parse_double_value(e.value, v)) {
      problems.push_back(where(e.line) + ": cannot parse number for '" + e.key + "'");
      return;
    }
    if (!(v > 0.0)) {
      problems.push_back(where(e.line) + ": " + e.key + " must be positive");
      return;
    }
    target = v;
  };
  auto set_int = [&](const ConfigEntry& e, int& target, int lo) {
    int v = 0;
    if (!parse_int_value(e.value, v)) {
      problems.push_back(where(e.line) + ": cannot parse integer for '" + e.key + "'");
      return;
    }
    if (v < lo) {
      problems.push_back(where(e.line) + ": " + e.key + " must be >= " + std::to_string(lo));
      return;
    }
    target = v;
  };

  for (const ConfigEntry& e : entries) {
    if (e.key == "experiment") {
      const auto kind = parse_experiment(e.value);
      if (!kind) {
        problems.push_back(where(e.line) + ": unknown experiment '" + e.value + "'");
      } else if (implied && *implied != *kind) {
        problems.push_back(where(e.line) + ": experiment key conflicts with the subcommand");
      } else {
        experiment = kind;
      }
    } else if (e.key == "gamma") {
      set_double(e, cfg.params.gamma, 0.0, half_pi, "[0, pi/2]");
    } else if (e.key == "delta") {
      set_double(e, cfg.params.delta, 0.0, half_pi, "[0, pi/2]");
    } else if (e.key == "temperature") {
      set_positive(e, cfg.params.temperature);
    } else if (e.key == "omega_s") {
      set_positive(e, cfg.params.omega_s);
    } else if (e.key == "omega_e") {
      set_positive(e, cfg.params.omega_e);
    } else if (e.key == "omega") {
      double v = cfg.params.omega_s;
      set_positive(e, v);
      cfg.params.omega_s = cfg.params.omega_e = v;
    } else if (e.key == "p") {
      set_double(e, cfg.params.p, 0.0, 1.0, "[0, 1]");
    } else if (e.key == "phi1") {
      double v = 0.0;
      if (parse_double_value(e.value, v))
        cfg.params.phi1 = v;
      else
        problems.push_back(where(e.line) + ": cannot parse number for 'phi1'");
    } else if (e.key == "phi2") {
      double v = 0.0;
      if (parse_double_value(e.value, v))
        cfg.params.phi2 = v;
      else
        problems.push_back(where(e.line) + ": cannot parse number for 'phi2'");
    } else if (e.key == "xi") {
      set_double(e, cfg.xi, 0.0, 1.0, "[0, 1]");
    } else if (e.key == "theta_max") {
      double v = 0.0;
      if (!parse_double_value(e.value, v)) {
        problems.push_back(where(e.line) + ": cannot parse number for 'theta_max'");
      } else if (std::abs(v - half_pi) > 1e-9 && std::abs(v - pi) > 1e-9) {
        problems.push_back(where(e.line) + ": theta_max must be pi/2 or pi");
      } else {
        cfg.grid.theta_max = v;
      }
    } else if (e.key == "n_steps") {
      set_int(e, cfg.n_steps, 1);
    } else if (e.key == "theta_points") {
      set_int(e, cfg.grid.theta_points, 2);
    } else if (e.key == "phi_points") {
      set_int(e, cfg.grid.phi_points, 2);
    } else if (e.key == "inner_theta_points") {
      set_int(e, cfg.inner_grid.theta_points, 2);
    } else if (e.key == "inner_phi_points") {
      set_int(e, cfg.inner_grid.phi_points, 2);
    } else if (e.key == "gamma_points") {
      set_int(e, cfg.gamma_points, 1);
    } else if (e.key == "delta_points") {
      set_int(e, cfg.delta_points, 1);
    } else if (e.key == "correlation") {
      const auto kind = parse_correlation(e.value);
      if (kind)
        cfg.correlation = *kind;
      else
        problems.push_back(where(e.line) + ": correlation must be quantum, classical or none");
    } else if (e.key == "output") {
      if (e.value.empty())
        problems.push_back(where(e.line) + ": output path must not be empty");
      else
        cfg.output_path = e.value;
    } else {
      problems.push_back(where(e.line) + ": unknown key '" + e.key + "'");
    }
  }

  if (!experiment) {
    problems.push_back("missing required field 'experiment'");
  } else {
    cfg.experiment = *experiment;
    if (cfg.experiment == ExperimentKind::CorrelationTrace &&
        cfg.correlation == CorrelationKind::None)
      problems.push_back("correlation-trace requires correlation=quantum or classical");
    if ((cfg.experiment == ExperimentKind::ThermoTrace ||
         cfg.experiment == ExperimentKind::HeatAlignment) &&
        std::abs(cfg.params.omega_s - cfg.params.omega_e) > 1e-12)
      problems.push_back("thermodynamic experiments require resonance omega_s = omega_e");
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
  cfg.params.validate();
  cfg.grid.validate();
  cfg.inner_grid.validate();
  return cfg;
}

ExperimentConfig validate_config(const std::string& path, std::optional<ExperimentKind> implied) {
  return build_config(read_config_file(path), implied);
}

std::string run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();

  RunResult result;
  switch (cfg.experiment) {
    case ExperimentKind::PhaseDiagram: result = run_phase_diagram(cfg); break;
    case ExperimentKind::CoherenceDiagram: result = run_coherence_diagram(cfg); break;
    case ExperimentKind::CorrelationTrace: result = run_correlation_trace(cfg); break;
    case ExperimentKind::ThermoTrace: result = run_thermo_trace(cfg); break;
    case ExperimentKind::HeatAlignment: result = run_heat_alignment(cfg); break;
  }

  const std::string csv_path = cfg.csv_path();
  write_file(csv_path, result.csv);

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ordered_json summary;
  summary["artifact"] = version_string;
  summary["experiment"] = to_string(cfg.experiment);
  summary["config"] = config_echo(cfg);
  summary["rows"] = result.rows;
  summary["classification_counts"] = {{"markovian", result.markovian},
                                      {"non_markovian", result.non_markovian}};
  summary["wall_time_seconds"] = wall;
  summary["csv"] = csv_path;
  for (auto& [key, value] : result.extra.items()) summary[key] = value;
  write_file(cfg.json_path(), summary.dump(2) + "\n");

  return csv_path;
}

}  // namespace qcollide
