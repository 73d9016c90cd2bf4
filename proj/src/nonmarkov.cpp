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

#include "qcollide/nonmarkov.hpp"

#include <cmath>

#include "qcollide/parallel.hpp"

namespace qcollide {

namespace {

// Trace distance from a Hermitian 2x2 difference, closed form.
double trace_distance_herm2(const Eigen::Matrix2cd& d) noexcept {
  const double mean = 0.5 * (d(0, 0).real() + d(1, 1).real());
  const double radius = std::hypot(0.5 * (d(0, 0).real() - d(1, 1).real()), std::abs(d(0, 1)));
  return 0.5 * (std::abs(mean + radius) + std::abs(mean - radius));
}

Eigen::Matrix2cd as_fixed2(const DensityOperator& rho, const char* who) {
  if (rho.dim() != 2) throw ContractViolation(std::string(who) + ": 2x2 state required");
  return rho.matrix();
}

// Streaming accumulation of positive distance increments for one initial
// pair; avoids materializing trajectories in the grid loops.
double pair_backflow(const Eigen::Matrix2cd& s1, const Eigen::Matrix2cd& s2,
                     const Eigen::Matrix2cd& aq, const Eigen::Matrix2cd& ancilla,
                     const CollisionMap& map, int n_steps) {
  Eigen::Matrix4cd r1 = tensor2(s1, aq);
  Eigen::Matrix4cd r2 = tensor2(s2, aq);
  double prev = trace_distance_herm2(system_marginal(r1) - system_marginal(r2));
  double acc = 0.0;
  for (int n = 0; n < n_steps; ++n) {
    r1 = map.step(r1, ancilla);
    r2 = map.step(r2, ancilla);
    const double cur = trace_distance_herm2(system_marginal(r1) - system_marginal(r2));
    const double inc = cur - prev;
    if (inc > increment_noise) acc += inc;
    prev = cur;
  }
  return acc;
}

std::vector<double> raw_distance_series(const Eigen::Matrix2cd& s1, const Eigen::Matrix2cd& s2,
                                        const Eigen::Matrix2cd& aq, const Eigen::Matrix2cd& ancilla,
                                        const CollisionMap& map, int n_steps) {
  Eigen::Matrix4cd r1 = tensor2(s1, aq);
  Eigen::Matrix4cd r2 = tensor2(s2, aq);
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(n_steps) + 1);
  series.push_back(trace_distance_herm2(system_marginal(r1) - system_marginal(r2)));
  for (int n = 0; n < n_steps; ++n) {
    r1 = map.step(r1, ancilla);
    r2 = map.step(r2, ancilla);
    series.push_back(trace_distance_herm2(system_marginal(r1) - system_marginal(r2)));
  }
  return series;
}

void require_steps(int n_steps) {
  if (n_steps < 1) throw ContractViolation("n_steps must be >= 1");
}

}  // namespace

void GridSpec::validate() const {
  if (theta_points < 2 || phi_points < 2)
    throw ContractViolation("GridSpec: at least two points per angle");
  const bool half = std::abs(theta_max - half_pi) <= 1e-12;
  const bool full = std::abs(theta_max - pi) <= 1e-12;
  if (!half && !full) throw ContractViolation("GridSpec: theta_max must be pi/2 or pi");
}

std::vector<double> GridSpec::thetas() const {
  std::vector<double> out(static_cast<std::size_t>(theta_points));
  for (int i = 0; i < theta_points; ++i)
    out[static_cast<std::size_t>(i)] = theta_max * i / (theta_points - 1);
  return out;
}

std::vector<double> GridSpec::phis() const {
  std::vector<double> out(static_cast<std::size_t>(phi_points));
  for (int k = 0; k < phi_points; ++k)
    out[static_cast<std::size_t>(k)] = 2.0 * pi * k / phi_points;
  return out;
}

double accumulated_backflow(const std::vector<double>& series, double noise) {
  double acc = 0.0;
  for (std::size_t n = 1; n < series.size(); ++n) {
    const double inc = series[n] - series[n - 1];
    if (inc > noise) acc += inc;
  }
  return acc;
}

std::vector<double> distance_series(const DensityOperator& system1, const DensityOperator& system2,
                                    const DensityOperator& aq_init, const CollisionParams& params,
                                    int n_steps) {
  params.validate();
  require_steps(n_steps);
  const CollisionMap map(params);
  return raw_distance_series(as_fixed2(system1, "distance_series"),
                             as_fixed2(system2, "distance_series"),
                             as_fixed2(aq_init, "distance_series"),
                             ancilla_state(params).matrix(), map, n_steps);
}

NmResult nm_measure(const GridSpec& grid, const DensityOperator& aq_init,
                    const CollisionParams& params, int n_steps) {
  grid.validate();
  params.validate();
  require_steps(n_steps);
  // Antipodal pairs cover the sphere once for theta in [0, pi/2].
  if (std::abs(grid.theta_max - half_pi) > 1e-12)
    throw ContractViolation("nm_measure: grid must span theta in [0, pi/2]");

  const std::vector<double> thetas = grid.thetas();
  const std::vector<double> phis = grid.phis();
  const Eigen::Matrix2cd aq = as_fixed2(aq_init, "nm_measure");
  const Eigen::Matrix2cd ancilla = ancilla_state(params).matrix();
  const CollisionMap map(params);

  const int cells = static_cast<int>(thetas.size() * phis.size());
  std::vector<double> measures(static_cast<std::size_t>(cells), 0.0);
  detail::parallel_for(cells, [&](int cell) {
    const BlochPure b{thetas[static_cast<std::size_t>(cell) / phis.size()],
                      phis[static_cast<std::size_t>(cell) % phis.size()]};
    const auto [p1, p2] = orthogonal_pair(b);
    measures[static_cast<std::size_t>(cell)] =
        pair_backflow(p1.matrix(), p2.matrix(), aq, ancilla, map, n_steps);
  });

  int best = 0;
  for (int cell = 1; cell < cells; ++cell)
    if (measures[static_cast<std::size_t>(cell)] > measures[static_cast<std::size_t>(best)])
      best = cell;

  NmResult result;
  result.argmax = BlochPure{thetas[static_cast<std::size_t>(best) / phis.size()],
                            phis[static_cast<std::size_t>(best) % phis.size()]};
  const auto [p1, p2] = orthogonal_pair(result.argmax);
  result.distance_series =
      raw_distance_series(p1.matrix(), p2.matrix(), aq, ancilla, map, n_steps);
  result.increments.reserve(static_cast<std::size_t>(n_steps));
  for (std::size_t n = 1; n < result.distance_series.size(); ++n)
    result.increments.push_back(result.distance_series[n] - result.distance_series[n - 1]);
  result.measure = accumulated_backflow(result.distance_series);
  return result;
}

std::vector<PhasePoint> phase_diagram(const std::vector<double>& gammas,
                                      const std::vector<double>& deltas, const GridSpec& inner_grid,
                                      const DensityOperator& aq_init, const CollisionParams& params,
                                      int n_steps) {
  inner_grid.validate();
  as_fixed2(aq_init, "phase_diagram");
  for (double g : gammas)
    if (!(g > 0.0 && g <= half_pi))
      throw ContractViolation("phase_diagram: gamma grid must lie in (0, pi/2]");
  for (double d : deltas)
    if (!(d > 0.0 && d <= half_pi))
      throw ContractViolation("phase_diagram: delta grid must lie in (0, pi/2]");
  const int cells = static_cast<int>(gammas.size() * deltas.size());
  std::vector<PhasePoint> points(static_cast<std::size_t>(cells));
  detail::parallel_for(cells, [&](int cell) {
    CollisionParams local = params;
    local.gamma = gammas[static_cast<std::size_t>(cell) / deltas.size()];
    local.delta = deltas[static_cast<std::size_t>(cell) % deltas.size()];
    const double nm = nm_measure(inner_grid, aq_init, local, n_steps).measure;
    points[static_cast<std::size_t>(cell)] = PhasePoint{local.gamma, local.delta, nm, classify(nm)};
  });
  return points;
}

std::vector<CoherencePoint> coherence_diagram(const GridSpec& grid, const CollisionParams& params,
                                              int n_steps) {
  grid.validate();
  params.validate();
  require_steps(n_steps);

  const std::vector<double> thetas = grid.thetas();
  const std::vector<double> phis = grid.phis();
  const Eigen::Matrix2cd aq = auxiliary_initial_state(params).matrix();
  const Eigen::Matrix2cd ancilla = ancilla_state(params).matrix();
  const CollisionMap map(params);

  const int cells = static_cast<int>(thetas.size() * phis.size());
  std::vector<CoherencePoint> points(static_cast<std::size_t>(cells));
  detail::parallel_for(cells, [&](int cell) {
    const BlochPure b{thetas[static_cast<std::size_t>(cell) / phis.size()],
                      phis[static_cast<std::size_t>(cell) % phis.size()]};
    const auto [p1, p2] = orthogonal_pair(b);
    const double nm = pair_backflow(p1.matrix(), p2.matrix(), aq, ancilla, map, n_steps);
    points[static_cast<std::size_t>(cell)] = CoherencePoint{b, nm, classify(nm)};
  });
  return points;
}

CorrelatedSeries correlated_distance_series(const DensityOperator& initial,
                                            const CollisionParams& params,
                                            const DensityOperator& ancilla, int n_steps) {
  params.validate();
  require_steps(n_steps);
  if (initial.dim() != 4)
    throw ContractViolation("correlated_distance_series: 4x4 initial state required");

  const Eigen::Matrix4cd rho0 = initial.matrix();
  const Eigen::Matrix4cd product0 = tensor2(system_marginal(rho0), auxiliary_marginal(rho0));
  const Eigen::Matrix2cd anc = as_fixed2(ancilla, "correlated_distance_series");
  const CollisionMap map(params);

  CorrelatedSeries out;
  out.bound = trace_distance(Matrix(rho0), Matrix(product0));
  out.series.reserve(static_cast<std::size_t>(n_steps) + 1);

  Eigen::Matrix4cd a = rho0;
  Eigen::Matrix4cd b = product0;
  out.series.push_back(trace_distance_herm2(system_marginal(a) - system_marginal(b)));
  for (int n = 0; n < n_steps; ++n) {
    a = map.step(a, anc);
    b = map.step(b, anc);
    out.series.push_back(trace_distance_herm2(system_marginal(a) - system_marginal(b)));
  }
  return out;
}

double appendix_witness(const DensityOperator& initial_classical, const GridSpec& grid,
                        const CollisionParams& params, int n_steps) {
  grid.validate();
  params.validate();
  require_steps(n_steps);
  if (std::abs(grid.theta_max - pi) > 1e-12)
    throw ContractViolation("appendix_witness: grid must span theta in [0, pi]");
  if (initial_classical.dim() != 4)
    throw ContractViolation("appendix_witness: 4x4 initial state required");

  const Eigen::Matrix4cd rho0 = initial_classical.matrix();
  const Eigen::Matrix2cd aq_marginal = auxiliary_marginal(rho0);
  const Eigen::Matrix2cd ancilla = ancilla_state(params).matrix();
  const CollisionMap map(params);

  // The correlated trajectory is shared by every grid cell.
  std::vector<Eigen::Matrix2cd> reference;
  reference.reserve(static_cast<std::size_t>(n_steps) + 1);
  {
    Eigen::Matrix4cd rho = rho0;
    reference.push_back(system_marginal(rho));
    for (int n = 0; n < n_steps; ++n) {
      rho = map.step(rho, ancilla);
      reference.push_back(system_marginal(rho));
    }
  }

  const std::vector<double> thetas = grid.thetas();
  const std::vector<double> phis = grid.phis();
  const int cells = static_cast<int>(thetas.size() * phis.size());
  std::vector<double> measures(static_cast<std::size_t>(cells), 0.0);
  detail::parallel_for(cells, [&](int cell) {
    const BlochPure b{thetas[static_cast<std::size_t>(cell) / phis.size()],
                      phis[static_cast<std::size_t>(cell) % phis.size()]};
    const Eigen::Vector2cd ket = bloch_ket(b);
    Eigen::Matrix4cd rho = tensor2(ket * ket.adjoint(), aq_marginal);
    double prev = trace_distance_herm2(reference[0] - system_marginal(rho));
    double acc = 0.0;
    for (int n = 0; n < n_steps; ++n) {
      rho = map.step(rho, ancilla);
      const double cur =
          trace_distance_herm2(reference[static_cast<std::size_t>(n) + 1] - system_marginal(rho));
      const double inc = cur - prev;
      if (inc > increment_noise) acc += inc;
      prev = cur;
    }
    measures[static_cast<std::size_t>(cell)] = acc;
  });

  double best = 0.0;
  for (double m : measures) best = std::max(best, m);
  return best;
}

}  // namespace qcollide
