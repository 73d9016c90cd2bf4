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

#ifndef QCOLLIDE_NONMARKOV_HPP
#define QCOLLIDE_NONMARKOV_HPP

#include <vector>

#include "qcollide/dynamics.hpp"

namespace qcollide {

// Increments of the trace distance smaller than this are treated as float
// noise and discarded from the accumulated measure.
inline constexpr double increment_noise = 1e-9;
// A dynamics is classified non-Markovian when the measure exceeds this.
inline constexpr double classification_threshold = 1e-7;

enum class Dynamics { Markovian, NonMarkovian };

inline Dynamics classify(double measure) {
  return measure > classification_threshold ? Dynamics::NonMarkovian : Dynamics::Markovian;
}

/// Grid over the Bloch angles used to discretize the maximization over
/// initial pairs. theta points are spread inclusively over [0, theta_max]
/// (theta_max is pi/2 for the antipodal-pair measure, pi for the witness);
/// phi points cover [0, 2 pi) without the duplicate endpoint.
struct GridSpec {
  int theta_points = 31;
  int phi_points = 37;
  double theta_max = half_pi;

  void validate() const;
  std::vector<double> thetas() const;
  std::vector<double> phis() const;
};

struct NmResult {
  double measure = 0.0;               // accumulated positive increments at argmax
  BlochPure argmax;
  std::vector<double> distance_series;  // D_n for the argmax pair, n = 0..n_steps
  std::vector<double> increments;       // D_n - D_{n-1}, n = 1..n_steps
};

/// Sum of the increments of `series` exceeding the noise threshold.
double accumulated_backflow(const std::vector<double>& series, double noise = increment_noise);

/// D(rho_1(n), rho_2(n)) for two system states evolved with a shared
/// auxiliary initial state and a shared ancilla stream (built from params).
/// Element 0 is the initial distance.
std::vector<double> distance_series(const DensityOperator& system1, const DensityOperator& system2,
                                    const DensityOperator& aq_init, const CollisionParams& params,
                                    int n_steps);

/// Discretized measure: the accumulated backflow maximized over the grid of
/// antipodal initial pairs. A grid maximum is a lower bound on the continuous
/// measure; refining the grid never lowers it.
NmResult nm_measure(const GridSpec& grid, const DensityOperator& aq_init,
                    const CollisionParams& params, int n_steps);

struct PhasePoint {
  double gamma = 0.0;
  double delta = 0.0;
  double nm = 0.0;
  Dynamics cls = Dynamics::Markovian;
};

/// nm_measure over a (gamma, delta) grid; all other parameters shared.
std::vector<PhasePoint> phase_diagram(const std::vector<double>& gammas,
                                      const std::vector<double>& deltas, const GridSpec& inner_grid,
                                      const DensityOperator& aq_init, const CollisionParams& params,
                                      int n_steps);

struct CoherencePoint {
  BlochPure pair;
  double nm = 0.0;
  Dynamics cls = Dynamics::Markovian;
};

/// Per-initial-pair classification at fixed coupling, with the auxiliary
/// qubit and the ancillas in coherent states (phases phi2 and phi1).
std::vector<CoherencePoint> coherence_diagram(const GridSpec& grid, const CollisionParams& params,
                                              int n_steps);

struct CorrelatedSeries {
  std::vector<double> series;  // n = 0..n_steps
  double bound = 0.0;          // D(initial, product of its marginals)
};

/// Distance between the system marginals of two trajectories: one started in
/// `initial`, one in the product of its marginals. Any growth witnesses the
/// initial correlations; every element is bounded by `bound`.
CorrelatedSeries correlated_distance_series(const DensityOperator& initial,
                                            const CollisionParams& params,
                                            const DensityOperator& ancilla, int n_steps);

/// Witness for correlated initial states: the accumulated backflow of the
/// distance between the correlated-trajectory marginal and a trajectory from
/// pure_system (x) Tr_S(initial), maximized over the full Bloch sphere
/// (grid.theta_max must be pi).
double appendix_witness(const DensityOperator& initial_classical, const GridSpec& grid,
                        const CollisionParams& params, int n_steps);

}  // namespace qcollide

#endif  // QCOLLIDE_NONMARKOV_HPP
