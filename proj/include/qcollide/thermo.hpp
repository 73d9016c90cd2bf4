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

#ifndef QCOLLIDE_THERMO_HPP
#define QCOLLIDE_THERMO_HPP

#include <utility>
#include <vector>

#include "qcollide/dynamics.hpp"

namespace qcollide {

// Off-diagonal gate for the thermal-form premise on rho_AQ.
inline constexpr double thermal_form_tol = 1e-10;

/// Per-collision thermodynamic bookkeeping. The decomposition identity
///   delta_s = rel_entropy_term + beta_aq * heat - mutual_info
/// holds within 1e-8; delta_s is additionally computed directly from the
/// entropies so the two routes check each other.
struct ThermoRecord {
  int step_index = 0;
  double delta_s = 0.0;           // S(rho_S after U) - S(rho_S before)
  double rel_entropy_term = 0.0;  // D(post_u || rho_S_post (x) gibbs(beta_aq))
  double beta_aq = 0.0;           // inverse temperature of the pre-collision rho_AQ
  double heat = 0.0;              // energy lost by A_Q across U; > 0 flows A_Q -> S
  double heat_dia = 0.0;          // population contribution
  double heat_coh = 0.0;          // coherence contribution
  double mutual_info = 0.0;       // I(rho_SAQ before the collision)
};

/// Heat transferred from the auxiliary qubit during one collision:
/// Tr[(pre - post) H_AQ], evaluated across the S-A_Q unitary.
double heat(const DensityOperator& rho_aq_pre, const DensityOperator& rho_aq_post_u, double omega);

/// Split of the heat into the population part omega sin^2(gamma)(rho_33 - rho_22)
/// and the coherence part omega Im(rho_23) sin(2 gamma) of the pre-collision
/// joint state (1-based indices in the ordered two-qubit basis). Their sum
/// equals heat() across the same collision.
std::pair<double, double> heat_split(const DensityOperator& rho_saq_pre, double gamma,
                                     double omega);

/// Inverse temperature of a diagonal, non-inverted qubit state:
/// ln(p_ground / p_excited) / omega. Coherent, degenerate or inverted
/// populations are rejected (no positive-temperature Gibbs form).
double beta_of(const DensityOperator& rho_aq, double omega);

/// S(rho_S) + S(rho_AQ) - S(rho_SAQ), nonnegative.
double mutual_information(const DensityOperator& rho_saq);

/// Full record for one collision: `record` carries the post-U state,
/// `prev_joint` the joint state before the collision. Requires the
/// thermal-form premise on the pre-collision rho_AQ.
ThermoRecord entropy_change(const StepRecord& record, const DensityOperator& prev_joint,
                            double omega, double gamma);

/// entropy_change along a whole trajectory; requires resonance
/// (omega_s = omega_e).
std::vector<ThermoRecord> thermo_series(const Trajectory& trajectory);

struct AlignmentRow {
  int step_index = 0;
  double heat = 0.0;
  double delta_distance = 0.0;
};

/// Per-step heat (from the designated trajectory) next to the change of the
/// pair's trace distance, plus the fraction of gated steps (both magnitudes
/// above 1e-9) on which the two signs keep a fixed relation. 1.0 when no
/// step passes the gate.
struct AlignmentReport {
  std::vector<AlignmentRow> rows;
  double sign_consistency = 1.0;
  int gated_steps = 0;
};

AlignmentReport alignment_report(const Trajectory& heat_trajectory, const Trajectory& partner);

}  // namespace qcollide

#endif  // QCOLLIDE_THERMO_HPP
