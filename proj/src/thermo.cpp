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

#include "qcollide/thermo.hpp"

#include <cmath>
#include <tuple>

namespace qcollide {

namespace {

void require_dim(const DensityOperator& rho, Eigen::Index d, const char* who) {
  if (rho.dim() != d)
    throw ContractViolation(std::string(who) + ": wrong state dimension");
}

}  // namespace

double heat(const DensityOperator& rho_aq_pre, const DensityOperator& rho_aq_post_u, double omega) {
  require_dim(rho_aq_pre, 2, "heat");
  require_dim(rho_aq_post_u, 2, "heat");
  const Eigen::Matrix2cd h = qubit_hamiltonian(omega);
  return ((rho_aq_pre.matrix() - rho_aq_post_u.matrix()) * h).trace().real();
}

std::pair<double, double> heat_split(const DensityOperator& rho_saq_pre, double gamma,
                                     double omega) {
  require_dim(rho_saq_pre, 4, "heat_split");
  if (!(omega > 0.0)) throw ContractViolation("heat_split: omega must be positive");
  const Matrix& rho = rho_saq_pre.matrix();
  const double s = std::sin(gamma);
  const double dia = omega * s * s * (rho(2, 2).real() - rho(1, 1).real());
  const double coh = omega * rho(1, 2).imag() * std::sin(2.0 * gamma);
  return {dia, coh};
}

double beta_of(const DensityOperator& rho_aq, double omega) {
  require_dim(rho_aq, 2, "beta_of");
  if (!(omega > 0.0)) throw ContractViolation("beta_of: omega must be positive");
  const Matrix& m = rho_aq.matrix();
  if (std::abs(m(0, 1)) > thermal_form_tol)
    throw PremiseViolation("beta_of: state is not diagonal (no Gibbs form)");
  const double excited = m(0, 0).real();
  const double ground = m(1, 1).real();
  if (!(excited > 0.0 && excited < 1.0 && ground > 0.0 && ground < 1.0))
    throw PremiseViolation("beta_of: populations must lie strictly in (0, 1)");
  if (ground == excited)
    throw PremiseViolation("beta_of: equal populations (infinite-temperature boundary)");
  if (ground < excited)
    throw PremiseViolation("beta_of: population inversion (no positive temperature)");
  return std::log(ground / excited) / omega;
}

double mutual_information(const DensityOperator& rho_saq) {
  require_dim(rho_saq, 4, "mutual_information");
  const Eigen::Matrix4cd rho = rho_saq.matrix();
  const double value = von_neumann_entropy(Matrix(system_marginal(rho))) +
                       von_neumann_entropy(Matrix(auxiliary_marginal(rho))) -
                       von_neumann_entropy(rho_saq.matrix());
  if (value < -1e-10)
    throw ContractViolation("mutual_information: negative beyond tolerance");
  return std::max(value, 0.0);
}

ThermoRecord entropy_change(const StepRecord& record, const DensityOperator& prev_joint,
                            double omega, double gamma) {
  require_dim(prev_joint, 4, "entropy_change");
  const Eigen::Matrix4cd pre = prev_joint.matrix();
  const Eigen::Matrix4cd post_u = record.rho_saq_post_u.matrix();

  const DensityOperator aq_pre{Matrix(auxiliary_marginal(pre))};
  const double beta = beta_of(aq_pre, omega);  // enforces the thermal-form premise

  // Gibbs reference with the populations of rho_AQ; off-diagonals (already
  // gated to < 1e-10) dropped so the reference is exactly diagonal.
  Matrix gibbs = Matrix::Zero(2, 2);
  gibbs(0, 0) = aq_pre.matrix()(0, 0).real();
  gibbs(1, 1) = aq_pre.matrix()(1, 1).real();

  const Matrix s_pre = system_marginal(pre);
  const Matrix s_post = system_marginal(post_u);
  const DensityOperator aq_post{Matrix(auxiliary_marginal(post_u))};

  ThermoRecord out;
  out.step_index = record.step_index;
  out.beta_aq = beta;
  out.delta_s = von_neumann_entropy(s_post) - von_neumann_entropy(s_pre);
  out.rel_entropy_term = relative_entropy(Matrix(post_u), tensor(s_post, gibbs));
  out.heat = heat(aq_pre, aq_post, omega);
  std::tie(out.heat_dia, out.heat_coh) = heat_split(prev_joint, gamma, omega);
  out.mutual_info = mutual_information(prev_joint);

  const double decomposed = out.rel_entropy_term + beta * out.heat - out.mutual_info;
  if (std::abs(out.delta_s - decomposed) > 1e-8)
    throw ContractViolation("entropy_change: decomposition identity violated beyond 1e-8");
  return out;
}

std::vector<ThermoRecord> thermo_series(const Trajectory& trajectory) {
  const CollisionParams& p = trajectory.params;
  if (std::abs(p.omega_s - p.omega_e) > 1e-12)
    throw PremiseViolation("thermo_series: resonance omega_s = omega_e required");

  std::vector<ThermoRecord> out;
  out.reserve(trajectory.steps.size());
  const DensityOperator* prev = &trajectory.initial.rho_saq;
  for (const StepRecord& record : trajectory.steps) {
    out.push_back(entropy_change(record, *prev, p.omega_s, p.gamma));
    prev = &record.rho_saq;
  }
  return out;
}

AlignmentReport alignment_report(const Trajectory& heat_trajectory, const Trajectory& partner) {
  if (!(heat_trajectory.params == partner.params))
    throw ContractViolation("alignment_report: trajectories must share parameters");
  if (heat_trajectory.steps.size() != partner.steps.size())
    throw ContractViolation("alignment_report: trajectories must share length");

  const double omega = heat_trajectory.params.omega_e;
  const Eigen::Matrix2cd h = qubit_hamiltonian(omega);

  AlignmentReport report;
  report.rows.reserve(heat_trajectory.steps.size());

  Matrix aq_pre = auxiliary_marginal(Eigen::Matrix4cd(heat_trajectory.initial.rho_saq.matrix()));
  double prev_distance = trace_distance(
      Matrix(system_marginal(heat_trajectory.initial.rho_saq.matrix())),
      Matrix(system_marginal(partner.initial.rho_saq.matrix())));

  int agree = 0, disagree = 0;
  for (std::size_t i = 0; i < heat_trajectory.steps.size(); ++i) {
    const StepRecord& a = heat_trajectory.steps[i];
    const StepRecord& b = partner.steps[i];
    const Matrix aq_post = auxiliary_marginal(Eigen::Matrix4cd(a.rho_saq_post_u.matrix()));
    const double q = ((aq_pre - aq_post) * h).trace().real();
    const double d = trace_distance(a.rho_s, b.rho_s);
    const double dd = d - prev_distance;
    report.rows.push_back(AlignmentRow{a.step_index, q, dd});
    if (std::abs(q) > 1e-9 && std::abs(dd) > 1e-9) {
      if ((q > 0.0) == (dd > 0.0))
        ++agree;
      else
        ++disagree;
    }
    prev_distance = d;
    aq_pre = auxiliary_marginal(Eigen::Matrix4cd(a.rho_saq.matrix()));
  }

  report.gated_steps = agree + disagree;
  if (report.gated_steps > 0)
    report.sign_consistency =
        static_cast<double>(std::max(agree, disagree)) / report.gated_steps;
  return report;
}

}  // namespace qcollide
