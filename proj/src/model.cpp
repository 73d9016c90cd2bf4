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

#include "qcollide/model.hpp"

#include <cmath>

namespace qcollide {

void CollisionParams::validate() const {
  if (!(gamma >= 0.0 && gamma <= half_pi))
    throw ContractViolation("CollisionParams: gamma outside [0, pi/2]");
  if (!(delta >= 0.0 && delta <= half_pi))
    throw ContractViolation("CollisionParams: delta outside [0, pi/2]");
  if (!(temperature > 0.0))
    throw ContractViolation("CollisionParams: temperature must be positive");
  if (!(omega_s > 0.0) || !(omega_e > 0.0))
    throw ContractViolation("CollisionParams: frequencies must be positive");
  if (!(p >= 0.0 && p <= 1.0))
    throw ContractViolation("CollisionParams: p outside [0, 1]");
  if (!std::isfinite(phi1) || !std::isfinite(phi2))
    throw ContractViolation("CollisionParams: non-finite phase");
}

Eigen::Matrix2cd qubit_hamiltonian(double omega) {
  if (!(omega > 0.0)) throw ContractViolation("qubit_hamiltonian: omega must be positive");
  Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
  h(0, 0) = omega / 2.0;
  h(1, 1) = -omega / 2.0;
  return h;
}

Eigen::Matrix4cd swap_gate() {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

Eigen::Matrix4cd partial_swap(double angle) {
  return std::cos(angle) * Eigen::Matrix4cd::Identity() +
         Complex(0.0, std::sin(angle)) * swap_gate();
}

DensityOperator thermal_state(double temperature, double omega) {
  if (!(temperature > 0.0)) throw ContractViolation("thermal_state: temperature must be positive");
  if (!(omega > 0.0)) throw ContractViolation("thermal_state: omega must be positive");
  const double beta = 1.0 / temperature;
  const double z = std::exp(-beta * omega / 2.0) + std::exp(beta * omega / 2.0);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(-beta * omega / 2.0) / z;  // excited |0>
  m(1, 1) = std::exp(beta * omega / 2.0) / z;   // ground |1>
  return DensityOperator(std::move(m));
}

DensityOperator coherent_ancilla_state(const CollisionParams& params, double phase) {
  params.validate();
  const double beta = 1.0 / params.temperature;
  const double z = std::exp(-beta * params.omega_e / 2.0) + std::exp(beta * params.omega_e / 2.0);
  // Diagonal taken verbatim from the thermal state so it is p-independent by
  // construction; only the off-diagonal carries the coherence.
  Matrix m = thermal_state(params.temperature, params.omega_e).matrix();
  m(0, 1) = params.p * std::exp(Complex(0.0, -phase)) / z;
  m(1, 0) = std::conj(m(0, 1));
  return DensityOperator(std::move(m));
}

DensityOperator quantum_correlated_state(double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw ContractViolation("quantum_correlated_state: xi outside [0, 1]");
  const double c = std::sqrt(1.0 - xi * xi);
  Vector psi = Vector::Zero(4);
  psi(1) = xi;  // |01>
  psi(2) = c;   // |10>
  return DensityOperator(psi * psi.adjoint());
}

DensityOperator classical_correlated_state(double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw ContractViolation("classical_correlated_state: xi outside [0, 1]");
  Matrix m = Matrix::Zero(4, 4);
  m(1, 1) = xi * xi;
  m(2, 2) = 1.0 - xi * xi;
  return DensityOperator(std::move(m));
}

Eigen::Vector2cd bloch_ket(const BlochPure& b) {
  Eigen::Vector2cd v;
  v(0) = std::cos(b.theta / 2.0);
  v(1) = std::exp(Complex(0.0, b.phi)) * std::sin(b.theta / 2.0);
  return v;
}

std::pair<DensityOperator, DensityOperator> orthogonal_pair(const BlochPure& b) {
  const Eigen::Vector2cd plus = bloch_ket(b);
  Eigen::Vector2cd minus;
  minus(0) = std::sin(b.theta / 2.0);
  minus(1) = -std::exp(Complex(0.0, b.phi)) * std::cos(b.theta / 2.0);
  return {DensityOperator(plus * plus.adjoint()), DensityOperator(minus * minus.adjoint())};
}

DensityOperator ancilla_state(const CollisionParams& params) {
  return coherent_ancilla_state(params, params.phi1);
}

DensityOperator auxiliary_initial_state(const CollisionParams& params) {
  return coherent_ancilla_state(params, params.phi2);
}

}  // namespace qcollide
