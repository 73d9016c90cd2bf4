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

#ifndef QCOLLIDE_MODEL_HPP
#define QCOLLIDE_MODEL_HPP

#include <utility>

#include "qcollide/qmat.hpp"

namespace qcollide {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double half_pi = pi / 2.0;

// Basis convention: |0> is the +1 eigenvector of sigma_z (excited, energy
// +omega/2), |1> is the ground state (-omega/2). Two-qubit basis ordering is
// {|00>, |01>, |10>, |11>} with the system as the first factor.

/// All physical knobs of the collision protocol. gamma couples the system to
/// the auxiliary qubit, delta couples the auxiliary qubit to each reservoir
/// ancilla; both are dimensionless angles (coupling constant times interaction
/// time, folded into a single parameter). p and phi1/phi2 parametrize the
/// coherence of ancillas and auxiliary qubit.
struct CollisionParams {
  double gamma = pi / 14.0;
  double delta = pi / 6.0;
  double temperature = 1.0;
  double omega_s = 1.0;
  double omega_e = 1.0;
  double p = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;

  void validate() const;
  bool operator==(const CollisionParams&) const = default;
};

/// Pure qubit state on the Bloch sphere: cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct BlochPure {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

/// Free qubit Hamiltonian omega sigma_z / 2 = diag(omega/2, -omega/2).
Eigen::Matrix2cd qubit_hamiltonian(double omega);

/// Two-qubit swap in the ordered basis {|00>, |01>, |10>, |11>}.
Eigen::Matrix4cd swap_gate();

/// Partial swap cos(angle) I + i sin(angle) S. Identity at angle = 0, full
/// swap (times i) at angle = pi/2. Unitary for every angle.
Eigen::Matrix4cd partial_swap(double angle);

/// Gibbs state exp(-H/T)/Z of the free qubit Hamiltonian.
DensityOperator thermal_state(double temperature, double omega);

/// Thermal state dressed with coherence: the diagonal equals the Gibbs
/// diagonal exactly, the (0,1) entry is p e^{-i phase} / Z. p = 0 recovers
/// the thermal state, p = 1 a pure state.
DensityOperator coherent_ancilla_state(const CollisionParams& params, double phase);

/// Pure entangled system-auxiliary state |psi> = xi|01> + sqrt(1-xi^2)|10>.
DensityOperator quantum_correlated_state(double xi);

/// Classically correlated mixture xi^2 |01><01| + (1-xi^2) |10><10|; same
/// marginals as quantum_correlated_state(xi) for every xi.
DensityOperator classical_correlated_state(double xi);

Eigen::Vector2cd bloch_ket(const BlochPure& b);

/// Antipodal pure pair: projectors onto cos(t/2)|0> + e^{i f} sin(t/2)|1> and
/// sin(t/2)|0> - e^{i f} cos(t/2)|1>. Mutual trace distance is always 1.
std::pair<DensityOperator, DensityOperator> orthogonal_pair(const BlochPure& b);

/// Ancilla state drawn each collision: coherent_ancilla_state with phase phi1.
DensityOperator ancilla_state(const CollisionParams& params);

/// Default auxiliary-qubit initial state: coherent_ancilla_state with phase phi2.
DensityOperator auxiliary_initial_state(const CollisionParams& params);

}  // namespace qcollide

#endif  // QCOLLIDE_MODEL_HPP
