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

#ifndef QCOLLIDE_DYNAMICS_HPP
#define QCOLLIDE_DYNAMICS_HPP

#include <functional>
#include <vector>

#include "qcollide/model.hpp"
#include "qcollide/qmat.hpp"

namespace qcollide {

using Matrix8cd = Eigen::Matrix<Complex, 8, 8>;

// Fixed-size Kronecker products for the hot path; same index convention as
// qcollide::tensor.
inline Eigen::Matrix4cd tensor2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) noexcept {
  Eigen::Matrix4cd out;
  out.block<2, 2>(0, 0) = a(0, 0) * b;
  out.block<2, 2>(0, 2) = a(0, 1) * b;
  out.block<2, 2>(2, 0) = a(1, 0) * b;
  out.block<2, 2>(2, 2) = a(1, 1) * b;
  return out;
}

inline Matrix8cd tensor42(const Eigen::Matrix4cd& a, const Eigen::Matrix2cd& b) noexcept {
  Matrix8cd out;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// rho_S from a joint S-A_Q state (trace over the second factor).
inline Eigen::Matrix2cd system_marginal(const Eigen::Matrix4cd& rho) noexcept {
  Eigen::Matrix2cd out;
  out(0, 0) = rho(0, 0) + rho(1, 1);
  out(0, 1) = rho(0, 2) + rho(1, 3);
  out(1, 0) = rho(2, 0) + rho(3, 1);
  out(1, 1) = rho(2, 2) + rho(3, 3);
  return out;
}

/// rho_AQ from a joint S-A_Q state (trace over the first factor).
inline Eigen::Matrix2cd auxiliary_marginal(const Eigen::Matrix4cd& rho) noexcept {
  Eigen::Matrix2cd out;
  out(0, 0) = rho(0, 0) + rho(2, 2);
  out(0, 1) = rho(0, 1) + rho(2, 3);
  out(1, 0) = rho(1, 0) + rho(3, 2);
  out(1, 1) = rho(1, 1) + rho(3, 3);
  return out;
}

/// Joint system-auxiliary density operator, the memory threaded between
/// collisions. Always 4x4 over {|00>, |01>, |10>, |11>} with S first.
struct JointState {
  explicit JointState(DensityOperator rho);
  DensityOperator rho_saq;
};

JointState product_state(const DensityOperator& system, const DensityOperator& auxiliary);

/// One collision's bookkeeping. rho_saq_post_u is the intermediate after the
/// S-A_Q unitary and before the A_Q-ancilla exchange; the thermodynamic
/// quantities of a step are defined on it.
struct StepRecord {
  int step_index = 0;                // 1-based
  DensityOperator rho_saq_post_u;    // 4x4, after U(gamma)
  DensityOperator rho_saq;           // 4x4, after V(delta) and ancilla trace-out
  DensityOperator rho_s;             // 2x2 marginal of rho_saq
  DensityOperator rho_aq;            // 2x2 marginal of rho_saq
};

struct Trajectory {
  CollisionParams params;
  JointState initial;
  std::vector<StepRecord> steps;
};

/// Precomputed collision unitaries. step() implements one full collision:
///   rho -> Tr_R[ V (U rho U^dag (x) ancilla) V^dag ]
/// with U = partial_swap(gamma) on (S, A_Q) and V = I (x) partial_swap(delta)
/// on (A_Q, R). The ancilla is refreshed by the caller each step.
class CollisionMap {
 public:
  CollisionMap(double gamma, double delta);
  explicit CollisionMap(const CollisionParams& params)
      : CollisionMap(params.gamma, params.delta) {}

  Eigen::Matrix4cd apply_u(const Eigen::Matrix4cd& rho_saq) const noexcept;
  Eigen::Matrix4cd ancilla_exchange(const Eigen::Matrix4cd& post_u,
                                    const Eigen::Matrix2cd& ancilla) const noexcept;
  Eigen::Matrix4cd step(const Eigen::Matrix4cd& rho_saq,
                        const Eigen::Matrix2cd& ancilla) const noexcept;

  const Eigen::Matrix4cd& u() const noexcept { return u_; }
  const Matrix8cd& v() const noexcept { return v_; }

 private:
  Eigen::Matrix4cd u_;
  Matrix8cd v_;
};

using AncillaSource = std::function<DensityOperator(int step_index)>;

/// One collision with full records; inputs validated.
StepRecord collide(const JointState& state, const DensityOperator& ancilla,
                   const CollisionParams& params);

/// n_steps collisions, each consuming a fresh ancilla from the source
/// (queried with step indices 1..n_steps).
Trajectory run(const JointState& initial, const CollisionParams& params, int n_steps,
               const AncillaSource& ancillas);

/// Identically prepared ancilla stream (the case of every experiment here).
Trajectory run(const JointState& initial, const CollisionParams& params, int n_steps,
               const DensityOperator& ancilla);

}  // namespace qcollide

#endif  // QCOLLIDE_DYNAMICS_HPP
