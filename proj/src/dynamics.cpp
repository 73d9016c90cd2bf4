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

#include "qcollide/dynamics.hpp"

namespace qcollide {

namespace {

Eigen::Matrix2cd as_fixed2(const DensityOperator& rho, const char* who) {
  if (rho.dim() != 2) throw ContractViolation(std::string(who) + ": 2x2 state required");
  return rho.matrix();
}

}  // namespace

JointState::JointState(DensityOperator rho) : rho_saq(std::move(rho)) {
  if (rho_saq.dim() != 4) throw ContractViolation("JointState: dimension must be 4");
}

JointState product_state(const DensityOperator& system, const DensityOperator& auxiliary) {
  return JointState(DensityOperator(
      tensor2(as_fixed2(system, "product_state"), as_fixed2(auxiliary, "product_state"))));
}

CollisionMap::CollisionMap(double gamma, double delta) : u_(partial_swap(gamma)) {
  const Eigen::Matrix4cd v4 = partial_swap(delta);
  v_.setZero();
  v_.block<4, 4>(0, 0) = v4;  // I_S (x) V acts blockwise on the S index
  v_.block<4, 4>(4, 4) = v4;
}

Eigen::Matrix4cd CollisionMap::apply_u(const Eigen::Matrix4cd& rho_saq) const noexcept {
  return u_ * rho_saq * u_.adjoint();
}

Eigen::Matrix4cd CollisionMap::ancilla_exchange(const Eigen::Matrix4cd& post_u,
                                                const Eigen::Matrix2cd& ancilla) const noexcept {
  const Matrix8cd joint = v_ * tensor42(post_u, ancilla) * v_.adjoint();
  Eigen::Matrix4cd out;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j)
      out(i, j) = joint(2 * i, 2 * j) + joint(2 * i + 1, 2 * j + 1);
  return out;
}

Eigen::Matrix4cd CollisionMap::step(const Eigen::Matrix4cd& rho_saq,
                                    const Eigen::Matrix2cd& ancilla) const noexcept {
  return ancilla_exchange(apply_u(rho_saq), ancilla);
}

StepRecord collide(const JointState& state, const DensityOperator& ancilla,
                   const CollisionParams& params) {
  params.validate();
  const CollisionMap map(params);
  const Eigen::Matrix4cd post_u = map.apply_u(state.rho_saq.matrix());
  const Eigen::Matrix4cd next = map.ancilla_exchange(post_u, as_fixed2(ancilla, "collide"));
  return StepRecord{1, DensityOperator(post_u), DensityOperator(next),
                    DensityOperator(system_marginal(next)), DensityOperator(auxiliary_marginal(next))};
}

Trajectory run(const JointState& initial, const CollisionParams& params, int n_steps,
               const AncillaSource& ancillas) {
  params.validate();
  if (n_steps < 1) throw ContractViolation("run: n_steps must be >= 1");

  const CollisionMap map(params);
  Trajectory traj{params, initial, {}};
  traj.steps.reserve(static_cast<std::size_t>(n_steps));

  Eigen::Matrix4cd rho = initial.rho_saq.matrix();
  for (int n = 1; n <= n_steps; ++n) {
    const Eigen::Matrix2cd ancilla = as_fixed2(ancillas(n), "run");
    const Eigen::Matrix4cd post_u = map.apply_u(rho);
    rho = map.ancilla_exchange(post_u, ancilla);
    traj.steps.push_back(StepRecord{n, DensityOperator(post_u), DensityOperator(rho),
                                    DensityOperator(system_marginal(rho)),
                                    DensityOperator(auxiliary_marginal(rho))});
  }
  return traj;
}

Trajectory run(const JointState& initial, const CollisionParams& params, int n_steps,
               const DensityOperator& ancilla) {
  as_fixed2(ancilla, "run");
  return run(initial, params, n_steps, [&](int) { return ancilla; });
}

}  // namespace qcollide
