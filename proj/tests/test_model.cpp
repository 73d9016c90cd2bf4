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

#include <cmath>
#include <random>

#include <doctest.h>

#include "qcollide/model.hpp"
#include "test_helpers.hpp"

using namespace qcollide;
using qtest::phase_invariant_distance;

TEST_CASE("qubit hamiltonian") {
  const Eigen::Matrix2cd h1 = qubit_hamiltonian(1.0);
  CHECK(h1(0, 0) == Complex(0.5));
  CHECK(h1(1, 1) == Complex(-0.5));
  const Eigen::Matrix2cd h2 = qubit_hamiltonian(2.0);
  CHECK(h2(0, 0) == Complex(1.0));
  CHECK(h2(1, 1) == Complex(-1.0));
  // Zero mean on the maximally mixed state.
  CHECK(std::abs((Matrix::Identity(2, 2) / 2.0 * h1).trace()) < 1e-15);
  CHECK_THROWS_AS((void)qubit_hamiltonian(0.0), ContractViolation);
}

TEST_CASE("partial swap endpoints") {
  CHECK(max_abs(partial_swap(0.0) - Eigen::Matrix4cd::Identity()) == 0.0);
  const Eigen::Matrix4cd full = partial_swap(half_pi);
  CHECK(max_abs(full - Complex(0.0, 1.0) * swap_gate()) < 1e-16);
}

TEST_CASE("partial swap is unitary and matches the exchange-exponential oracle") {
  const Matrix generator = qtest::heisenberg_generator();
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  for (int it = 0; it < 25; ++it) {
    const double g = angle(rng);
    const Matrix u = partial_swap(g);
    CHECK(max_abs(u.adjoint() * u - Matrix::Identity(4, 4)) <= 1e-12);
    // exp(i g/2 (XX+YY+ZZ)) equals the closed form times a global phase.
    const Matrix oracle = matrix_exp(Complex(0.0, g / 2.0) * generator);
    CHECK(phase_invariant_distance(u, oracle) <= 1e-10);
  }
}

TEST_CASE("partial swap commutes with the resonant free Hamiltonian") {
  const Matrix h_free = tensor(Matrix(qubit_hamiltonian(1.0)), Matrix::Identity(2, 2)) +
                        tensor(Matrix::Identity(2, 2), Matrix(qubit_hamiltonian(1.0)));
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> angle(0.0, half_pi);
  for (int it = 0; it < 10; ++it) {
    const Matrix u = partial_swap(angle(rng));
    CHECK(max_abs(u * h_free - h_free * u) <= 1e-12);
  }
}

TEST_CASE("partial swap fixes identical product factors") {
  std::mt19937 rng(23);
  const DensityOperator rho = qtest::random_density(2, rng);
  const Matrix joint = tensor(rho.matrix(), rho.matrix());
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  for (int it = 0; it < 8; ++it) {
    const Matrix u = partial_swap(angle(rng));
    CHECK(max_abs(u * joint * u.adjoint() - joint) <= 1e-14);
  }
}

TEST_CASE("thermal state populations") {
  const DensityOperator th = thermal_state(1.0, 1.0);
  CHECK(th.matrix()(0, 0).real() == doctest::Approx(0.268941).epsilon(1e-5));
  CHECK(th.matrix()(1, 1).real() == doctest::Approx(0.731059).epsilon(1e-5));
  CHECK(std::abs(th.matrix()(0, 1)) == 0.0);

  // Infinite-temperature and zero-temperature limits.
  const DensityOperator hot = thermal_state(1e9, 1.0);
  CHECK(hot.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-8));
  const DensityOperator cold = thermal_state(1e-3, 1.0);
  CHECK(cold.matrix()(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coherent ancilla state") {
  CollisionParams params;

  SUBCASE("p = 0 is exactly thermal") {
    params.p = 0.0;
    const DensityOperator got = coherent_ancilla_state(params, 0.7);
    CHECK(max_abs(got.matrix() - thermal_state(1.0, 1.0).matrix()) == 0.0);
  }

  SUBCASE("p = 1, phase 0 is pure with off-diagonal 1/Z") {
    params.p = 1.0;
    const DensityOperator got = coherent_ancilla_state(params, 0.0);
    const double z = std::exp(-0.5) + std::exp(0.5);
    CHECK(got.matrix()(0, 1).real() == doctest::Approx(1.0 / z).epsilon(1e-12));
    CHECK(1.0 / z == doctest::Approx(0.443409).epsilon(1e-5));
    const Matrix sq = got.matrix() * got.matrix();
    CHECK(sq.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("diagonal is p-independent, identical bit for bit") {
    const Matrix reference = thermal_state(1.0, 1.0).matrix();
    for (double p : {0.0, 0.3, 0.7, 1.0}) {
      params.p = p;
      const Matrix m = coherent_ancilla_state(params, 1.2).matrix();
      CHECK(m(0, 0) == reference(0, 0));
      CHECK(m(1, 1) == reference(1, 1));
    }
  }

  SUBCASE("off-diagonal carries p e^{-i phase} / Z") {
    params.p = 0.4;
    const double z = std::exp(-0.5) + std::exp(0.5);
    const double phase = 2.1;
    const Matrix m = coherent_ancilla_state(params, phase).matrix();
    CHECK(std::abs(m(0, 1) - 0.4 * std::exp(Complex(0.0, -phase)) / z) < 1e-15);
  }

  SUBCASE("all parameter combinations stay positive") {
    for (double p : {0.0, 0.5, 1.0})
      for (double phase : {0.0, 1.0, pi}) {
        params.p = p;
        CHECK_NOTHROW((void)DensityOperator::validated(
            coherent_ancilla_state(params, phase).matrix()));
      }
  }
}

TEST_CASE("correlated initial states") {
  SUBCASE("quantum state structure") {
    const DensityOperator rho = quantum_correlated_state(1.0);
    CHECK(max_abs(rho.matrix() - qtest::basis_projector(4, 1)) < 1e-15);

    const DensityOperator mid = quantum_correlated_state(0.855);
    const Matrix sq = mid.matrix() * mid.matrix();
    CHECK(sq.trace().real() == doctest::Approx(1.0).epsilon(1e-12));

    // The auxiliary marginal approximates the T = omega = 1 thermal state.
    const Matrix aq = partial_trace(mid.matrix(), {2, 2}, {1});
    CHECK(aq(0, 0).real() == doctest::Approx(0.268975).epsilon(1e-12));
    CHECK(max_abs(aq - thermal_state(1.0, 1.0).matrix()) < 1e-4);
  }

  SUBCASE("classical state structure") {
    const DensityOperator rho = classical_correlated_state(0.855);
    Matrix expected = Matrix::Zero(4, 4);
    expected(1, 1) = 0.731025;
    expected(2, 2) = 0.268975;
    CHECK(max_abs(rho.matrix() - expected) < 1e-15);
    CHECK(max_abs(classical_correlated_state(0.0).matrix() - qtest::basis_projector(4, 2)) <
          1e-15);
  }

  SUBCASE("quantum and classical marginals coincide for every xi") {
    for (double xi : {0.0, 0.3, 0.855, 1.0}) {
      const Matrix q = quantum_correlated_state(xi).matrix();
      const Matrix c = classical_correlated_state(xi).matrix();
      CHECK(max_abs(partial_trace(q, {2, 2}, {0}) - partial_trace(c, {2, 2}, {0})) < 1e-14);
      CHECK(max_abs(partial_trace(q, {2, 2}, {1}) - partial_trace(c, {2, 2}, {1})) < 1e-14);
    }
  }
}

TEST_CASE("orthogonal pairs") {
  const auto [z0, z1] = orthogonal_pair(BlochPure{0.0, 0.0});
  CHECK(max_abs(z0.matrix() - qtest::basis_projector(2, 0)) < 1e-15);
  CHECK(max_abs(z1.matrix() - qtest::basis_projector(2, 1)) < 1e-15);

  const auto [xp, xm] = orthogonal_pair(BlochPure{half_pi, 0.0});
  Matrix plus = Matrix::Constant(2, 2, Complex(0.5));
  CHECK(max_abs(xp.matrix() - plus) < 1e-14);
  Matrix minus = plus;
  minus(0, 1) = -0.5;
  minus(1, 0) = -0.5;
  CHECK(max_abs(xm.matrix() - minus) < 1e-14);

  std::mt19937 rng(24);
  std::uniform_real_distribution<double> theta(0.0, pi);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * pi);
  for (int it = 0; it < 20; ++it) {
    const auto [a, b] = orthogonal_pair(BlochPure{theta(rng), phi(rng)});
    CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("parameter validation") {
  CollisionParams params;
  params.gamma = 3.0;
  CHECK_THROWS_AS(params.validate(), ContractViolation);
  params = CollisionParams{};
  params.p = 1.5;
  CHECK_THROWS_AS(params.validate(), ContractViolation);
  params = CollisionParams{};
  params.temperature = 0.0;
  CHECK_THROWS_AS(params.validate(), ContractViolation);
  CHECK_THROWS_AS((void)quantum_correlated_state(1.0001), ContractViolation);
  CHECK_THROWS_AS((void)classical_correlated_state(-0.1), ContractViolation);
}
