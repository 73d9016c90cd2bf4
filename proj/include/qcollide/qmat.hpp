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

#ifndef QCOLLIDE_QMAT_HPP
#define QCOLLIDE_QMAT_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qcollide {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numeric gates shared across the library.
inline constexpr double hermitian_tol = 1e-12;
inline constexpr double trace_tol = 1e-12;
inline constexpr double positivity_floor = -1e-10;
inline constexpr double support_eval_tol = 1e-14;
inline constexpr double support_weight_tol = 1e-12;

/// Violation of a numeric precondition or type invariant.
struct ContractViolation : std::runtime_error {
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

/// A formula was evaluated outside the regime in which it is derived
/// (e.g. the entropy decomposition without a thermal-form auxiliary state).
struct PremiseViolation : ContractViolation {
  explicit PremiseViolation(const std::string& what) : ContractViolation(what) {}
};

/// Largest entrywise magnitude; the norm used by all tolerance gates here.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.derived().cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = hermitian_tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.derived() - m.derived().adjoint().eval()) <= tol;
}

/// Kronecker product with index convention (i_a, i_b) -> i_a * dim_b + i_b,
/// i.e. the first factor owns the most significant digit of the joint index.
template <typename DerivedA, typename DerivedB>
Matrix tensor(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Complex(a(i, j)) * b.derived().template cast<Complex>();
  return out;
}

/// Hermitian, positive (up to the numeric floor), unit-trace matrix.
/// The universal state carrier; dimensions 2, 4 and 8 in this library.
class DensityOperator {
 public:
  /// Checks Hermiticity and unit trace. Positivity is assumed from the
  /// construction site (unitary conjugation, convex mixing); use validated()
  /// when the provenance of the matrix is unknown.
  explicit DensityOperator(Matrix m);

  /// Full invariant check including the eigenvalue floor.
  static DensityOperator validated(Matrix m);

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

/// Reduced matrix over the kept subsystems; `dims` are the tensor factor
/// dimensions in order, `keep` the (strictly increasing) factor indices to
/// retain. Ordering of the kept factors is preserved.
Matrix partial_trace(const Matrix& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<Eigen::Index>& keep);

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<Eigen::Index>& dims,
                              const std::vector<Eigen::Index>& keep);

struct Eigensystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns, matching order
};

/// Spectral decomposition of a Hermitian matrix. Throws ContractViolation on
/// non-Hermitian input; the reconstruction V diag(w) V^dag matches the input
/// to ~1e-14 for the dimensions used here.
Eigensystem eig_hermitian(const Matrix& m);

/// Matrix exponential by scaling-and-squaring of the Taylor series.
Matrix matrix_exp(const Matrix& m);

/// Trace distance (1/2)Tr|r1 - r2| from the Hermitian eigenvalues of the
/// difference. Symmetric, in [0, 1] for density operators.
double trace_distance(const DensityOperator& r1, const DensityOperator& r2);
double trace_distance(const Matrix& r1, const Matrix& r2);

/// -Tr(rho ln rho) with eigenvalues clamped to [0, 1]; 0 ln 0 := 0.
/// Eigenvalues below the positivity floor are contract violations.
double von_neumann_entropy(const DensityOperator& rho);
double von_neumann_entropy(const Matrix& rho);

/// Tr(r1 ln r1) - Tr(r1 ln r2). Returns +infinity when r1 has weight above
/// 1e-12 outside the support of r2 (r2 eigenvalue below 1e-14).
double relative_entropy(const DensityOperator& r1, const DensityOperator& r2);
double relative_entropy(const Matrix& r1, const Matrix& r2);

}  // namespace qcollide

#endif  // QCOLLIDE_QMAT_HPP
