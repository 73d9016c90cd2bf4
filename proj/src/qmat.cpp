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

#include "qcollide/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace qcollide {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw ContractViolation(std::string(who) + ": square matrix required");
  if (!m.allFinite())
    throw ContractViolation(std::string(who) + ": non-finite entries");
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ContractViolation(std::string(who) + ": dimension mismatch");
}

// Eigenvalues of a Hermitian matrix, ascending; input symmetrized to kill
// rounding-level asymmetry before the solver.
RealVector herm_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint()) / 2.0,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double clamped_entropy(const RealVector& eigs, const char* who) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    double l = eigs(i);
    if (l < positivity_floor)
      throw ContractViolation(std::string(who) + ": eigenvalue below positivity floor");
    l = std::clamp(l, 0.0, 1.0);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

}  // namespace

DensityOperator::DensityOperator(Matrix m) : m_(std::move(m)) {
  require_square(m_, "DensityOperator");
  if (!is_hermitian(m_))
    throw ContractViolation("DensityOperator: not Hermitian within 1e-12");
  if (std::abs(m_.trace() - Complex(1.0, 0.0)) > trace_tol)
    throw ContractViolation("DensityOperator: trace differs from 1 beyond 1e-12");
}

DensityOperator DensityOperator::validated(Matrix m) {
  DensityOperator rho(std::move(m));
  const RealVector eigs = herm_eigenvalues(rho.m_);
  if (eigs(0) < positivity_floor)
    throw ContractViolation("DensityOperator: eigenvalue below -1e-10");
  return rho;
}

Matrix partial_trace(const Matrix& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<Eigen::Index>& keep) {
  require_square(m, "partial_trace");
  Eigen::Index total = 1;
  for (Eigen::Index d : dims) {
    if (d < 1) throw ContractViolation("partial_trace: subsystem dimension < 1");
    total *= d;
  }
  if (total != m.rows())
    throw ContractViolation("partial_trace: product of dims does not match matrix dimension");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= static_cast<Eigen::Index>(dims.size()))
      throw ContractViolation("partial_trace: keep index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw ContractViolation("partial_trace: keep indices must be strictly increasing");
  }

  const auto n = static_cast<Eigen::Index>(dims.size());
  std::vector<Eigen::Index> strides(dims.size());
  Eigen::Index acc = 1;
  for (Eigen::Index s = n - 1; s >= 0; --s) {
    strides[s] = acc;
    acc *= dims[s];
  }

  std::vector<Eigen::Index> traced;
  for (Eigen::Index s = 0; s < n; ++s)
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) traced.push_back(s);

  Eigen::Index kept_dim = 1;
  for (Eigen::Index s : keep) kept_dim *= dims[s];
  Eigen::Index traced_dim = 1;
  for (Eigen::Index s : traced) traced_dim *= dims[s];

  // Flat index of a (kept multi-index, traced multi-index) pair.
  auto flat = [&](Eigen::Index kept_flat, Eigen::Index traced_flat) {
    Eigen::Index idx = 0;
    for (auto it = keep.rbegin(); it != keep.rend(); ++it) {
      idx += (kept_flat % dims[*it]) * strides[*it];
      kept_flat /= dims[*it];
    }
    for (auto it = traced.rbegin(); it != traced.rend(); ++it) {
      idx += (traced_flat % dims[*it]) * strides[*it];
      traced_flat /= dims[*it];
    }
    return idx;
  };

  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (Eigen::Index r = 0; r < kept_dim; ++r)
    for (Eigen::Index c = 0; c < kept_dim; ++c)
      for (Eigen::Index t = 0; t < traced_dim; ++t)
        out(r, c) += m(flat(r, t), flat(c, t));
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<Eigen::Index>& dims,
                              const std::vector<Eigen::Index>& keep) {
  return DensityOperator(partial_trace(rho.matrix(), dims, keep));
}

Eigensystem eig_hermitian(const Matrix& m) {
  require_square(m, "eig_hermitian");
  if (!is_hermitian(m))
    throw ContractViolation("eig_hermitian: input not Hermitian within 1e-12");
  Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw ContractViolation("eig_hermitian: solver failed to converge");
  return Eigensystem{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix matrix_exp(const Matrix& m) {
  require_square(m, "matrix_exp");
  const Eigen::Index d = m.rows();

  // Scale until the 1-norm is small, expand the series, square back up.
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm1 * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }

  const Matrix a = m * scale;
  Matrix result = Matrix::Identity(d, d);
  Matrix term = Matrix::Identity(d, d);
  for (int k = 1; k <= 64; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
    if (max_abs(term) <= std::numeric_limits<double>::epsilon() * max_abs(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

double trace_distance(const Matrix& r1, const Matrix& r2) {
  require_same_dim(r1, r2, "trace_distance");
  require_square(r1, "trace_distance");
  const RealVector eigs = herm_eigenvalues(r1 - r2);
  return 0.5 * eigs.cwiseAbs().sum();
}

double trace_distance(const DensityOperator& r1, const DensityOperator& r2) {
  return trace_distance(r1.matrix(), r2.matrix());
}

double von_neumann_entropy(const Matrix& rho) {
  require_square(rho, "von_neumann_entropy");
  return clamped_entropy(herm_eigenvalues(rho), "von_neumann_entropy");
}

double von_neumann_entropy(const DensityOperator& rho) {
  return von_neumann_entropy(rho.matrix());
}

double relative_entropy(const Matrix& r1, const Matrix& r2) {
  require_same_dim(r1, r2, "relative_entropy");
  require_square(r1, "relative_entropy");

  double tr1 = 0.0;  // Tr(r1 ln r1)
  {
    const RealVector eigs = herm_eigenvalues(r1);
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
      double l = eigs(i);
      if (l < positivity_floor)
        throw ContractViolation("relative_entropy: first argument not positive");
      l = std::clamp(l, 0.0, 1.0);
      if (l > 0.0) tr1 += l * std::log(l);
    }
  }

  const Eigensystem es2 = eig_hermitian(r2);
  double tr2 = 0.0;  // Tr(r1 ln r2)
  for (Eigen::Index j = 0; j < es2.values.size(); ++j) {
    const Vector v = es2.vectors.col(j);
    const double weight = std::real(Complex(v.adjoint() * r1 * v));
    if (es2.values(j) < support_eval_tol) {
      if (weight > support_weight_tol) return std::numeric_limits<double>::infinity();
      continue;  // negligible weight on a null direction
    }
    tr2 += weight * std::log(es2.values(j));
  }

  const double result = tr1 - tr2;
  if (result < -1e-10)
    throw ContractViolation("relative_entropy: Klein inequality violated numerically");
  return std::max(result, 0.0);
}

double relative_entropy(const DensityOperator& r1, const DensityOperator& r2) {
  return relative_entropy(r1.matrix(), r2.matrix());
}

}  // namespace qcollide
