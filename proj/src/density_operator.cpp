// Copyright 2026 The qsdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsdc/density_operator.hpp"

#include <cmath>
#include <stdexcept>

#include "qsdc/spectral.hpp"

namespace qsdc {

namespace {

double hermitian_deviation(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

DensityOperator::DensityOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw std::invalid_argument("DensityOperator: matrix must be square and nonempty");
  }
  if (hermitian_deviation(m_) > kHermitianTol) {
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  }
  const double tr = m_.trace().real();
  if (tr < -kTraceTol || tr > 1.0 + kTraceTol) {
    throw std::invalid_argument("DensityOperator: trace outside [0, 1]");
  }
}

DensityOperator DensityOperator::pure(const CVector& amplitudes) {
  const double norm = amplitudes.norm();
  if (norm <= 0.0) throw std::invalid_argument("DensityOperator: zero amplitude vector");
  const CVector psi = amplitudes / norm;
  return DensityOperator(psi * psi.adjoint());
}

DensityOperator DensityOperator::diagonal(const Eigen::VectorXd& weights) {
  Matrix m = Matrix::Zero(weights.size(), weights.size());
  for (Eigen::Index i = 0; i < weights.size(); ++i) m(i, i) = weights(i);
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

bool DensityOperator::is_normalized(double tol) const {
  return std::abs(trace() - 1.0) <= tol;
}

void DensityOperator::validate() const {
  if (hermitian_deviation(m_) > kHermitianTol) {
    throw std::invalid_argument("DensityOperator: Hermiticity violated");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPsdTol) {
    throw std::invalid_argument("DensityOperator: negative eigenvalue");
  }
  const double tr = trace();
  if (tr < -kTraceTol || tr > 1.0 + kTraceTol) {
    throw std::invalid_argument("DensityOperator: trace outside [0, 1]");
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(kron(a.matrix(), b.matrix()));
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& dims,
                              const std::vector<int>& keep) {
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("partial_trace: nonpositive dimension");
    total *= d;
  }
  if (total != rho.dim()) {
    throw std::invalid_argument("partial_trace: dims do not factor the operator");
  }
  const int m = static_cast<int>(dims.size());
  std::vector<bool> kept(m, false);
  for (int idx : keep) {
    if (idx < 0 || idx >= m) throw std::invalid_argument("partial_trace: keep index out of range");
    kept[idx] = true;
  }

  // Strides of each subsystem in the flattened index (first factor is the
  // most significant).
  std::vector<long> stride(m, 1);
  for (int s = m - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  long keep_dim = 1, trace_dim = 1;
  std::vector<int> keep_order;  // original relative order
  std::vector<int> traced;
  for (int s = 0; s < m; ++s) {
    if (kept[s]) {
      keep_dim *= dims[s];
      keep_order.push_back(s);
    } else {
      trace_dim *= dims[s];
      traced.push_back(s);
    }
  }

  auto flat_index = [&](const std::vector<int>& keep_digits, const std::vector<int>& trace_digits) {
    long idx = 0;
    for (std::size_t a = 0; a < keep_order.size(); ++a) idx += stride[keep_order[a]] * keep_digits[a];
    for (std::size_t a = 0; a < traced.size(); ++a) idx += stride[traced[a]] * trace_digits[a];
    return idx;
  };
  auto unrank = [](long value, const std::vector<int>& subsystem_dims, const std::vector<int>& order) {
    std::vector<int> digits(order.size(), 0);
    for (int a = static_cast<int>(order.size()) - 1; a >= 0; --a) {
      digits[a] = static_cast<int>(value % subsystem_dims[order[a]]);
      value /= subsystem_dims[order[a]];
    }
    return digits;
  };

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (long r = 0; r < keep_dim; ++r) {
    const auto row_digits = unrank(r, dims, keep_order);
    for (long c = 0; c < keep_dim; ++c) {
      const auto col_digits = unrank(c, dims, keep_order);
      Complex sum = 0.0;
      for (long t = 0; t < trace_dim; ++t) {
        const auto t_digits = unrank(t, dims, traced);
        sum += rho.matrix()(flat_index(row_digits, t_digits), flat_index(col_digits, t_digits));
      }
      out(r, c) = sum;
    }
  }
  return DensityOperator(std::move(out));
}

DensityOperator conjugate(const Matrix& unitary, const DensityOperator& rho) {
  if (unitary.rows() != rho.dim() || unitary.cols() != rho.dim()) {
    throw std::invalid_argument("conjugate: dimension mismatch");
  }
  return DensityOperator(unitary * rho.matrix() * unitary.adjoint());
}

std::vector<DensityOperator> bb84_states() {
  return {DensityOperator::pure(ket0()), DensityOperator::pure(ket1()),
          DensityOperator::pure(ket_plus()), DensityOperator::pure(ket_minus())};
}

Matrix u_y() {
  Matrix u(2, 2);
  u << 0.0, 1.0, -1.0, 0.0;
  return u;
}

CVector ket0() {
  CVector v(2);
  v << 1.0, 0.0;
  return v;
}

CVector ket1() {
  CVector v(2);
  v << 0.0, 1.0;
  return v;
}

CVector ket_plus() {
  CVector v(2);
  v << M_SQRT1_2, M_SQRT1_2;
  return v;
}

CVector ket_minus() {
  CVector v(2);
  v << M_SQRT1_2, -M_SQRT1_2;
  return v;
}

}  // namespace qsdc
