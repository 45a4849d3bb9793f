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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qsdc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Numerical tolerances shared across the library.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kSupportTol = 1e-12;

/// Finite-dimensional density operator: a Hermitian, positive semidefinite
/// matrix with trace at most one. Subnormalized operators (trace < 1) are
/// first-class citizens since the generalized distance measures are defined
/// on them. Construction rejects non-Hermitian or trace-violating input;
/// positivity is verified by validate() and in the randomized test suites
/// because it requires a full eigendecomposition.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m);

  /// Rank-one projector |psi><psi| (amplitudes are normalized first).
  static DensityOperator pure(const CVector& amplitudes);

  /// Diagonal operator from a nonnegative weight vector (not renormalized).
  static DensityOperator diagonal(const Eigen::VectorXd& weights);

  static DensityOperator maximally_mixed(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

  double trace() const { return m_.trace().real(); }
  double purity() const { return (m_ * m_).trace().real(); }
  bool is_normalized(double tol = kTraceTol) const;

  /// Full invariant check including positivity. Throws std::invalid_argument
  /// with a description of the first violated invariant.
  void validate() const;

 private:
  Matrix m_;
};

/// Kronecker product of raw matrices; the first factor is the most
/// significant index block.
Matrix kron(const Matrix& a, const Matrix& b);

/// Kronecker product; the first factor is the most significant index block.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Trace out every subsystem whose index is absent from `keep`. `dims` lists
/// the subsystem dimensions with the first entry as the most significant
/// tensor factor, matching tensor(). The kept subsystems stay in their
/// original relative order. Throws on a dimension mismatch.
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& dims,
                              const std::vector<int>& keep);

/// U rho U^dagger.
DensityOperator conjugate(const Matrix& unitary, const DensityOperator& rho);

/// The four signal states |0>, |1>, |+>, |-> in that order.
std::vector<DensityOperator> bb84_states();

/// The bit-flip encoder |0><1| - |1><0|. It maps every signal state to its
/// in-basis complement (up to a global sign), so applying it twice restores
/// the state.
Matrix u_y();

CVector ket0();
CVector ket1();
CVector ket_plus();
CVector ket_minus();

}  // namespace qsdc
