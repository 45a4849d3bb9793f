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

#include <optional>

#include "qsdc/density_operator.hpp"

namespace qsdc::spectral {

/// Hermitian eigendecomposition, the single numerical kernel of the library.
/// Every matrix function (logarithm, root, power) is evaluated through the
/// eigenbasis returned here. Eigenvalues in (-1e-10, 0) are clamped to zero
/// so that downstream logs and roots see an exactly positive semidefinite
/// spectrum.
struct EigenSystem {
  Eigen::VectorXd values;  // ascending, clamped
  Matrix vectors;          // orthonormal columns
};

EigenSystem eig(const Matrix& hermitian);

/// Rebuild sum_i f(lambda_i) |v_i><v_i| from a decomposition.
Matrix apply_spectral(const EigenSystem& es, double (*fn)(double));

/// Base-2 matrix logarithm on the support; kernel directions map to zero.
Matrix log2_on_support(const Matrix& psd);

/// Matrix power on the support; 0^p is taken as 0 for any p, which realizes
/// the pseudo-inverse convention for negative exponents.
Matrix pow_on_support(const Matrix& psd, double exponent);

Matrix sqrt_psd(const Matrix& psd);

/// Schatten 1-norm of a Hermitian matrix (sum of absolute eigenvalues).
double trace_norm_hermitian(const Matrix& hermitian);

/// Weight of rho lying outside the support of the decomposed operator, i.e.
/// the total projection of rho onto eigenvectors with eigenvalue at most
/// kSupportTol.
double mass_outside_support(const Matrix& rho, const EigenSystem& es);

/// tr rho (log2 rho - log2 sigma) for Hermitian PSD inputs of any trace.
/// Returns nullopt when supp(rho) is not contained in supp(sigma), the case
/// in which the divergence is infinite.
std::optional<double> rel_entropy_raw(const Matrix& rho, const Matrix& sigma);

/// tr rho (log2 rho - log2 sigma)^2, with the same support convention.
std::optional<double> second_moment_raw(const Matrix& rho, const Matrix& sigma);

}  // namespace qsdc::spectral
