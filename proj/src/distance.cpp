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

#include "qsdc/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsdc/spectral.hpp"

namespace qsdc {

namespace {

void require_same_dim(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("distance: dimension mismatch");
}

}  // namespace

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dim(rho, sigma);
  const Matrix diff = rho.matrix() - sigma.matrix();
  return 0.5 * spectral::trace_norm_hermitian(diff) + 0.5 * std::abs(diff.trace().real());
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dim(rho, sigma);
  // ||sqrt(rho) sqrt(sigma)||_1 = sum of square roots of the eigenvalues of
  // sqrt(rho) sigma sqrt(rho).
  const Matrix sr = spectral::sqrt_psd(rho.matrix());
  const Matrix inner = sr * sigma.matrix() * sr;
  const spectral::EigenSystem es = spectral::eig(inner);
  double overlap = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > 0.0) overlap += std::sqrt(es.values(i));
  }
  const double slack_rho = std::max(0.0, 1.0 - rho.trace());
  const double slack_sigma = std::max(0.0, 1.0 - sigma.trace());
  const double f = overlap + std::sqrt(slack_rho * slack_sigma);
  return f * f;
}

double purified_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  const double f = std::min(1.0, fidelity(rho, sigma));
  return std::sqrt(1.0 - f);
}

}  // namespace qsdc
