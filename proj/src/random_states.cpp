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

#include "qsdc/random_states.hpp"

#include <cmath>
#include <stdexcept>

namespace qsdc {

namespace {

Matrix ginibre(Rng& rng, int dim) {
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
  }
  return g;
}

}  // namespace

DensityOperator random_qubit_state(Rng& rng, double min_eigenvalue) {
  if (min_eigenvalue < 0.0 || min_eigenvalue >= 0.5) {
    throw std::invalid_argument("random_qubit_state: min eigenvalue outside [0, 0.5)");
  }
  const double max_radius = 1.0 - 2.0 * min_eigenvalue;
  // Uniform in the ball of radius max_radius.
  const double radius = max_radius * std::cbrt(rng.uniform());
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * M_PI * rng.uniform();
  const double s = std::sqrt(1.0 - z * z);
  const double rx = radius * s * std::cos(phi);
  const double ry = radius * s * std::sin(phi);
  const double rz = radius * z;
  Matrix m(2, 2);
  m << 0.5 * (1.0 + rz), 0.5 * Complex(rx, -ry), 0.5 * Complex(rx, ry), 0.5 * (1.0 - rz);
  return DensityOperator(std::move(m));
}

DensityOperator random_state(Rng& rng, int dim) {
  const Matrix g = ginibre(rng, dim);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  // Symmetrize away the last roundoff so the constructor's Hermiticity check
  // never trips on accumulated error.
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityOperator(std::move(m));
}

Matrix random_unitary(Rng& rng, int dim) {
  const Matrix g = ginibre(rng, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(i) *= d / mag;
  }
  return q;
}

}  // namespace qsdc
