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

#include <cmath>
#include <vector>

#include "qsdc/density_operator.hpp"
#include "qsdc/random_states.hpp"
#include "qsdc/rng.hpp"

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
#define REQUIRE_NEAR(a, b, tol) REQUIRE(std::abs((a) - (b)) <= (tol))

namespace qsdc::testing {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Scalar oracles, kept deliberately separate from the library implementation
// path so the matrix code is checked against independent arithmetic.

inline double classical_kl(const std::vector<double>& p, const std::vector<double>& q) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) d += p[i] * (std::log2(p[i]) - std::log2(q[i]));
  }
  return d;
}

inline double classical_kl_variance(const std::vector<double>& p,
                                    const std::vector<double>& q) {
  const double d = classical_kl(p, q);
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      const double t = std::log2(p[i]) - std::log2(q[i]) - d;
      v += p[i] * t * t;
    }
  }
  return v;
}

inline double classical_renyi(double alpha, const std::vector<double>& p,
                              const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) s += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  }
  return std::log2(s) / (alpha - 1.0);
}

inline double shannon_binary(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Random diagonal distribution bounded away from zero.
inline std::vector<double> random_pmf(Rng& rng, int size, double floor_mass = 0.02) {
  std::vector<double> p(size);
  double total = 0.0;
  for (double& x : p) {
    x = floor_mass + rng.uniform();
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

}  // namespace qsdc::testing
