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

#include "qsdc/spectral.hpp"

#include <cmath>

namespace qsdc::spectral {

EigenSystem eig(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) < 0.0 && es.values(i) > -kPsdTol) es.values(i) = 0.0;
  }
  return es;
}

Matrix apply_spectral(const EigenSystem& es, double (*fn)(double)) {
  Eigen::VectorXd mapped(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) mapped(i) = fn(es.values(i));
  return es.vectors * mapped.asDiagonal() * es.vectors.adjoint();
}

namespace {

double log2_or_zero(double x) { return x > kSupportTol ? std::log2(x) : 0.0; }

Matrix log2_from(const EigenSystem& es) { return apply_spectral(es, &log2_or_zero); }

}  // namespace

Matrix log2_on_support(const Matrix& psd) { return log2_from(eig(psd)); }

Matrix pow_on_support(const Matrix& psd, double exponent) {
  const EigenSystem es = eig(psd);
  Eigen::VectorXd mapped(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    mapped(i) = es.values(i) > kSupportTol ? std::pow(es.values(i), exponent) : 0.0;
  }
  return es.vectors * mapped.asDiagonal() * es.vectors.adjoint();
}

Matrix sqrt_psd(const Matrix& psd) {
  const EigenSystem es = eig(psd);
  Eigen::VectorXd mapped(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    mapped(i) = es.values(i) > 0.0 ? std::sqrt(es.values(i)) : 0.0;
  }
  return es.vectors * mapped.asDiagonal() * es.vectors.adjoint();
}

double trace_norm_hermitian(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double mass_outside_support(const Matrix& rho, const EigenSystem& es) {
  double mass = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) <= kSupportTol) {
      const CVector v = es.vectors.col(i);
      mass += (v.adjoint() * rho * v)(0, 0).real();
    }
  }
  return mass;
}

std::optional<double> rel_entropy_raw(const Matrix& rho, const Matrix& sigma) {
  const EigenSystem er = eig(rho);
  const EigenSystem es = eig(sigma);
  if (mass_outside_support(rho, es) > kSupportTol) return std::nullopt;

  // tr rho log2 rho directly from the spectrum of rho.
  double d = 0.0;
  for (Eigen::Index i = 0; i < er.values.size(); ++i) {
    const double p = er.values(i);
    if (p > kSupportTol) d += p * std::log2(p);
  }
  // tr rho log2 sigma via projections onto sigma's eigenbasis.
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    const double q = es.values(j);
    if (q > kSupportTol) {
      const CVector v = es.vectors.col(j);
      d -= std::log2(q) * (v.adjoint() * rho * v)(0, 0).real();
    }
  }
  return d;
}

std::optional<double> second_moment_raw(const Matrix& rho, const Matrix& sigma) {
  const EigenSystem er = eig(rho);
  const EigenSystem es = eig(sigma);
  if (mass_outside_support(rho, es) > kSupportTol) return std::nullopt;
  const Matrix delta = log2_from(er) - log2_from(es);
  return (rho * delta * delta).trace().real();
}

}  // namespace qsdc::spectral
