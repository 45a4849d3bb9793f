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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qsdc/channel.hpp"
#include "qsdc/density_operator.hpp"

namespace qsdc {

/// All entropic quantities are in bits (base-2 logarithms). Conversions from
/// natural logarithms are isolated behind this constant.
inline constexpr double kLog2E = 1.4426950408889634074;

/// Weighted collection of normalized states. Probabilities must sum to one
/// within 1e-12.
struct Ensemble {
  std::vector<std::pair<double, DensityOperator>> entries;

  void validate() const;
  DensityOperator average() const;
};

/// Binary Shannon entropy h(p) in bits.
double binary_entropy(double p);

/// -sum lambda log2 lambda of the spectrum, in [0, log2 dim] for normalized
/// states.
double von_neumann_entropy(const DensityOperator& rho);

/// Umegaki relative entropy tr rho (log2 rho - log2 sigma). Infinite
/// divergences (support of rho escaping the support of sigma) are reported
/// as nullopt rather than a sentinel value, since an orthogonal direction is
/// a meaningful outcome and not a numerical accident.
std::optional<double> rel_entropy(const DensityOperator& rho,
                                  const DensityOperator& sigma);

/// Relative entropy variance tr rho (log2 rho - log2 sigma - D)^2 in bits^2.
/// This is the second-order coefficient of the sandwiched Renyi divergence
/// at alpha = 1 (up to the 1/(2 log2 e) normalization).
std::optional<double> rel_entropy_variance(const DensityOperator& rho,
                                           const DensityOperator& sigma);

/// Second moment tr rho (log2 rho - log2 sigma)^2, exposed because the
/// variance decompositions are naturally stated through it.
std::optional<double> rel_entropy_second_moment(const DensityOperator& rho,
                                                const DensityOperator& sigma);

/// Minimal (sandwiched) quantum Renyi divergence
///   (1/(alpha-1)) log2( || sigma^((1-alpha)/(2 alpha)) rho
///                          sigma^((1-alpha)/(2 alpha)) ||_alpha^alpha / tr rho ).
/// Defined for alpha in (0,1) u (1,inf) when either alpha < 1 and the states
/// are not orthogonal, or rho is supported inside sigma; otherwise nullopt.
std::optional<double> renyi_divergence(double alpha, const DensityOperator& rho,
                                       const DensityOperator& sigma);

/// Holevo information of an ensemble, H(avg) - sum p H(rho_x).
double holevo_ensemble(const Ensemble& ensemble);

/// Holevo information of a qubit-input channel, optimized over ensembles of
/// four pure input states. A coarse Bloch-sphere grid over state pairs is
/// followed by coordinate-descent refinement of angles and weights; the seed
/// controls optional randomized restarts. Throws for input dimension > 2.
double holevo_channel(const KrausChannel& channel, std::uint64_t seed = 0);

/// g(eps) = -log2(1 - sqrt(1 - eps^2)) for eps in (0, 1]. Decreasing, with
/// g(1) = 0; evaluated in a cancellation-free form near eps = 0.
double g_epsilon(double eps);

/// Classical-classical min-entropy -log2 sum_z max_x p(x, z) of a joint pmf
/// indexed as joint[x][z]. Serves as the exact oracle on classical instances.
double minentropy_classical(const std::vector<std::vector<double>>& joint);

}  // namespace qsdc
