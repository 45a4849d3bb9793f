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

#include "qsdc/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsdc/rng.hpp"
#include "qsdc/spectral.hpp"

namespace qsdc {

void Ensemble::validate() const {
  if (entries.empty()) throw std::invalid_argument("Ensemble: empty");
  double total = 0.0;
  const int dim = entries.front().second.dim();
  for (const auto& [p, state] : entries) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("Ensemble: probability outside [0, 1]");
    if (state.dim() != dim) throw std::invalid_argument("Ensemble: dimension mismatch");
    if (!state.is_normalized()) throw std::invalid_argument("Ensemble: unnormalized member");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("Ensemble: probabilities do not sum to 1");
  }
}

DensityOperator Ensemble::average() const {
  if (entries.empty()) throw std::invalid_argument("Ensemble: empty");
  Matrix avg = Matrix::Zero(entries.front().second.dim(), entries.front().second.dim());
  for (const auto& [p, state] : entries) avg += p * state.matrix();
  return DensityOperator(std::move(avg));
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double von_neumann_entropy(const DensityOperator& rho) {
  const spectral::EigenSystem es = spectral::eig(rho.matrix());
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double p = es.values(i);
    if (p > kSupportTol) h -= p * std::log2(p);
  }
  return h;
}

namespace {

void require_same_dim(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("divergence: dimension mismatch");
}

}  // namespace

std::optional<double> rel_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dim(rho, sigma);
  return spectral::rel_entropy_raw(rho.matrix(), sigma.matrix());
}

std::optional<double> rel_entropy_second_moment(const DensityOperator& rho,
                                                const DensityOperator& sigma) {
  require_same_dim(rho, sigma);
  return spectral::second_moment_raw(rho.matrix(), sigma.matrix());
}

std::optional<double> rel_entropy_variance(const DensityOperator& rho,
                                           const DensityOperator& sigma) {
  require_same_dim(rho, sigma);
  const auto m2 = spectral::second_moment_raw(rho.matrix(), sigma.matrix());
  if (!m2) return std::nullopt;
  const auto d = spectral::rel_entropy_raw(rho.matrix(), sigma.matrix());
  if (!d) return std::nullopt;
  return std::max(0.0, *m2 - *d * *d);
}

std::optional<double> renyi_divergence(double alpha, const DensityOperator& rho,
                                       const DensityOperator& sigma) {
  require_same_dim(rho, sigma);
  if (alpha <= 0.0 || alpha == 1.0) {
    throw std::invalid_argument("renyi_divergence: alpha outside (0,1) u (1,inf)");
  }
  const double tr_rho = rho.trace();
  if (tr_rho <= 0.0) throw std::invalid_argument("renyi_divergence: zero state");

  if (alpha > 1.0) {
    const spectral::EigenSystem es = spectral::eig(sigma.matrix());
    if (spectral::mass_outside_support(rho.matrix(), es) > kSupportTol) return std::nullopt;
  } else {
    const double overlap = (rho.matrix() * sigma.matrix()).trace().real();
    if (overlap <= kSupportTol) return std::nullopt;  // orthogonal states
  }

  const Matrix pinch = spectral::pow_on_support(sigma.matrix(), (1.0 - alpha) / (2.0 * alpha));
  const Matrix conjugated = pinch * rho.matrix() * pinch;
  const spectral::EigenSystem es = spectral::eig(conjugated);
  double power_sum = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > 0.0) power_sum += std::pow(es.values(i), alpha);
  }
  return std::log2(power_sum / tr_rho) / (alpha - 1.0);
}

double holevo_ensemble(const Ensemble& ensemble) {
  ensemble.validate();
  double avg_member_entropy = 0.0;
  for (const auto& [p, state] : ensemble.entries) {
    if (p > 0.0) avg_member_entropy += p * von_neumann_entropy(state);
  }
  return von_neumann_entropy(ensemble.average()) - avg_member_entropy;
}

namespace {

DensityOperator bloch_pure(double theta, double phi) {
  CVector psi(2);
  psi << std::cos(theta / 2.0),
      Complex(std::cos(phi), std::sin(phi)) * std::sin(theta / 2.0);
  return DensityOperator::pure(psi);
}

double entropy_2x2(const Matrix& m) {
  // Closed form through trace and determinant; faster than a full solve and
  // exact for the many tiny evaluations the channel optimizer performs.
  const double t = m.trace().real();
  const double d = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  const double disc = std::max(0.0, t * t - 4.0 * d);
  const double r = std::sqrt(disc);
  const double a = std::clamp((t + r) / 2.0, 0.0, 1.0);
  const double b = std::clamp((t - r) / 2.0, 0.0, 1.0);
  double h = 0.0;
  if (a > kSupportTol) h -= a * std::log2(a);
  if (b > kSupportTol) h -= b * std::log2(b);
  return h;
}

struct ChannelEnsemble {
  std::array<double, 4> theta{};
  std::array<double, 4> phi{};
  std::array<double, 4> logit{};  // weights via softmax
};

double chi_of(const KrausChannel& channel, const ChannelEnsemble& e) {
  std::array<double, 4> prob{};
  double z = 0.0;
  for (int i = 0; i < 4; ++i) z += std::exp(e.logit[i]);
  for (int i = 0; i < 4; ++i) prob[i] = std::exp(e.logit[i]) / z;

  Matrix avg = Matrix::Zero(channel.output_dim(), channel.output_dim());
  double member_entropy = 0.0;
  for (int i = 0; i < 4; ++i) {
    const DensityOperator out = channel.apply(bloch_pure(e.theta[i], e.phi[i]));
    avg += prob[i] * out.matrix();
    member_entropy += prob[i] * entropy_2x2(out.matrix());
  }
  return entropy_2x2(avg) - member_entropy;
}

}  // namespace

double holevo_channel(const KrausChannel& channel, std::uint64_t seed) {
  if (channel.input_dim() != 2) {
    throw std::invalid_argument("holevo_channel: only qubit-input channels are supported");
  }
  if (channel.output_dim() != 2) {
    throw std::invalid_argument("holevo_channel: only qubit-output channels are supported");
  }

  constexpr int kThetaGrid = 12;
  constexpr int kPhiGrid = 24;

  // Coarse stage: best equal-weight pair over the Bloch grid.
  std::vector<std::pair<double, double>> grid;
  grid.reserve(kThetaGrid * kPhiGrid);
  for (int t = 0; t < kThetaGrid; ++t) {
    const double theta = M_PI * t / (kThetaGrid - 1);
    for (int f = 0; f < kPhiGrid; ++f) {
      grid.emplace_back(theta, 2.0 * M_PI * f / kPhiGrid);
    }
  }
  std::vector<Matrix> outputs;
  outputs.reserve(grid.size());
  std::vector<double> entropies(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    outputs.push_back(channel.apply(bloch_pure(grid[i].first, grid[i].second)).matrix());
    entropies[i] = entropy_2x2(outputs.back());
  }
  double best_pair_chi = 0.0;
  std::size_t best_i = 0, best_j = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      const Matrix avg = 0.5 * (outputs[i] + outputs[j]);
      const double chi = entropy_2x2(avg) - 0.5 * entropies[i] - 0.5 * entropies[j];
      if (chi > best_pair_chi) {
        best_pair_chi = chi;
        best_i = i;
        best_j = j;
      }
    }
  }

  // Refinement stage: coordinate descent over four states plus weights,
  // starting from the duplicated best pair and a couple of seeded restarts.
  auto refine = [&](ChannelEnsemble e) {
    double best = chi_of(channel, e);
    double step = 0.2;
    for (int iter = 0; iter < 200; ++iter) {
      for (int s = 0; s < 4; ++s) {
        for (double* param : {&e.theta[s], &e.phi[s], &e.logit[s]}) {
          for (double delta : {step, -step}) {
            *param += delta;
            const double chi = chi_of(channel, e);
            if (chi > best) {
              best = chi;
            } else {
              *param -= delta;
            }
          }
        }
      }
      step *= 0.975;
    }
    return best;
  };

  ChannelEnsemble start;
  start.theta = {grid[best_i].first, grid[best_i].first, grid[best_j].first, grid[best_j].first};
  start.phi = {grid[best_i].second, grid[best_i].second, grid[best_j].second, grid[best_j].second};
  double best = std::max(best_pair_chi, refine(start));

  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  for (int restart = 0; restart < 2; ++restart) {
    ChannelEnsemble e;
    for (int s = 0; s < 4; ++s) {
      e.theta[s] = rng.uniform() * M_PI;
      e.phi[s] = rng.uniform() * 2.0 * M_PI;
    }
    best = std::max(best, refine(e));
  }
  return best;
}

double g_epsilon(double eps) {
  if (eps <= 0.0 || eps > 1.0) throw std::invalid_argument("g_epsilon: eps outside (0, 1]");
  if (eps == 1.0) return 0.0;
  // 1 - sqrt(1 - e^2) = e^2 / (1 + sqrt(1 - e^2)), free of cancellation.
  const double root = std::sqrt((1.0 - eps) * (1.0 + eps));
  return -std::log2(eps * eps / (1.0 + root));
}

double minentropy_classical(const std::vector<std::vector<double>>& joint) {
  if (joint.empty() || joint.front().empty()) {
    throw std::invalid_argument("minentropy_classical: empty pmf");
  }
  const std::size_t cols = joint.front().size();
  double total = 0.0;
  for (const auto& row : joint) {
    if (row.size() != cols) throw std::invalid_argument("minentropy_classical: ragged pmf");
    for (double p : row) {
      if (p < 0.0) throw std::invalid_argument("minentropy_classical: negative probability");
      total += p;
    }
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("minentropy_classical: pmf does not sum to 1");
  }
  double guess = 0.0;
  for (std::size_t z = 0; z < cols; ++z) {
    double best = 0.0;
    for (const auto& row : joint) best = std::max(best, row[z]);
    guess += best;
  }
  return -std::log2(guess);
}

}  // namespace qsdc
