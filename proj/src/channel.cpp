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

#include "qsdc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace qsdc {

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops) : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw std::invalid_argument("KrausChannel: no operators");
  const auto rows = ops_.front().rows();
  const auto cols = ops_.front().cols();
  for (const Matrix& k : ops_) {
    if (k.rows() != rows || k.cols() != cols) {
      throw std::invalid_argument("KrausChannel: inconsistent operator shapes");
    }
  }
  if (!is_cptp()) throw std::invalid_argument("KrausChannel: completeness violated");
}

KrausChannel KrausChannel::identity(int dim) {
  return KrausChannel({Matrix::Identity(dim, dim)});
}

bool KrausChannel::is_cptp(double tol) const {
  Matrix sum = Matrix::Zero(input_dim(), input_dim());
  for (const Matrix& k : ops_) sum += k.adjoint() * k;
  return (sum - Matrix::Identity(input_dim(), input_dim())).cwiseAbs().maxCoeff() <= tol;
}

DensityOperator KrausChannel::apply(const DensityOperator& rho) const {
  if (rho.dim() != input_dim()) {
    throw std::invalid_argument("KrausChannel: input dimension mismatch");
  }
  Matrix out = Matrix::Zero(output_dim(), output_dim());
  for (const Matrix& k : ops_) out += k * rho.matrix() * k.adjoint();
  return DensityOperator(std::move(out));
}

KrausChannel standard_channel(ChannelKind kind, double param) {
  if (param < 0.0 || param > 1.0) {
    throw std::invalid_argument("standard_channel: parameter outside [0, 1]");
  }
  Matrix i2 = Matrix::Identity(2, 2);
  switch (kind) {
    case ChannelKind::depolarizing: {
      Matrix x(2, 2), y(2, 2), z(2, 2);
      x << 0, 1, 1, 0;
      y << 0, Complex(0, -1), Complex(0, 1), 0;
      z << 1, 0, 0, -1;
      const double p = param;
      return KrausChannel({std::sqrt(1.0 - 0.75 * p) * i2, std::sqrt(p / 4.0) * x,
                           std::sqrt(p / 4.0) * y, std::sqrt(p / 4.0) * z});
    }
    case ChannelKind::dephasing: {
      // Phase flip with probability param/2 scales coherences by (1 - param).
      Matrix z(2, 2);
      z << 1, 0, 0, -1;
      return KrausChannel({std::sqrt(1.0 - param / 2.0) * i2, std::sqrt(param / 2.0) * z});
    }
    case ChannelKind::amplitude_damping: {
      Matrix k0(2, 2), k1(2, 2);
      k0 << 1, 0, 0, std::sqrt(1.0 - param);
      k1 << 0, std::sqrt(param), 0, 0;
      return KrausChannel({k0, k1});
    }
  }
  throw std::logic_error("standard_channel: unreachable");
}

ChannelKind channel_kind_from_string(const std::string& name) {
  if (name == "depolarizing") return ChannelKind::depolarizing;
  if (name == "dephasing") return ChannelKind::dephasing;
  if (name == "amplitude_damping") return ChannelKind::amplitude_damping;
  throw std::invalid_argument("unknown channel kind: " + name);
}

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::depolarizing: return "depolarizing";
    case ChannelKind::dephasing: return "dephasing";
    case ChannelKind::amplitude_damping: return "amplitude_damping";
  }
  return "?";
}

}  // namespace qsdc
