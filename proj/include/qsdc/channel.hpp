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

#include <string>
#include <vector>

#include "qsdc/density_operator.hpp"

namespace qsdc {

/// Completely positive trace-preserving map in Kraus form. Operators may be
/// rectangular (din columns, dout rows). Completeness sum_k K^dag K = I is
/// checked on construction within kHermitianTol.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> kraus_ops);

  static KrausChannel identity(int dim);

  int input_dim() const { return static_cast<int>(ops_.front().cols()); }
  int output_dim() const { return static_cast<int>(ops_.front().rows()); }
  const std::vector<Matrix>& kraus_ops() const { return ops_; }

  bool is_cptp(double tol = kHermitianTol) const;

  /// sum_k K rho K^dag. Throws on an input dimension mismatch.
  DensityOperator apply(const DensityOperator& rho) const;

 private:
  std::vector<Matrix> ops_;
};

enum class ChannelKind { depolarizing, dephasing, amplitude_damping };

/// Qubit noise models parameterized on [0, 1].
///   depolarizing(p):      rho -> (1-p) rho + p I/2
///   dephasing(p):         off-diagonals scaled by (1-p)
///   amplitude_damping(g): decay |1> -> |0> with probability g
KrausChannel standard_channel(ChannelKind kind, double param);

ChannelKind channel_kind_from_string(const std::string& name);
std::string to_string(ChannelKind kind);

}  // namespace qsdc
