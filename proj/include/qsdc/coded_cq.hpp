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

#include <array>
#include <vector>

#include "qsdc/density_operator.hpp"
#include "qsdc/linear_code.hpp"

namespace qsdc {

/// The eavesdropper's conditional states for the two encoded bit values,
/// together with their even mixture. The mixture is what every divergence in
/// the bounds is taken against.
struct BitConditionalStates {
  DensityOperator rho0;
  DensityOperator rho1;
  DensityOperator rho_tilde;

  /// rho_tilde is computed as the exact even mixture.
  static BitConditionalStates from_pair(const DensityOperator& rho0,
                                        const DensityOperator& rho1);

  /// Unitary bit encoding: rho1 = U_Y rho0 U_Y^dag. The conjugation only
  /// permutes and negates matrix entries, so it is exact in floating point.
  static BitConditionalStates unitary_encoded(const DensityOperator& rho0);

  /// Checks normalization and that rho_tilde matches the even mixture within
  /// 1e-12. Throws std::invalid_argument on violation.
  void validate() const;
};

/// Joint classical-quantum description of a uniformly distributed codeword
/// register X^n paired with per-position conditional states: message index i
/// carries probability 1/M and the adversary sees, at position j, the state
/// assigned to bit value c_j(i) of codeword i.
class CodedCQState {
 public:
  CodedCQState(BinaryLinearCode code,
               std::vector<std::array<DensityOperator, 2>> position_states);

  /// Every position shares the same pair of conditional states.
  static CodedCQState homogeneous(BinaryLinearCode code, const BitConditionalStates& bits);

  const BinaryLinearCode& code() const { return code_; }
  int n() const { return code_.n(); }
  int k() const { return code_.k(); }

  const DensityOperator& state_at(int position, int bit) const {
    return position_states_[position][bit];
  }

  /// Position average over uniform codewords. For a balanced position this
  /// is the even mixture of the two conditional states; for a position with
  /// an all-zero generator column every codeword carries bit 0 there.
  DensityOperator position_average(int position) const;

 private:
  BinaryLinearCode code_;
  std::vector<std::array<DensityOperator, 2>> position_states_;
};

}  // namespace qsdc
