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

#include "qsdc/coded_cq.hpp"

#include <stdexcept>

namespace qsdc {

BitConditionalStates BitConditionalStates::from_pair(const DensityOperator& rho0,
                                                     const DensityOperator& rho1) {
  if (rho0.dim() != rho1.dim()) {
    throw std::invalid_argument("BitConditionalStates: dimension mismatch");
  }
  DensityOperator tilde(0.5 * (rho0.matrix() + rho1.matrix()));
  return BitConditionalStates{rho0, rho1, std::move(tilde)};
}

BitConditionalStates BitConditionalStates::unitary_encoded(const DensityOperator& rho0) {
  if (rho0.dim() != 2) {
    throw std::invalid_argument("BitConditionalStates: unitary encoding is a qubit operation");
  }
  const Matrix& m = rho0.matrix();
  Matrix flipped(2, 2);
  flipped << m(1, 1), -m(1, 0), -m(0, 1), m(0, 0);
  return from_pair(rho0, DensityOperator(std::move(flipped)));
}

void BitConditionalStates::validate() const {
  if (!rho0.is_normalized() || !rho1.is_normalized()) {
    throw std::invalid_argument("BitConditionalStates: states must be normalized");
  }
  const Matrix diff = rho_tilde.matrix() - 0.5 * (rho0.matrix() + rho1.matrix());
  if (diff.cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("BitConditionalStates: mixture inconsistent");
  }
}

CodedCQState::CodedCQState(BinaryLinearCode code,
                           std::vector<std::array<DensityOperator, 2>> position_states)
    : code_(std::move(code)), position_states_(std::move(position_states)) {
  if (static_cast<int>(position_states_.size()) != code_.n()) {
    throw std::invalid_argument("CodedCQState: one state pair per position required");
  }
  const int dim = position_states_.front()[0].dim();
  for (const auto& pair : position_states_) {
    if (pair[0].dim() != dim || pair[1].dim() != dim) {
      throw std::invalid_argument("CodedCQState: positions must share one dimension");
    }
  }
}

CodedCQState CodedCQState::homogeneous(BinaryLinearCode code, const BitConditionalStates& bits) {
  std::vector<std::array<DensityOperator, 2>> states(code.n(), {bits.rho0, bits.rho1});
  return CodedCQState(std::move(code), std::move(states));
}

DensityOperator CodedCQState::position_average(int position) const {
  const bool balanced = code_.balanced_positions()[position];
  if (!balanced) return position_states_[position][0];
  return DensityOperator(0.5 * (position_states_[position][0].matrix() +
                                position_states_[position][1].matrix()));
}

}  // namespace qsdc
