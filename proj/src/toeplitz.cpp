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

#include "qsdc/toeplitz.hpp"

#include <stdexcept>

#include "qsdc/rng.hpp"

namespace qsdc {

BitVec toeplitz_hash(const BitVec& input, std::uint64_t seed, int out_len) {
  if (out_len < 0) throw std::invalid_argument("toeplitz_hash: negative output length");
  BitVec output(out_len);
  if (out_len == 0 || input.size() == 0) return output;

  const int in_len = input.size();
  // Diagonal bits: index (in_len - 1) + i - j addresses entry T[i][j].
  BitVec diagonals(in_len + out_len - 1);
  Rng rng(seed);
  for (int d = 0; d < diagonals.size(); ++d) diagonals.set(d, rng.coin());

  for (int i = 0; i < out_len; ++i) {
    bool parity = false;
    for (int j = 0; j < in_len; ++j) {
      parity ^= input.get(j) && diagonals.get(in_len - 1 + i - j);
    }
    output.set(i, parity);
  }
  return output;
}

}  // namespace qsdc
