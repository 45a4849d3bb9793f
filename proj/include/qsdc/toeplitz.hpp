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

#include "qsdc/bitvec.hpp"

namespace qsdc {

/// y = T x over GF(2), where T is an out_len x in_len Toeplitz matrix whose
/// in_len + out_len - 1 defining diagonals are drawn from a generator seeded
/// with `seed`. Toeplitz matrices with uniform diagonals form a 2-universal
/// family, which is what privacy amplification requires of the extractor.
BitVec toeplitz_hash(const BitVec& input, std::uint64_t seed, int out_len);

}  // namespace qsdc
