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

#include "qsdc/density_operator.hpp"
#include "qsdc/rng.hpp"

namespace qsdc {

/// Random normalized qubit state drawn uniformly inside the Bloch ball,
/// with the radius capped so both eigenvalues stay at least
/// `min_eigenvalue`.
DensityOperator random_qubit_state(Rng& rng, double min_eigenvalue = 0.0);

/// Random normalized state of the given dimension (Ginibre construction
/// G G^dag / tr).
DensityOperator random_state(Rng& rng, int dim);

/// Haar-random unitary via QR of a Ginibre matrix.
Matrix random_unitary(Rng& rng, int dim);

}  // namespace qsdc
