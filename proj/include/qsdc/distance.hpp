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

namespace qsdc {

/// Generalized trace distance (1/2)||rho - sigma||_1 + (1/2)|tr(rho - sigma)|.
/// The trace correction extends the usual metric to subnormalized operators.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// Generalized fidelity
///   ( ||sqrt(rho) sqrt(sigma)||_1 + sqrt((1 - tr rho)(1 - tr sigma)) )^2.
/// For normalized pure states this is the squared overlap.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

/// sqrt(1 - F(rho, sigma)). Upper-bounds the trace distance.
double purified_distance(const DensityOperator& rho, const DensityOperator& sigma);

}  // namespace qsdc
