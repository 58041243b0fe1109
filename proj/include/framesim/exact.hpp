// Copyright 2026 The framesim Authors
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

#include "framesim/circuit.hpp"
#include "framesim/operator.hpp"

namespace framesim {

/// Final density matrix C_m o ... o C_1(rho0) by dense evolution (n <= 10).
DenseOperator evolve_density(const Circuit& circuit);

/// tr[O rho_m], the quantity the sampler estimates.
double exact_expectation(const Circuit& circuit);

}  // namespace framesim
