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

#include "framesim/exact.hpp"

namespace framesim {

DenseOperator evolve_density(const Circuit& circuit) {
  circuit.validate();
  if (circuit.n_qubits > kMaxDenseQubits) {
    throw UnsupportedError("exact evolution covers at most " + std::to_string(kMaxDenseQubits) + " qubits");
  }
  DenseOperator rho = circuit.initial_state.density();
  for (const GateApplication& g : circuit.gates) rho = apply_channel(g.channel(), g.qubits, rho);
  return rho;
}

double exact_expectation(const Circuit& circuit) {
  const DenseOperator rho = evolve_density(circuit);
  const Matrix o = circuit.observable.to_dense().matrix();
  return (o.cwiseProduct(rho.matrix().transpose())).sum().real();
}

}  // namespace framesim
