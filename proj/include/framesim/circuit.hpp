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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "framesim/channel.hpp"
#include "framesim/frames.hpp"
#include "framesim/pauli.hpp"

namespace framesim {

struct GateApplication {
  std::string name;
  std::vector<int> qubits;
  std::optional<NoiseModel> noise;
  double strength = 0.0;

  /// Gate followed by the per-qubit noise channel.
  NoisyChannel channel() const;
  /// Identifies the local channel independently of the qubits it acts on.
  std::string channel_key() const;
  /// Clifford gate with no noise, depolarizing or dephasing noise.
  bool is_clifford_pauli_mixture() const;
};

/// tr[O C_m o ... o C_1(rho0)] with a product initial state and a Pauli observable.
struct Circuit {
  int n_qubits = 0;
  ProductState initial_state;
  PauliString observable;
  std::vector<GateApplication> gates;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

class CircuitParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the JSON circuit format:
///   {"n_qubits": 2, "initial_state": "00", "observable": "+ZZ",
///    "gates": [{"name": "H", "qubits": [0], "noise": {"model": "depolarizing", "strength": 0.01}}]}
/// `initial_state` defaults to all zeros. Errors carry line/column or field paths.
Circuit parse_circuit(std::string_view text, const std::string& source = "<circuit>");
Circuit load_circuit(const std::filesystem::path& path);
nlohmann::json circuit_to_json(const Circuit& circuit);

}  // namespace framesim
