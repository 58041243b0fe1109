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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "framesim/operator.hpp"

namespace framesim {

enum class NoiseModel { Depolarizing, Dephasing, AmplitudeDamping };

/// Accepts "depolarizing"/"depol", "dephasing"/"deph", "amplitude_damping"/"ad".
NoiseModel parse_noise_model(std::string_view text);
std::string to_string(NoiseModel model);
/// Largest admissible strength for the model (1/3 for depolarizing, else 1).
double max_noise_strength(NoiseModel model);

/// Completely positive map on q qubits in Kraus form with its Pauli transfer
/// matrix R(y, x) = 2^-q tr[P_y C(P_x)] computed at construction.
class NoisyChannel {
 public:
  NoisyChannel() = default;
  /// Throws std::invalid_argument on shape errors, and on a trace-preservation
  /// defect above 1e-12 when `require_trace_preserving` is set.
  NoisyChannel(int qubits, std::vector<Matrix> kraus, std::string label = {}, bool require_trace_preserving = true);

  int qubits() const { return qubits_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const Matrix& ptm() const { return ptm_; }
  const std::string& label() const { return label_; }
  bool is_unitary() const { return kraus_.size() == 1; }

  /// max |sum_i K_i^dagger K_i - I|.
  double trace_preservation_defect() const;
  /// C(op) for an operator on exactly qubits() qubits.
  DenseOperator apply(const DenseOperator& op) const;

 private:
  int qubits_ = 0;
  std::vector<Matrix> kraus_;
  Matrix ptm_;
  std::string label_;
};

/// Unitary 2x2 or 4x4 matrix for a gate name in {H, S, T, X, Y, Z, CNOT, CZ, I}.
/// Names are case-insensitive; "identity" is accepted for I.
Matrix gate_matrix(std::string_view name);
/// Number of qubits of a named gate.
int gate_arity(std::string_view name);
/// Canonical upper-case gate name.
std::string canonical_gate_name(std::string_view name);
bool is_clifford_gate(std::string_view name);

NoisyChannel make_gate(std::string_view name);
NoisyChannel make_noise(NoiseModel model, double strength);

/// noise o gate. With per_qubit, a single-qubit noise channel is tensored over
/// every qubit of the gate.
NoisyChannel compose_noisy_gate(const NoisyChannel& gate, const NoisyChannel& noise, bool per_qubit);
/// second o first, both on the same qubit count.
NoisyChannel compose(const NoisyChannel& second, const NoisyChannel& first);
/// lhs (x) rhs with lhs on the more significant qubits.
NoisyChannel tensor(const NoisyChannel& lhs, const NoisyChannel& rhs);
/// C* with Kraus operators K_i^dagger.
NoisyChannel adjoint(const NoisyChannel& ch);

/// Applies a local channel to the listed qubits of an n-qubit operator.
DenseOperator apply_channel(const NoisyChannel& ch, std::span<const int> targets, const DenseOperator& op);

/// Convenience: gate followed by per-qubit noise (or the bare gate when `noise` is empty).
NoisyChannel make_noisy_gate(std::string_view gate, std::optional<NoiseModel> noise, double strength);

}  // namespace framesim
