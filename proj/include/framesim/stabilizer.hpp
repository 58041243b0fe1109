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

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "framesim/operator.hpp"

namespace framesim {

/// Global phase convention: the first nonzero amplitude is made real positive.
/// Returns the canonical vector; `removed` receives the phase with v = removed * canonical.
Vector canonicalize_phase(const Vector& v, Complex* removed = nullptr);

/// A located stabilizer ket: v = phase * ket(index).
struct StabilizerMatch {
  std::size_t index;
  Complex phase;
};

/// All q-qubit stabilizer state vectors (q <= 3), phase-canonical, with lookup.
///
/// For q = 1 the order is |0>, |1>, |+>, |->, |+i>, |-i>; larger registers use
/// breadth-first order from |0...0> under H, S and CNOT generators.
class StabilizerKets {
 public:
  static const StabilizerKets& get(int qubits);

  int qubits() const { return qubits_; }
  std::size_t size() const { return kets_.size(); }
  const Vector& ket(std::size_t i) const { return kets_[i]; }
  const std::vector<Vector>& kets() const { return kets_; }

  /// Locates v (any global phase, unit norm) in the catalog; nullopt when v is
  /// not a stabilizer state to 1e-9.
  std::optional<StabilizerMatch> find(const Vector& v) const;

 private:
  explicit StabilizerKets(int qubits);
  int qubits_;
  std::vector<Vector> kets_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Projectors |psi><psi| over the stabilizer states, q in {1, 2}. Count 6 or 60.
std::vector<DenseOperator> enumerate_stabilizer_states(int q);
/// Dyads |psi_i><psi_j| in index order i * N + j, q in {1, 2}. Count 36 or 3600.
std::vector<DenseOperator> build_dyadic_catalog(int q);

/// The q-qubit Clifford group modulo global phase (q <= 2: 24 or 11520
/// unitaries), each phase-canonical in its first nonzero row-major entry.
const std::vector<Matrix>& clifford_group(int q);

}  // namespace framesim
