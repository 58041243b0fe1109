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
#include <string>
#include <string_view>
#include <vector>

#include "framesim/operator.hpp"

namespace framesim {

/// Letter codes: 0 = I, 1 = X, 2 = Y, 3 = Z.
enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// 2x2 matrix of a single Pauli letter.
const Matrix& pauli_matrix(PauliLetter letter);
inline const Matrix& pauli_matrix(int code) { return pauli_matrix(static_cast<PauliLetter>(code)); }

/// Signed Pauli string i^phase * P_0 (x) ... (x) P_{n-1}.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<PauliLetter> letters, int phase = 0);

  /// Accepts an optional sign prefix ("+", "-", "i", "-i", "+i") followed by
  /// letters from "IXYZ" (or "_" for I).
  static PauliString parse(std::string_view text);
  static PauliString identity(std::size_t n) { return PauliString(std::vector<PauliLetter>(n, PauliLetter::I)); }

  std::size_t size() const { return letters_.size(); }
  PauliLetter operator[](std::size_t k) const { return letters_[k]; }
  const std::vector<PauliLetter>& letters() const { return letters_; }
  /// Exponent of i in the global factor, in [0, 4).
  int phase() const { return phase_; }
  Complex phase_factor() const;
  /// Pauli-basis index: sum_k letter_k 4^(n-1-k).
  std::size_t index() const;

  std::string to_string() const;
  DenseOperator to_dense() const;

  friend PauliString operator*(const PauliString& a, const PauliString& b);
  friend bool operator==(const PauliString& a, const PauliString& b) = default;

 private:
  std::vector<PauliLetter> letters_;
  int phase_ = 0;
};

/// Unsigned Pauli string P_x for basis index x on q qubits.
PauliString pauli_from_index(std::size_t index, int qubits);

/// Coefficients c_x = 2^-q tr[P_x op], x over the 4^q Pauli strings.
Vector pauli_vectorize(const DenseOperator& op);
/// sum_x c_x P_x.
DenseOperator pauli_reconstruct(const Vector& coefficients);

}  // namespace framesim
