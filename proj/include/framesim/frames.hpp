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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "framesim/operator.hpp"
#include "framesim/pauli.hpp"

namespace framesim {

/// Register limit of product-shaped frames, which never form dense operators on the register.
inline constexpr int kMaxProductQubits = 64;

enum class FrameKind { DiagStab, DyadStab, Product, Pauli, ExtPauli };
enum class Picture { Schrodinger, Heisenberg };

/// Accepts "diag-stab", "dyad-stab", "product", "pauli", "ext-pauli" (also with '_').
FrameKind parse_frame_kind(std::string_view text);
std::string to_string(FrameKind kind);
Picture parse_picture(std::string_view text);
std::string to_string(Picture picture);

/// Product-shaped frames have elements F = L_0 (x) ... (x) L_{n-1} from a local set.
inline bool is_product_shaped(FrameKind kind) { return kind != FrameKind::DiagStab && kind != FrameKind::DyadStab; }
/// Picture the frame is simulated in.
Picture natural_picture(FrameKind kind);

/// Payload layout:
///   DiagStab: {state index}
///   DyadStab: {ket index, bra index}
///   product-shaped: one local index per qubit, qubit 0 first.
struct FrameElementLabel {
  FrameKind kind = FrameKind::Pauli;
  std::vector<std::uint32_t> payload;

  friend bool operator==(const FrameElementLabel&, const FrameElementLabel&) = default;
};

/// Product state |s_0> (x) ... (x) |s_{n-1}> with letters from {0, 1, +, -, r, l}
/// (r = |+i>, l = |-i>).
class ProductState {
 public:
  ProductState() = default;
  static ProductState parse(std::string_view letters);
  static ProductState zeros(int n) { return parse(std::string(static_cast<std::size_t>(n), '0')); }

  int size() const { return static_cast<int>(letters_.size()); }
  const std::string& letters() const { return letters_; }
  /// Index of letter k in the single-qubit stabilizer order |0>, |1>, |+>, |->, |+i>, |-i>.
  int local_index(int k) const;
  const Vector& local_ket(int k) const;
  Vector ket() const;
  DenseOperator density() const;

 private:
  std::string letters_;
};

/// Indexed frame {F_x} on n qubits.
class FrameCatalog {
 public:
  FrameCatalog() = default;

  /// Stabilizer frames support n in [1, 3]; elements are held as kets.
  static FrameCatalog diag_stab(int n);
  static FrameCatalog dyad_stab(int n);
  /// Six stabilizer states followed by `extra_random` Haar-random pure states.
  static FrameCatalog product(int n, int extra_random, std::uint64_t seed);
  /// Product frame with an explicit single-qubit local set of kets.
  static FrameCatalog product_from_kets(int n, std::vector<Vector> local_kets, int extra_random, std::uint64_t seed);
  static FrameCatalog pauli(int n);
  /// {I, X, Y, Z, a(X+Y)/sqrt2, a(X-Y)/sqrt2}, a in [0, 1].
  static FrameCatalog ext_pauli(int n, double a);

  FrameKind kind() const { return kind_; }
  int n_qubits() const { return n_qubits_; }
  double hyper_a() const { return hyper_a_; }
  int extra_random() const { return extra_random_; }
  std::uint64_t seed() const { return seed_; }

  /// Same frame on a different register size.
  FrameCatalog with_qubits(int n) const;

  /// Single-qubit factors (product-shaped frames).
  const std::vector<DenseOperator>& local_set() const { return local_set_; }
  /// Local kets of the product frame.
  const std::vector<Vector>& local_kets() const { return local_kets_; }
  /// Stabilizer kets of the register (stabilizer frames).
  const std::vector<Vector>& stabilizer_kets() const;
  /// Number of local indices per qubit (product-shaped) or of stabilizer kets.
  std::size_t local_size() const;

  /// Number of elements on the register.
  std::size_t size() const;
  FrameElementLabel label(std::size_t index) const;
  std::size_t index(const FrameElementLabel& label) const;
  /// Throws std::invalid_argument if the label does not belong to this catalog.
  void validate(const FrameElementLabel& label) const;

  DenseOperator element(const FrameElementLabel& label) const;
  DenseOperator element(std::size_t index) const { return element(label(index)); }
  /// Dense list of every element; refuses catalogs above 4096 elements.
  std::vector<DenseOperator> elements() const;

  /// 2 * pauli_vectorize(L) for each local factor: entry P is tr[P L].
  const std::vector<std::array<Complex, 4>>& local_pauli_traces() const { return local_traces_; }

  /// Frame kind, register, hyperparameters, seed and, for the product frame,
  /// the explicit local amplitudes.
  nlohmann::json manifest() const;
  static FrameCatalog from_manifest(const nlohmann::json& manifest);

 private:
  void finish_local_set();

  FrameKind kind_ = FrameKind::Pauli;
  int n_qubits_ = 0;
  double hyper_a_ = 0.0;
  int extra_random_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<DenseOperator> local_set_;
  std::vector<Vector> local_kets_;
  std::vector<std::array<Complex, 4>> local_traces_;
};

/// 6 + extra_random local states on one qubit.
FrameCatalog build_product_catalog(int extra_random, std::uint64_t seed, int n_qubits = 1);
std::vector<DenseOperator> build_ext_pauli_local_set(double a);

/// tr[O F_x]; product-shaped frames are evaluated factor by factor.
Complex eval_observable_overlap(const FrameCatalog& catalog, const FrameElementLabel& label, const PauliString& obs);
/// tr[rho0 F_x] for a product initial state.
Complex eval_state_overlap(const FrameCatalog& catalog, const FrameElementLabel& label, const ProductState& state);

}  // namespace framesim
