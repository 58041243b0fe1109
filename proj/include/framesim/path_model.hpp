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

#include <memory>
#include <vector>

#include "framesim/circuit.hpp"
#include "framesim/frames.hpp"
#include "framesim/quasiprob_table.hpp"

namespace framesim {

struct PathTerm {
  FrameElementLabel label;
  Complex coeff;
};

/// Markov chain of frame labels for one circuit in one picture.
///
/// Schrodinger paths start from rho0 and walk the gates forward; Heisenberg
/// paths start from the observable and walk the adjoint gates backward. Each
/// step draws the next label from the row of the current label with
/// probability |lambda_y| / sum |lambda| and multiplies the estimator by
/// lambda_y / p(y).
///
/// Product-shaped frames read local tables directly. Stabilizer frames (n <= 3)
/// apply Clifford gates with Pauli noise as an explicit mixture and reduce
/// other single-qubit gates to the two-qubit table by a Clifford on the
/// spectator pair. Gates on two of three qubits outside the Clifford mixture
/// class are rejected.
class PathModel {
 public:
  PathModel(const Circuit& circuit, const FrameCatalog& frame, Picture picture, const TableOptions& options = {});
  ~PathModel();
  PathModel(PathModel&&) noexcept;
  PathModel& operator=(PathModel&&) noexcept;

  const Circuit& circuit() const { return circuit_; }
  /// The frame on the circuit register.
  const FrameCatalog& frame() const { return frame_; }
  Picture picture() const { return picture_; }

  std::size_t steps() const;
  /// Circuit gate consumed by path step s.
  std::size_t gate_of_step(std::size_t s) const;
  /// sup over inputs of the row one-norm at step s.
  double step_norm_bound(std::size_t s) const;
  /// Distinct optimized tables in first-use order.
  std::vector<std::shared_ptr<const QuasiProbTable>> tables() const;

  const FrameElementLabel& initial_label() const { return initial_label_; }
  Complex initial_coefficient() const { return initial_coeff_; }
  /// Every final overlap of the supported frames is at most 1 in magnitude.
  double final_overlap_bound() const { return 1.0; }
  /// |initial| * prod_s step_norm_bound(s) * final_overlap_bound().
  double bound_E() const;

  /// Draws the next label from the row of `label` with u in [0, 1) and returns
  /// lambda_y / p(y). A zero row returns 0 and leaves the label unchanged.
  Complex advance(std::size_t step, FrameElementLabel& label, double u, double* row_norm = nullptr) const;
  /// Every (next label, lambda) of the row.
  void expand(std::size_t step, const FrameElementLabel& label, std::vector<PathTerm>& out) const;
  /// tr[O F_x] (Schrodinger) or tr[rho0 F_x] (Heisenberg).
  Complex final_overlap(const FrameElementLabel& label) const;

  struct Step;

 private:
  Circuit circuit_;
  FrameCatalog frame_;
  Picture picture_;
  std::vector<std::unique_ptr<Step>> steps_;
  FrameElementLabel initial_label_;
  Complex initial_coeff_ = 1.0;
  Matrix observable_;
};

}  // namespace framesim
