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

#include <stdexcept>
#include <string>
#include <vector>

#include "framesim/channel.hpp"
#include "framesim/conic_solver.hpp"
#include "framesim/frames.hpp"

namespace framesim {

/// Column m is pauli_vectorize(F_m) of a q-qubit frame restriction.
struct Dictionary {
  FrameKind kind = FrameKind::Pauli;
  int qubits = 0;
  Matrix columns;
  /// All entries have zero imaginary part (frames of Hermitian elements).
  bool real_valued = false;

  Eigen::Index size() const { return columns.cols(); }
  Eigen::Index rank() const;
};

/// Builds the dictionary of the frame restricted to q qubits (q <= 2).
Dictionary build_dictionary(const FrameCatalog& catalog, int q);
/// Dictionary from explicit columns.
Dictionary make_dictionary(Matrix columns, FrameKind kind = FrameKind::Pauli);

/// Sparse quasi-probability vector over dictionary columns, support ascending.
struct Decomposition {
  std::vector<std::size_t> support;
  std::vector<Complex> coeffs;
  std::vector<Complex> phases;
  double one_norm = 0.0;

  /// Keeps entries with |lambda| >= prune (exact zeros are always dropped).
  static Decomposition from_dense(const Vector& lambda, double prune = 0.0);
  Vector dense(Eigen::Index size) const;
  /// Recomputes phases and one_norm from coeffs.
  void refresh();
};

struct DualCertificate {
  double dual_objective = 0.0;
  double primal_objective = 0.0;
  double gap = 0.0;
  double feasibility_residual = 0.0;
  bool certified = false;
};

/// Thrown when no feasible decomposition could be produced.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, double residual, Vector best)
      : std::runtime_error(what), residual_(residual), best_(std::move(best)) {}
  double residual() const { return residual_; }
  const Vector& best_iterate() const { return best_; }

 private:
  double residual_;
  Vector best_;
};

struct BasisPursuitOptions {
  ConicOptions conic;
  double prune = 1e-10;
  double residual_tol = 1e-8;
  double gap_tol = 1e-6;
  /// Route real targets over real dictionaries through the linear program.
  bool allow_linear_program = true;
};

struct BasisPursuitResult {
  Decomposition decomposition;
  DualCertificate certificate;
  ConicStatus status = ConicStatus::Optimal;
  int iterations = 0;
  double residual = 0.0;
  /// Complex dual vector nu of max Re(y^H nu) s.t. |D^H nu| <= 1, before rescaling.
  Vector dual;
};

/// min |lambda|_1 subject to D lambda = y.
BasisPursuitResult solve_min_one_norm(const Dictionary& dict, const Vector& y, const BasisPursuitOptions& options = {});

/// Lower bound from a dual vector: nu is rescaled by 1 / max(1, max_m |(D^H nu)_m|).
DualCertificate evaluate_certificate(const Dictionary& dict, const Vector& y, const Vector& nu,
                                     const Decomposition& primal, double gap_tol = 1e-6,
                                     double residual_tol = 1e-8);

struct VerifyReport {
  bool ok = false;
  double residual = 0.0;
  double one_norm = 0.0;
};
/// Recomputes |D lambda - y|_2 and sum |lambda| from scratch.
VerifyReport verify_decomposition(const Dictionary& dict, const Vector& y, const Decomposition& dec,
                                  double residual_tol = 1e-8);

/// Restriction of a gate to the register its frame table is built on.
///
/// Stabilizer frames decompose a single-qubit gate on a two-qubit register
/// (qubit 0 spectator, qubit 1 target); everything else uses the gate's own
/// qubits. Heisenberg problems use the adjoint channel. With `spectator` false a
/// single-qubit gate in a stabilizer frame is decomposed on one qubit.
struct LocalProblem {
  FrameCatalog catalog;
  NoisyChannel channel;
  Picture picture = Picture::Schrodinger;
  Dictionary dictionary;
};
LocalProblem make_local_problem(const NoisyChannel& gate, const FrameCatalog& catalog, Picture picture,
                                bool spectator = true);

/// Vectorized channel image of frame element `input` of the local catalog.
Vector local_target(const LocalProblem& problem, std::size_t input);

/// Decomposes the (adjoint) channel image of one local input element. The
/// Pauli frame reads the transfer-matrix column directly.
BasisPursuitResult decompose_gate_action(const LocalProblem& problem, std::size_t input,
                                         const BasisPursuitOptions& options = {});
Decomposition decompose_gate_action(const NoisyChannel& gate, const FrameCatalog& catalog, Picture picture,
                                    const FrameElementLabel& input_label);

}  // namespace framesim
