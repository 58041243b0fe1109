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
#include <vector>

#include "framesim/basis_pursuit.hpp"
#include "framesim/channel.hpp"
#include "framesim/frames.hpp"

namespace framesim {

/// Action of a Clifford unitary on the stabilizer kets: U|k> = phase[k] |perm[k]>.
struct KetAction {
  std::vector<std::uint32_t> perm;
  std::vector<Complex> phase;
};
KetAction ket_action(const Matrix& u, int qubits);

/// Clifford unitaries U (modulo phase) with C(U rho U^dagger) = U C(rho) U^dagger,
/// tested on transfer matrices to 1e-10.
std::vector<Matrix> commuting_cliffords(const NoisyChannel& ch);

/// Map on stabilizer-frame inputs that carries optimal decompositions to
/// optimal decompositions of the same one-norm: conjugation by a commuting
/// Clifford, or Hermitian conjugation (dyadic frame only).
struct InputSymmetry {
  bool dagger = false;
  KetAction action;
};

std::vector<InputSymmetry> stabilizer_frame_symmetries(const NoisyChannel& ch, FrameKind kind);

/// Image of a frame index (diag: ket index; dyad: ket * n_kets + bra).
std::size_t apply_symmetry(const InputSymmetry& g, FrameKind kind, std::size_t n_kets, std::size_t index);

/// Given a decomposition of C(F_x), returns the decomposition of C(F_{g x}).
Decomposition transform_decomposition(const InputSymmetry& g, FrameKind kind, std::size_t n_kets, std::size_t input,
                                      const Decomposition& dec);

/// Inputs grouped into orbits; `steps` lists every non-representative input
/// after the input it is derived from.
struct OrbitPlan {
  struct Step {
    std::size_t input;
    std::size_t source;
    std::size_t symmetry;
  };
  std::vector<std::size_t> representatives;
  std::vector<Step> steps;
};
OrbitPlan plan_orbits(const std::vector<InputSymmetry>& symmetries, FrameKind kind, std::size_t n_kets);

}  // namespace framesim
