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

#include "framesim/symmetry.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <mutex>
#include <numeric>

#include "framesim/pauli.hpp"
#include "framesim/stabilizer.hpp"

namespace framesim {

namespace {

// Conjugation by a Clifford maps Paulis to signed Paulis: U P_x U^dagger = sign[x] P_image[x].
struct SignedPermutation {
  std::vector<std::size_t> image;
  std::vector<double> sign;
};

SignedPermutation pauli_action(const Matrix& u, int q) {
  const std::size_t n = std::size_t{1} << (2 * q);
  SignedPermutation sp;
  sp.image.resize(n);
  sp.sign.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    const DenseOperator p = pauli_from_index(x, q).to_dense();
    const Vector v = pauli_vectorize(DenseOperator(q, u * p.matrix() * u.adjoint()));
    Eigen::Index best = 0;
    v.cwiseAbs().maxCoeff(&best);
    sp.image[x] = static_cast<std::size_t>(best);
    sp.sign[x] = v(best).real() > 0.0 ? 1.0 : -1.0;
  }
  return sp;
}

const std::vector<SignedPermutation>& group_pauli_actions(int q) {
  static std::once_flag flags[2];
  static std::array<std::vector<SignedPermutation>, 2> cache;
  const auto k = static_cast<std::size_t>(q - 1);
  std::call_once(flags[k], [&] {
    for (const Matrix& u : clifford_group(q)) cache[k].push_back(pauli_action(u, q));
  });
  return cache[k];
}

Complex element_phase(const KetAction& a, FrameKind kind, std::size_t n_kets, std::size_t index) {
  if (kind == FrameKind::DiagStab) return 1.0;
  return a.phase[index / n_kets] * std::conj(a.phase[index % n_kets]);
}

}  // namespace

KetAction ket_action(const Matrix& u, int qubits) {
  const StabilizerKets& kets = StabilizerKets::get(qubits);
  KetAction a;
  a.perm.resize(kets.size());
  a.phase.resize(kets.size());
  for (std::size_t k = 0; k < kets.size(); ++k) {
    const auto match = kets.find(u * kets.ket(k));
    if (!match) throw std::logic_error("unitary does not preserve the stabilizer kets");
    a.perm[k] = static_cast<std::uint32_t>(match->index);
    a.phase[k] = match->phase;
  }
  return a;
}

std::vector<Matrix> commuting_cliffords(const NoisyChannel& ch) {
  const int q = ch.qubits();
  const Matrix& r = ch.ptm();
  const auto n = static_cast<std::size_t>(r.rows());
  const auto& group = clifford_group(q);
  const auto& actions = group_pauli_actions(q);
  std::vector<Matrix> out;
  for (std::size_t g = 0; g < group.size(); ++g) {
    const SignedPermutation& sp = actions[g];
    // R R_U = R_U R  <=>  sign[x] R(image[y], image[x]) = sign[y] R(y, x)
    bool commutes = true;
    for (std::size_t x = 0; x < n && commutes; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const Complex lhs = sp.sign[x] * r(static_cast<Eigen::Index>(sp.image[y]), static_cast<Eigen::Index>(sp.image[x]));
        const Complex rhs = sp.sign[y] * r(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
        if (std::abs(lhs - rhs) > 1e-10) {
          commutes = false;
          break;
        }
      }
    }
    if (commutes) out.push_back(group[g]);
  }
  return out;
}

std::vector<InputSymmetry> stabilizer_frame_symmetries(const NoisyChannel& ch, FrameKind kind) {
  if (is_product_shaped(kind)) throw std::invalid_argument("symmetry reduction covers stabilizer frames only");
  std::vector<InputSymmetry> out;
  for (const Matrix& u : commuting_cliffords(ch)) {
    InputSymmetry g;
    g.action = ket_action(u, ch.qubits());
    out.push_back(std::move(g));
  }
  if (kind == FrameKind::DyadStab) {
    // Kraus maps preserve Hermitian conjugation: C(F^dagger) = C(F)^dagger.
    InputSymmetry d;
    d.dagger = true;
    out.push_back(std::move(d));
  }
  return out;
}

std::size_t apply_symmetry(const InputSymmetry& g, FrameKind kind, std::size_t n_kets, std::size_t index) {
  if (g.dagger) return kind == FrameKind::DyadStab ? (index % n_kets) * n_kets + index / n_kets : index;
  if (kind == FrameKind::DiagStab) return g.action.perm[index];
  return static_cast<std::size_t>(g.action.perm[index / n_kets]) * n_kets + g.action.perm[index % n_kets];
}

Decomposition transform_decomposition(const InputSymmetry& g, FrameKind kind, std::size_t n_kets, std::size_t input,
                                      const Decomposition& dec) {
  std::vector<std::pair<std::size_t, Complex>> terms;
  terms.reserve(dec.support.size());
  if (g.dagger) {
    for (std::size_t k = 0; k < dec.support.size(); ++k) {
      terms.emplace_back(apply_symmetry(g, kind, n_kets, dec.support[k]), std::conj(dec.coeffs[k]));
    }
  } else {
    // U F_y U^dagger = c(y) F_{g y}  =>  C(F_{g x}) = sum_y lambda_y c(y) / c(x) F_{g y}
    const Complex cx = element_phase(g.action, kind, n_kets, input);
    for (std::size_t k = 0; k < dec.support.size(); ++k) {
      const std::size_t y = dec.support[k];
      terms.emplace_back(apply_symmetry(g, kind, n_kets, y),
                         dec.coeffs[k] * element_phase(g.action, kind, n_kets, y) / cx);
    }
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Decomposition out;
  for (const auto& [idx, c] : terms) {
    out.support.push_back(idx);
    out.coeffs.push_back(c);
  }
  out.refresh();
  return out;
}

OrbitPlan plan_orbits(const std::vector<InputSymmetry>& symmetries, FrameKind kind, std::size_t n_kets) {
  const std::size_t n = kind == FrameKind::DyadStab ? n_kets * n_kets : n_kets;
  OrbitPlan plan;
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    seen[start] = true;
    plan.representatives.push_back(start);
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t s = 0; s < symmetries.size(); ++s) {
        const std::size_t v = apply_symmetry(symmetries[s], kind, n_kets, u);
        if (seen[v]) continue;
        seen[v] = true;
        plan.steps.push_back({v, u, s});
        queue.push_back(v);
      }
    }
  }
  return plan;
}

}  // namespace framesim
