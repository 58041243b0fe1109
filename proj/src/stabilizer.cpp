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

#include "framesim/stabilizer.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <unordered_set>

#include "framesim/channel.hpp"

namespace framesim {

namespace {

// Encodes a phase-canonical stabilizer ket: each amplitude relative to the
// first nonzero one is 0, 1, i, -1 or -i (base-5 digit).
std::optional<std::uint64_t> ket_key(const Vector& canonical) {
  Eigen::Index first = -1;
  for (Eigen::Index i = 0; i < canonical.size(); ++i) {
    if (std::abs(canonical(i)) > 1e-6) {
      first = i;
      break;
    }
  }
  if (first < 0) return std::nullopt;
  const Complex ref = canonical(first);
  std::uint64_t key = 0;
  for (Eigen::Index i = 0; i < canonical.size(); ++i) {
    const Complex r = canonical(i) / ref;
    std::uint64_t digit = 0;
    if (std::abs(r) > 0.5) {
      if (std::abs(r - Complex{1, 0}) < 0.5) digit = 1;
      else if (std::abs(r - Complex{0, 1}) < 0.5) digit = 2;
      else if (std::abs(r - Complex{-1, 0}) < 0.5) digit = 3;
      else if (std::abs(r - Complex{0, -1}) < 0.5) digit = 4;
      else return std::nullopt;
    }
    key = key * 5 + digit;
  }
  return key;
}

std::vector<std::pair<Matrix, std::vector<int>>> generators(int q) {
  std::vector<std::pair<Matrix, std::vector<int>>> gens;
  for (int k = 0; k < q; ++k) {
    gens.push_back({gate_matrix("H"), {k}});
    gens.push_back({gate_matrix("S"), {k}});
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (a != b) gens.push_back({gate_matrix("CNOT"), {a, b}});
    }
  }
  return gens;
}

std::string unitary_key(const Matrix& u) {
  std::string key;
  key.reserve(static_cast<std::size_t>(u.size()) * 16);
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      key += std::to_string(std::llround(u(r, c).real() * 1e8));
      key += ',';
      key += std::to_string(std::llround(u(r, c).imag() * 1e8));
      key += ';';
    }
  }
  return key;
}

Matrix canonicalize_unitary(const Matrix& u) {
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      const double mag = std::abs(u(r, c));
      if (mag > 1e-6) return u * (std::conj(u(r, c)) / mag);
    }
  }
  return u;
}

}  // namespace

Vector canonicalize_phase(const Vector& v, Complex* removed) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-9) {
      const Complex phase = v(i) / mag;
      if (removed) *removed = phase;
      return v * std::conj(phase);
    }
  }
  if (removed) *removed = 1.0;
  return v;
}

StabilizerKets::StabilizerKets(int qubits) : qubits_(qubits) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  auto insert = [this](const Vector& v) {
    const Vector c = canonicalize_phase(v);
    const auto key = ket_key(c);
    if (!key || index_.contains(*key)) return false;
    index_.emplace(*key, kets_.size());
    kets_.push_back(c);
    return true;
  };
  if (qubits == 1) {
    const double r = 1.0 / std::numbers::sqrt2;
    const Complex i{0.0, 1.0};
    insert(Vector{{1.0, 0.0}});
    insert(Vector{{0.0, 1.0}});
    insert(Vector{{r, r}});
    insert(Vector{{r, -r}});
    insert(Vector{{r, r * i}});
    insert(Vector{{r, -r * i}});
    return;
  }
  Vector zero = Vector::Zero(dim);
  zero(0) = 1.0;
  insert(zero);
  const auto gens = generators(qubits);
  for (std::size_t head = 0; head < kets_.size(); ++head) {
    for (const auto& [g, targets] : gens) {
      Vector v = kets_[head];
      apply_to_ket(g, targets, qubits, v);
      insert(v);
    }
  }
}

const StabilizerKets& StabilizerKets::get(int qubits) {
  if (qubits < 1 || qubits > 3) throw UnsupportedError("stabilizer kets are tabulated for 1 to 3 qubits");
  static std::once_flag flags[3];
  static std::array<std::unique_ptr<StabilizerKets>, 3> cache;
  const auto k = static_cast<std::size_t>(qubits - 1);
  std::call_once(flags[k], [&] { cache[k].reset(new StabilizerKets(qubits)); });
  return *cache[k];
}

std::optional<StabilizerMatch> StabilizerKets::find(const Vector& v) const {
  if (v.size() != (Eigen::Index{1} << qubits_)) return std::nullopt;
  Complex phase;
  const Vector c = canonicalize_phase(v, &phase);
  const auto key = ket_key(c);
  if (!key) return std::nullopt;
  const auto it = index_.find(*key);
  if (it == index_.end()) return std::nullopt;
  if ((kets_[it->second] - c).cwiseAbs().maxCoeff() > 1e-9) return std::nullopt;
  return StabilizerMatch{it->second, phase};
}

std::vector<DenseOperator> enumerate_stabilizer_states(int q) {
  if (q < 1 || q > 2) throw UnsupportedError("stabilizer frames are enumerated for q in {1, 2}");
  std::vector<DenseOperator> out;
  for (const Vector& k : StabilizerKets::get(q).kets()) out.push_back(DenseOperator::projector(k));
  return out;
}

std::vector<DenseOperator> build_dyadic_catalog(int q) {
  if (q < 1 || q > 2) throw UnsupportedError("dyadic stabilizer frames are enumerated for q in {1, 2}");
  const auto& kets = StabilizerKets::get(q).kets();
  std::vector<DenseOperator> out;
  out.reserve(kets.size() * kets.size());
  for (const Vector& a : kets) {
    for (const Vector& b : kets) out.push_back(DenseOperator::dyad(a, b));
  }
  return out;
}

const std::vector<Matrix>& clifford_group(int q) {
  if (q < 1 || q > 2) throw UnsupportedError("Clifford groups are enumerated for q in {1, 2}");
  static std::once_flag flags[2];
  static std::array<std::vector<Matrix>, 2> cache;
  const auto k = static_cast<std::size_t>(q - 1);
  std::call_once(flags[k], [&] {
    const Eigen::Index dim = Eigen::Index{1} << q;
    std::vector<Matrix>& group = cache[k];
    std::unordered_set<std::string> seen;
    group.push_back(Matrix::Identity(dim, dim));
    seen.insert(unitary_key(group.back()));
    const auto gens = generators(q);
    for (std::size_t head = 0; head < group.size(); ++head) {
      for (const auto& [g, targets] : gens) {
        Matrix u = group[head];
        apply_left(g, targets, q, u);
        u = canonicalize_unitary(u);
        if (seen.insert(unitary_key(u)).second) group.push_back(std::move(u));
      }
    }
  });
  return cache[k];
}

}  // namespace framesim
