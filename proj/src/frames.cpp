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

#include "framesim/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "framesim/stabilizer.hpp"

namespace framesim {

namespace {

constexpr std::string_view kStateLetters = "01+-rl";

std::string normalize_name(std::string_view text) {
  std::string s(text);
  for (char& c : s) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c == '_') c = '-';
  }
  return s;
}

void check_register(int n, int max_n) {
  if (n < 1 || n > max_n) {
    throw UnsupportedError("register of " + std::to_string(n) + " qubits outside [1, " + std::to_string(max_n) + "]");
  }
}

// Saturates at SIZE_MAX for registers whose frame does not fit an index.
std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int k = 0; k < exp; ++k) {
    if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base) return std::numeric_limits<std::size_t>::max();
    r *= base;
  }
  return r;
}

Vector haar_ket(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(2);
  for (Eigen::Index i = 0; i < 2; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex{re, im};
  }
  v /= v.norm();
  return canonicalize_phase(v);
}

}  // namespace

FrameKind parse_frame_kind(std::string_view text) {
  const std::string s = normalize_name(text);
  if (s == "diag-stab" || s == "diagstab" || s == "diagonal") return FrameKind::DiagStab;
  if (s == "dyad-stab" || s == "dyadstab" || s == "dyadic") return FrameKind::DyadStab;
  if (s == "product") return FrameKind::Product;
  if (s == "pauli") return FrameKind::Pauli;
  if (s == "ext-pauli" || s == "extpauli" || s == "extended-pauli") return FrameKind::ExtPauli;
  throw std::invalid_argument("unknown frame kind \"" + std::string(text) + "\"");
}

std::string to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::DiagStab:
      return "diag-stab";
    case FrameKind::DyadStab:
      return "dyad-stab";
    case FrameKind::Product:
      return "product";
    case FrameKind::Pauli:
      return "pauli";
    case FrameKind::ExtPauli:
      return "ext-pauli";
  }
  return "?";
}

Picture parse_picture(std::string_view text) {
  const std::string s = normalize_name(text);
  if (s == "schrodinger" || s == "schroedinger" || s == "s") return Picture::Schrodinger;
  if (s == "heisenberg" || s == "h") return Picture::Heisenberg;
  throw std::invalid_argument("unknown picture \"" + std::string(text) + "\"");
}

std::string to_string(Picture picture) { return picture == Picture::Schrodinger ? "schrodinger" : "heisenberg"; }

Picture natural_picture(FrameKind kind) {
  return (kind == FrameKind::Pauli || kind == FrameKind::ExtPauli) ? Picture::Heisenberg : Picture::Schrodinger;
}

ProductState ProductState::parse(std::string_view letters) {
  if (letters.empty()) throw std::invalid_argument("empty product state");
  for (char c : letters) {
    if (kStateLetters.find(c) == std::string_view::npos) {
      throw UnsupportedError("initial state letter '" + std::string(1, c) +
                             "' is not a single-qubit stabilizer state (use 0, 1, +, -, r, l)");
    }
  }
  ProductState s;
  s.letters_ = std::string(letters);
  return s;
}

int ProductState::local_index(int k) const {
  return static_cast<int>(kStateLetters.find(letters_.at(static_cast<std::size_t>(k))));
}

const Vector& ProductState::local_ket(int k) const {
  return StabilizerKets::get(1).ket(static_cast<std::size_t>(local_index(k)));
}

Vector ProductState::ket() const {
  Vector v = Vector::Ones(1);
  for (int k = 0; k < size(); ++k) v = kron(v, local_ket(k));
  return v;
}

DenseOperator ProductState::density() const { return DenseOperator::projector(ket()); }

FrameCatalog FrameCatalog::diag_stab(int n) {
  check_register(n, 3);
  FrameCatalog c;
  c.kind_ = FrameKind::DiagStab;
  c.n_qubits_ = n;
  return c;
}

FrameCatalog FrameCatalog::dyad_stab(int n) {
  FrameCatalog c = diag_stab(n);
  c.kind_ = FrameKind::DyadStab;
  return c;
}

FrameCatalog FrameCatalog::product(int n, int extra_random, std::uint64_t seed) {
  if (extra_random < 0) throw std::invalid_argument("extra_random must be nonnegative");
  std::vector<Vector> kets = StabilizerKets::get(1).kets();
  std::mt19937_64 rng(seed);
  for (int k = 0; k < extra_random; ++k) kets.push_back(haar_ket(rng));
  return product_from_kets(n, std::move(kets), extra_random, seed);
}

FrameCatalog FrameCatalog::product_from_kets(int n, std::vector<Vector> local_kets, int extra_random,
                                             std::uint64_t seed) {
  check_register(n, kMaxProductQubits);
  if (local_kets.size() < 6) throw std::invalid_argument("product local set must contain the 6 stabilizer states");
  FrameCatalog c;
  c.kind_ = FrameKind::Product;
  c.n_qubits_ = n;
  c.extra_random_ = extra_random;
  c.seed_ = seed;
  for (Vector& k : local_kets) {
    if (k.size() != 2 || std::abs(k.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("product local states must be normalized single-qubit kets");
    }
    c.local_set_.push_back(DenseOperator::projector(k));
  }
  c.local_kets_ = std::move(local_kets);
  c.finish_local_set();
  return c;
}

FrameCatalog FrameCatalog::pauli(int n) {
  check_register(n, kMaxProductQubits);
  FrameCatalog c;
  c.kind_ = FrameKind::Pauli;
  c.n_qubits_ = n;
  for (int l = 0; l < 4; ++l) c.local_set_.push_back(DenseOperator::hermitian(1, pauli_matrix(l)));
  c.finish_local_set();
  return c;
}

FrameCatalog FrameCatalog::ext_pauli(int n, double a) {
  check_register(n, kMaxProductQubits);
  FrameCatalog c;
  c.kind_ = FrameKind::ExtPauli;
  c.n_qubits_ = n;
  c.hyper_a_ = a;
  c.local_set_ = build_ext_pauli_local_set(a);
  c.finish_local_set();
  return c;
}

std::vector<DenseOperator> build_ext_pauli_local_set(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("extended Pauli hyperparameter a must lie in [0, 1]");
  std::vector<DenseOperator> set;
  for (int l = 0; l < 4; ++l) set.push_back(DenseOperator::hermitian(1, pauli_matrix(l)));
  const double s = a / std::numbers::sqrt2;
  set.push_back(DenseOperator::hermitian(1, s * (pauli_matrix(1) + pauli_matrix(2))));
  set.push_back(DenseOperator::hermitian(1, s * (pauli_matrix(1) - pauli_matrix(2))));
  return set;
}

FrameCatalog build_product_catalog(int extra_random, std::uint64_t seed, int n_qubits) {
  return FrameCatalog::product(n_qubits, extra_random, seed);
}

void FrameCatalog::finish_local_set() {
  local_traces_.clear();
  for (const DenseOperator& l : local_set_) {
    const Vector v = pauli_vectorize(l);
    local_traces_.push_back({2.0 * v(0), 2.0 * v(1), 2.0 * v(2), 2.0 * v(3)});
  }
}

FrameCatalog FrameCatalog::with_qubits(int n) const {
  if (is_product_shaped(kind_)) {
    check_register(n, kMaxProductQubits);
  } else {
    check_register(n, 3);
  }
  FrameCatalog c = *this;
  c.n_qubits_ = n;
  return c;
}

const std::vector<Vector>& FrameCatalog::stabilizer_kets() const {
  if (is_product_shaped(kind_)) throw std::logic_error("stabilizer_kets on a product-shaped frame");
  return StabilizerKets::get(n_qubits_).kets();
}

std::size_t FrameCatalog::local_size() const {
  return is_product_shaped(kind_) ? local_set_.size() : stabilizer_kets().size();
}

std::size_t FrameCatalog::size() const {
  switch (kind_) {
    case FrameKind::DiagStab:
      return local_size();
    case FrameKind::DyadStab:
      return local_size() * local_size();
    default:
      return ipow(local_set_.size(), n_qubits_);
  }
}

FrameElementLabel FrameCatalog::label(std::size_t index) const {
  if (index >= size()) throw std::invalid_argument("frame index " + std::to_string(index) + " out of range");
  FrameElementLabel l{kind_, {}};
  if (kind_ == FrameKind::DiagStab) {
    l.payload = {static_cast<std::uint32_t>(index)};
  } else if (kind_ == FrameKind::DyadStab) {
    const std::size_t n = local_size();
    l.payload = {static_cast<std::uint32_t>(index / n), static_cast<std::uint32_t>(index % n)};
  } else {
    const std::size_t base = local_set_.size();
    l.payload.assign(static_cast<std::size_t>(n_qubits_), 0);
    for (int k = n_qubits_ - 1; k >= 0; --k) {
      l.payload[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(index % base);
      index /= base;
    }
  }
  return l;
}

std::size_t FrameCatalog::index(const FrameElementLabel& label) const {
  validate(label);
  if (kind_ == FrameKind::DiagStab) return label.payload[0];
  if (kind_ == FrameKind::DyadStab) return label.payload[0] * local_size() + label.payload[1];
  std::size_t x = 0;
  for (std::uint32_t l : label.payload) x = x * local_set_.size() + l;
  return x;
}

void FrameCatalog::validate(const FrameElementLabel& label) const {
  if (label.kind != kind_) {
    throw std::invalid_argument("label of kind " + to_string(label.kind) + " used with a " + to_string(kind_) +
                                " catalog");
  }
  std::size_t expected = 1;
  if (kind_ == FrameKind::DyadStab) expected = 2;
  if (is_product_shaped(kind_)) expected = static_cast<std::size_t>(n_qubits_);
  if (label.payload.size() != expected) throw std::invalid_argument("label payload has the wrong length");
  const std::size_t bound = local_size();
  for (std::uint32_t v : label.payload) {
    if (v >= bound) throw std::invalid_argument("label index " + std::to_string(v) + " out of range");
  }
}

DenseOperator FrameCatalog::element(const FrameElementLabel& label) const {
  validate(label);
  if (kind_ == FrameKind::DiagStab) return DenseOperator::projector(stabilizer_kets()[label.payload[0]]);
  if (kind_ == FrameKind::DyadStab) {
    return DenseOperator::dyad(stabilizer_kets()[label.payload[0]], stabilizer_kets()[label.payload[1]]);
  }
  if (n_qubits_ > kMaxDenseQubits) throw UnsupportedError("dense element beyond the dense register limit");
  DenseOperator out = local_set_[label.payload[0]];
  for (std::size_t k = 1; k < label.payload.size(); ++k) out = out.kron(local_set_[label.payload[k]]);
  return out;
}

std::vector<DenseOperator> FrameCatalog::elements() const {
  const std::size_t count = size();
  if (count > 4096) throw UnsupportedError("catalog of " + std::to_string(count) + " elements is not enumerated densely");
  std::vector<DenseOperator> out;
  out.reserve(count);
  for (std::size_t x = 0; x < count; ++x) out.push_back(element(x));
  return out;
}

nlohmann::json FrameCatalog::manifest() const {
  nlohmann::json j;
  j["kind"] = to_string(kind_);
  j["n_qubits"] = n_qubits_;
  if (kind_ == FrameKind::ExtPauli) j["a"] = hyper_a_;
  if (kind_ == FrameKind::Product) {
    j["extra_random"] = extra_random_;
    j["seed"] = seed_;
    nlohmann::json states = nlohmann::json::array();
    for (const Vector& k : local_kets_) {
      states.push_back({{k(0).real(), k(0).imag()}, {k(1).real(), k(1).imag()}});
    }
    j["local_states"] = std::move(states);
  }
  j["size"] = size();
  return j;
}

FrameCatalog FrameCatalog::from_manifest(const nlohmann::json& j) {
  const FrameKind kind = parse_frame_kind(j.at("kind").get<std::string>());
  const int n = j.value("n_qubits", 1);
  switch (kind) {
    case FrameKind::DiagStab:
      return diag_stab(n);
    case FrameKind::DyadStab:
      return dyad_stab(n);
    case FrameKind::Pauli:
      return pauli(n);
    case FrameKind::ExtPauli:
      return ext_pauli(n, j.at("a").get<double>());
    case FrameKind::Product:
      break;
  }
  const int extra = j.value("extra_random", 0);
  const auto seed = j.value<std::uint64_t>("seed", 0);
  if (!j.contains("local_states")) return product(n, extra, seed);
  std::vector<Vector> kets;
  for (const auto& s : j.at("local_states")) {
    if (s.size() != 2) throw std::invalid_argument("local state must have two amplitudes");
    Vector v(2);
    for (std::size_t i = 0; i < 2; ++i) v(static_cast<Eigen::Index>(i)) = Complex{s[i][0].get<double>(), s[i][1].get<double>()};
    kets.push_back(std::move(v));
  }
  return product_from_kets(n, std::move(kets), extra, seed);
}

Complex eval_observable_overlap(const FrameCatalog& catalog, const FrameElementLabel& label, const PauliString& obs) {
  catalog.validate(label);
  if (static_cast<int>(obs.size()) != catalog.n_qubits()) {
    throw std::invalid_argument("observable length does not match the catalog register");
  }
  if (is_product_shaped(catalog.kind())) {
    Complex acc = obs.phase_factor();
    const auto& traces = catalog.local_pauli_traces();
    for (std::size_t k = 0; k < obs.size(); ++k) acc *= traces[label.payload[k]][static_cast<int>(obs[k])];
    return acc;
  }
  const auto& kets = catalog.stabilizer_kets();
  const Vector& ket = kets[label.payload[0]];
  const Vector& bra = kets[label.payload.size() == 2 ? label.payload[1] : label.payload[0]];
  // tr[O |ket><bra|] = <bra|O|ket>
  return bra.dot(obs.to_dense().matrix() * ket);
}

Complex eval_state_overlap(const FrameCatalog& catalog, const FrameElementLabel& label, const ProductState& state) {
  catalog.validate(label);
  if (state.size() != catalog.n_qubits()) {
    throw std::invalid_argument("initial state length does not match the catalog register");
  }
  if (is_product_shaped(catalog.kind())) {
    Complex acc = 1.0;
    for (int k = 0; k < state.size(); ++k) {
      const Vector& s = state.local_ket(k);
      acc *= s.dot(catalog.local_set()[label.payload[static_cast<std::size_t>(k)]].matrix() * s);
    }
    return acc;
  }
  const auto& kets = catalog.stabilizer_kets();
  const Vector& ket = kets[label.payload[0]];
  const Vector& bra = kets[label.payload.size() == 2 ? label.payload[1] : label.payload[0]];
  const Vector s = state.ket();
  // <s|ket><bra|s>
  return s.dot(ket) * bra.dot(s);
}

}  // namespace framesim
