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

#include "framesim/channel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>

#include "framesim/pauli.hpp"

namespace framesim {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string format_strength(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", p);
  return buf;
}

bool is_zero(const Matrix& m) { return (m.array() == Complex{0.0, 0.0}).all(); }

}  // namespace

NoiseModel parse_noise_model(std::string_view text) {
  const std::string s = lower(text);
  if (s == "depolarizing" || s == "depolarising" || s == "depol") return NoiseModel::Depolarizing;
  if (s == "dephasing" || s == "deph") return NoiseModel::Dephasing;
  if (s == "amplitude_damping" || s == "amplitude-damping" || s == "ad") return NoiseModel::AmplitudeDamping;
  throw std::invalid_argument("unknown noise model \"" + std::string(text) + "\"");
}

std::string to_string(NoiseModel model) {
  switch (model) {
    case NoiseModel::Depolarizing:
      return "depolarizing";
    case NoiseModel::Dephasing:
      return "dephasing";
    case NoiseModel::AmplitudeDamping:
      return "amplitude_damping";
  }
  return "?";
}

double max_noise_strength(NoiseModel model) { return model == NoiseModel::Depolarizing ? 1.0 / 3.0 : 1.0; }

NoisyChannel::NoisyChannel(int qubits, std::vector<Matrix> kraus, std::string label, bool require_trace_preserving)
    : qubits_(qubits), label_(std::move(label)) {
  if (qubits < 0 || qubits > 3) throw std::invalid_argument("local channels act on at most 3 qubits");
  const Eigen::Index side = Eigen::Index{1} << qubits;
  for (Matrix& k : kraus) {
    if (k.rows() != side || k.cols() != side) throw std::invalid_argument("Kraus operator has the wrong shape");
    if (!is_zero(k)) kraus_.push_back(std::move(k));
  }
  if (kraus_.empty()) kraus_.push_back(Matrix::Zero(side, side));
  if (require_trace_preserving && trace_preservation_defect() > 1e-12) {
    throw std::invalid_argument("channel " + label_ + " is not trace preserving to 1e-12");
  }
  const Eigen::Index n = Eigen::Index{1} << (2 * qubits);
  ptm_.resize(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    ptm_.col(x) = pauli_vectorize(apply(pauli_from_index(static_cast<std::size_t>(x), qubits).to_dense()));
  }
}

double NoisyChannel::trace_preservation_defect() const {
  const Eigen::Index side = Eigen::Index{1} << qubits_;
  Matrix sum = Matrix::Zero(side, side);
  for (const Matrix& k : kraus_) sum += k.adjoint() * k;
  sum -= Matrix::Identity(side, side);
  return sum.cwiseAbs().maxCoeff();
}

DenseOperator NoisyChannel::apply(const DenseOperator& op) const {
  if (op.qubits() != qubits_) throw std::invalid_argument("channel/operator qubit counts differ");
  Matrix out = Matrix::Zero(op.matrix().rows(), op.matrix().cols());
  for (const Matrix& k : kraus_) out += k * op.matrix() * k.adjoint();
  return DenseOperator(qubits_, std::move(out));
}

std::string canonical_gate_name(std::string_view name) {
  std::string s = lower(name);
  if (s == "h") return "H";
  if (s == "s") return "S";
  if (s == "t") return "T";
  if (s == "x") return "X";
  if (s == "y") return "Y";
  if (s == "z") return "Z";
  if (s == "i" || s == "id" || s == "identity") return "I";
  if (s == "cnot" || s == "cx") return "CNOT";
  if (s == "cz") return "CZ";
  throw std::invalid_argument("unknown gate \"" + std::string(name) + "\"");
}

int gate_arity(std::string_view name) {
  const std::string g = canonical_gate_name(name);
  return (g == "CNOT" || g == "CZ") ? 2 : 1;
}

bool is_clifford_gate(std::string_view name) { return canonical_gate_name(name) != "T"; }

Matrix gate_matrix(std::string_view name) {
  const std::string g = canonical_gate_name(name);
  const Complex i{0.0, 1.0};
  Matrix m;
  if (g == "CNOT" || g == "CZ") {
    m = Matrix::Identity(4, 4);
    if (g == "CNOT") {
      m(2, 2) = 0.0;
      m(3, 3) = 0.0;
      m(2, 3) = 1.0;
      m(3, 2) = 1.0;
    } else {
      m(3, 3) = -1.0;
    }
    return m;
  }
  if (g == "I") return Matrix::Identity(2, 2);
  if (g == "X") return pauli_matrix(PauliLetter::X);
  if (g == "Y") return pauli_matrix(PauliLetter::Y);
  if (g == "Z") return pauli_matrix(PauliLetter::Z);
  m = Matrix::Zero(2, 2);
  if (g == "H") {
    const double r = 1.0 / std::numbers::sqrt2;
    m << r, r, r, -r;
  } else if (g == "S") {
    m(0, 0) = 1.0;
    m(1, 1) = i;
  } else {
    m(0, 0) = 1.0;
    m(1, 1) = std::polar(1.0, std::numbers::pi / 4);
  }
  return m;
}

NoisyChannel make_gate(std::string_view name) {
  const std::string g = canonical_gate_name(name);
  return NoisyChannel(gate_arity(g), {gate_matrix(g)}, g);
}

NoisyChannel make_noise(NoiseModel model, double strength) {
  if (!(strength >= 0.0 && strength <= max_noise_strength(model))) {
    throw std::invalid_argument(to_string(model) + " strength " + format_strength(strength) + " outside [0, " +
                                format_strength(max_noise_strength(model)) + "]");
  }
  std::vector<Matrix> kraus;
  const Matrix id = Matrix::Identity(2, 2);
  switch (model) {
    case NoiseModel::Depolarizing: {
      const double s = std::sqrt(strength);
      kraus.push_back(std::sqrt(1.0 - 3.0 * strength) * id);
      kraus.push_back(s * pauli_matrix(PauliLetter::X));
      kraus.push_back(s * pauli_matrix(PauliLetter::Y));
      kraus.push_back(s * pauli_matrix(PauliLetter::Z));
      break;
    }
    case NoiseModel::Dephasing:
      kraus.push_back(std::sqrt(1.0 - strength) * id);
      kraus.push_back(std::sqrt(strength) * pauli_matrix(PauliLetter::Z));
      break;
    case NoiseModel::AmplitudeDamping: {
      Matrix k1 = Matrix::Zero(2, 2);
      k1(0, 0) = 1.0;
      k1(1, 1) = std::sqrt(1.0 - strength);
      Matrix k2 = Matrix::Zero(2, 2);
      k2(0, 1) = std::sqrt(strength);
      kraus.push_back(std::move(k1));
      kraus.push_back(std::move(k2));
      break;
    }
  }
  return NoisyChannel(1, std::move(kraus), to_string(model) + "(" + format_strength(strength) + ")");
}

NoisyChannel compose(const NoisyChannel& second, const NoisyChannel& first) {
  if (second.qubits() != first.qubits()) throw std::invalid_argument("compose: qubit counts differ");
  std::vector<Matrix> kraus;
  kraus.reserve(second.kraus().size() * first.kraus().size());
  for (const Matrix& a : second.kraus()) {
    for (const Matrix& b : first.kraus()) kraus.push_back(a * b);
  }
  std::string label = second.label() + "*" + first.label();
  const bool tp = first.trace_preservation_defect() <= 1e-12 && second.trace_preservation_defect() <= 1e-12;
  return NoisyChannel(first.qubits(), std::move(kraus), std::move(label), tp);
}

NoisyChannel tensor(const NoisyChannel& lhs, const NoisyChannel& rhs) {
  std::vector<Matrix> kraus;
  kraus.reserve(lhs.kraus().size() * rhs.kraus().size());
  for (const Matrix& a : lhs.kraus()) {
    for (const Matrix& b : rhs.kraus()) kraus.push_back(kron(a, b));
  }
  const bool tp = lhs.trace_preservation_defect() <= 1e-12 && rhs.trace_preservation_defect() <= 1e-12;
  return NoisyChannel(lhs.qubits() + rhs.qubits(), std::move(kraus), lhs.label() + "x" + rhs.label(), tp);
}

NoisyChannel compose_noisy_gate(const NoisyChannel& gate, const NoisyChannel& noise, bool per_qubit) {
  if (per_qubit) {
    if (noise.qubits() != 1) throw std::invalid_argument("per-qubit noise must be a single-qubit channel");
    NoisyChannel full = noise;
    for (int k = 1; k < gate.qubits(); ++k) full = tensor(full, noise);
    NoisyChannel out = compose(full, gate);
    return NoisyChannel(out.qubits(), out.kraus(), gate.label() + "+" + noise.label());
  }
  if (noise.qubits() != gate.qubits()) throw std::invalid_argument("noise and gate act on different qubit counts");
  NoisyChannel out = compose(noise, gate);
  return NoisyChannel(out.qubits(), out.kraus(), gate.label() + "+" + noise.label());
}

NoisyChannel adjoint(const NoisyChannel& ch) {
  std::vector<Matrix> kraus;
  kraus.reserve(ch.kraus().size());
  for (const Matrix& k : ch.kraus()) kraus.push_back(k.adjoint());
  return NoisyChannel(ch.qubits(), std::move(kraus), "adj(" + ch.label() + ")", false);
}

DenseOperator apply_channel(const NoisyChannel& ch, std::span<const int> targets, const DenseOperator& op) {
  if (static_cast<int>(targets.size()) != ch.qubits()) {
    throw std::invalid_argument("channel acts on " + std::to_string(ch.qubits()) + " qubits but " +
                                std::to_string(targets.size()) + " targets were given");
  }
  const int n = op.qubits();
  Matrix out = Matrix::Zero(op.matrix().rows(), op.matrix().cols());
  for (const Matrix& k : ch.kraus()) {
    Matrix term = op.matrix();
    apply_left(k, targets, n, term);
    apply_right_adjoint(k, targets, n, term);
    out += term;
  }
  return DenseOperator(n, std::move(out));
}

NoisyChannel make_noisy_gate(std::string_view gate, std::optional<NoiseModel> noise, double strength) {
  NoisyChannel g = make_gate(gate);
  if (!noise) return g;
  return compose_noisy_gate(g, make_noise(*noise, strength), true);
}

}  // namespace framesim
