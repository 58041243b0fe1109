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

#include "framesim/pauli.hpp"

#include <array>

namespace framesim {

namespace {

constexpr Complex kI{0.0, 1.0};

const std::array<Matrix, 4>& pauli_table() {
  static const std::array<Matrix, 4> table = [] {
    std::array<Matrix, 4> t;
    t[0] = Matrix::Identity(2, 2);
    t[1] = Matrix::Zero(2, 2);
    t[1](0, 1) = 1.0;
    t[1](1, 0) = 1.0;
    t[2] = Matrix::Zero(2, 2);
    t[2](0, 1) = -kI;
    t[2](1, 0) = kI;
    t[3] = Matrix::Zero(2, 2);
    t[3](0, 0) = 1.0;
    t[3](1, 1) = -1.0;
    return t;
  }();
  return table;
}

// Single-qubit product table: a*b = i^phase(a,b) * letter(a,b).
int product_letter(int a, int b) { return a ^ b; }

int product_phase(int a, int b) {
  if (a == 0 || b == 0 || a == b) return 0;
  // XY = iZ, YZ = iX, ZX = iY
  return ((b - a + 3) % 3 == 1) ? 1 : 3;
}

inline bool x_bit(int code) { return code == 1 || code == 2; }

}  // namespace

const Matrix& pauli_matrix(PauliLetter letter) { return pauli_table()[static_cast<int>(letter)]; }

PauliString::PauliString(std::vector<PauliLetter> letters, int phase)
    : letters_(std::move(letters)), phase_(((phase % 4) + 4) % 4) {}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  std::vector<PauliLetter> letters;
  for (; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case 'I':
      case '_':
        letters.push_back(PauliLetter::I);
        break;
      case 'X':
        letters.push_back(PauliLetter::X);
        break;
      case 'Y':
        letters.push_back(PauliLetter::Y);
        break;
      case 'Z':
        letters.push_back(PauliLetter::Z);
        break;
      default:
        throw std::invalid_argument("invalid Pauli letter '" + std::string(1, text[pos]) + "' in \"" +
                                    std::string(text) + "\"");
    }
  }
  if (letters.empty()) throw std::invalid_argument("empty Pauli string");
  return PauliString(std::move(letters), phase);
}

Complex PauliString::phase_factor() const {
  static constexpr std::array<Complex, 4> f{Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}};
  return f[static_cast<std::size_t>(phase_)];
}

std::size_t PauliString::index() const {
  std::size_t x = 0;
  for (PauliLetter l : letters_) x = 4 * x + static_cast<std::size_t>(l);
  return x;
}

std::string PauliString::to_string() const {
  static constexpr std::array<const char*, 4> prefix{"+", "+i", "-", "-i"};
  std::string s = prefix[static_cast<std::size_t>(phase_)];
  for (PauliLetter l : letters_) s.push_back("IXYZ"[static_cast<int>(l)]);
  return s;
}

DenseOperator PauliString::to_dense() const {
  Matrix m = Matrix::Identity(1, 1);
  for (PauliLetter l : letters_) m = kron(m, pauli_matrix(l));
  m *= phase_factor();
  return DenseOperator(static_cast<int>(letters_.size()), std::move(m));
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Pauli product: lengths differ");
  std::vector<PauliLetter> letters(a.size());
  int phase = a.phase_ + b.phase_;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const int la = static_cast<int>(a.letters_[k]);
    const int lb = static_cast<int>(b.letters_[k]);
    letters[k] = static_cast<PauliLetter>(product_letter(la, lb));
    phase += product_phase(la, lb);
  }
  return PauliString(std::move(letters), phase);
}

PauliString pauli_from_index(std::size_t index, int qubits) {
  std::vector<PauliLetter> letters(static_cast<std::size_t>(qubits));
  for (int k = qubits - 1; k >= 0; --k) {
    letters[static_cast<std::size_t>(k)] = static_cast<PauliLetter>(index % 4);
    index /= 4;
  }
  return PauliString(std::move(letters));
}

Vector pauli_vectorize(const DenseOperator& op) {
  // P_x is monomial: row j has its single nonzero at column j ^ flip(x),
  // with value prod_k (letter phase on bit j_k).
  const int q = op.qubits();
  const std::size_t dim = op.dim();
  const std::size_t count = std::size_t{1} << (2 * q);
  Vector out(static_cast<Eigen::Index>(count));
  const double scale = 1.0 / static_cast<double>(dim);
  const Matrix& a = op.matrix();
  for (std::size_t x = 0; x < count; ++x) {
    std::size_t flip = 0;
    std::vector<int> codes(static_cast<std::size_t>(q));
    std::size_t rest = x;
    for (int k = q - 1; k >= 0; --k) {
      codes[static_cast<std::size_t>(k)] = static_cast<int>(rest % 4);
      rest /= 4;
    }
    for (int k = 0; k < q; ++k) {
      if (x_bit(codes[static_cast<std::size_t>(k)])) flip |= std::size_t{1} << (q - 1 - k);
    }
    Complex acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      Complex entry = 1.0;
      for (int k = 0; k < q; ++k) {
        const int code = codes[static_cast<std::size_t>(k)];
        const bool bit = (j >> (q - 1 - k)) & 1U;
        if (code == 2) entry *= bit ? kI : -kI;  // <0|Y|1> = -i, <1|Y|0> = i
        else if (code == 3 && bit) entry = -entry;
      }
      // tr[P A] = sum_j P_{j, j^flip} A_{j^flip, j}
      acc += entry * a(static_cast<Eigen::Index>(j ^ flip), static_cast<Eigen::Index>(j));
    }
    out(static_cast<Eigen::Index>(x)) = acc * scale;
  }
  return out;
}

DenseOperator pauli_reconstruct(const Vector& coefficients) {
  int q = 0;
  while ((Eigen::Index{1} << (2 * q)) < coefficients.size()) ++q;
  if ((Eigen::Index{1} << (2 * q)) != coefficients.size()) {
    throw std::invalid_argument("coefficient vector length is not a power of 4");
  }
  DenseOperator out = DenseOperator::zero(q);
  for (Eigen::Index x = 0; x < coefficients.size(); ++x) {
    if (coefficients(x) == Complex{0.0, 0.0}) continue;
    out += coefficients(x) * pauli_from_index(static_cast<std::size_t>(x), q).to_dense();
  }
  return out;
}

}  // namespace framesim
