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

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace framesim {

using Complex = std::complex<double>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;

/// Largest register the dense routines accept (2^10 x 2^10 matrices).
inline constexpr int kMaxDenseQubits = 10;

/// Thrown when an operation is asked for something outside its documented limits.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Square complex matrix of side 2^q acting on q qubits.
///
/// Qubit 0 is the most significant tensor factor: basis index bit (q-1-k)
/// belongs to qubit k, so |10> means qubit 0 is in |1>.
class DenseOperator {
 public:
  DenseOperator();
  DenseOperator(int qubits, Matrix entries);

  static DenseOperator identity(int qubits);
  static DenseOperator zero(int qubits);
  /// |ket><ket|
  static DenseOperator projector(const Vector& ket);
  /// |ket><bra|
  static DenseOperator dyad(const Vector& ket, const Vector& bra);
  /// Validates Hermiticity to 1e-12 and sets the flag.
  static DenseOperator hermitian(int qubits, Matrix entries);

  int qubits() const { return qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  bool hermitian_flag() const { return hermitian_flag_; }
  bool is_hermitian(double tol = 1e-12) const;

  Complex trace() const { return m_.trace(); }
  DenseOperator adjoint() const;
  DenseOperator kron(const DenseOperator& rhs) const;
  double max_abs_diff(const DenseOperator& other) const;
  /// Largest singular value.
  double operator_norm() const;

  DenseOperator& operator+=(const DenseOperator& rhs);
  DenseOperator& operator-=(const DenseOperator& rhs);
  DenseOperator& operator*=(Complex s);

  friend DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
  friend DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }
  friend DenseOperator operator*(Complex s, DenseOperator a) { return a *= s; }
  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);

 private:
  int qubits_ = 0;
  Matrix m_;
  bool hermitian_flag_ = false;
};

/// Kronecker product of plain matrices, lhs as the more significant factor.
Matrix kron(const Matrix& lhs, const Matrix& rhs);
Vector kron(const Vector& lhs, const Vector& rhs);

/// Multiplies `local` (acting on `targets`, first target most significant)
/// into the n-qubit matrix `m` from the left: m <- (local on targets) * m.
void apply_left(const Matrix& local, std::span<const int> targets, int n_qubits, Matrix& m);
/// m <- m * (local on targets)^dagger.
void apply_right_adjoint(const Matrix& local, std::span<const int> targets, int n_qubits, Matrix& m);
/// v <- (local on targets) v for a state vector.
void apply_to_ket(const Matrix& local, std::span<const int> targets, int n_qubits, Vector& v);

/// Reorders tensor factors of a ket: qubit k of the result is qubit order[k] of the input.
Vector permute_qubits(const Vector& v, std::span<const int> order);

}  // namespace framesim
