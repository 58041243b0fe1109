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

#include "framesim/operator.hpp"

#include <algorithm>
#include <vector>

namespace framesim {

namespace {

std::size_t side_for(int qubits) {
  if (qubits < 0) throw std::invalid_argument("negative qubit count");
  if (qubits > kMaxDenseQubits) {
    throw UnsupportedError("qubit count " + std::to_string(qubits) + " outside [0, " +
                           std::to_string(kMaxDenseQubits) + "]");
  }
  return std::size_t{1} << qubits;
}

void check_targets(std::span<const int> targets, int n_qubits, std::size_t local_dim) {
  if ((std::size_t{1} << targets.size()) != local_dim) {
    throw std::invalid_argument("local operator size does not match target count");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= n_qubits) {
      throw std::invalid_argument("target qubit " + std::to_string(targets[i]) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) throw std::invalid_argument("duplicate target qubit");
    }
  }
}

// Offsets of the 2^k basis states spanned by the targets, and the list of
// base indices with all target bits cleared.
struct Embedding {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> bases;
};

Embedding make_embedding(std::span<const int> targets, int n_qubits) {
  Embedding e;
  const std::size_t k = targets.size();
  e.offsets.assign(std::size_t{1} << k, 0);
  std::size_t mask = 0;
  for (std::size_t j = 0; j < e.offsets.size(); ++j) {
    std::size_t off = 0;
    for (std::size_t t = 0; t < k; ++t) {
      if ((j >> (k - 1 - t)) & 1U) off |= std::size_t{1} << (n_qubits - 1 - targets[t]);
    }
    e.offsets[j] = off;
  }
  for (std::size_t t = 0; t < k; ++t) mask |= std::size_t{1} << (n_qubits - 1 - targets[t]);
  const std::size_t dim = std::size_t{1} << n_qubits;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) == 0) e.bases.push_back(i);
  }
  return e;
}

}  // namespace

DenseOperator::DenseOperator() : qubits_(0), m_(Matrix::Zero(1, 1)) {}

DenseOperator::DenseOperator(int qubits, Matrix entries) : qubits_(qubits), m_(std::move(entries)) {
  const auto side = static_cast<Eigen::Index>(side_for(qubits));
  if (m_.rows() != side || m_.cols() != side) {
    throw std::invalid_argument("operator on " + std::to_string(qubits) + " qubits must be " +
                                std::to_string(side) + "x" + std::to_string(side));
  }
}

DenseOperator DenseOperator::identity(int qubits) {
  const auto side = static_cast<Eigen::Index>(side_for(qubits));
  DenseOperator op(qubits, Matrix::Identity(side, side));
  op.hermitian_flag_ = true;
  return op;
}

DenseOperator DenseOperator::zero(int qubits) {
  const auto side = static_cast<Eigen::Index>(side_for(qubits));
  DenseOperator op(qubits, Matrix::Zero(side, side));
  op.hermitian_flag_ = true;
  return op;
}

DenseOperator DenseOperator::projector(const Vector& ket) {
  DenseOperator op = dyad(ket, ket);
  op.hermitian_flag_ = true;
  return op;
}

DenseOperator DenseOperator::dyad(const Vector& ket, const Vector& bra) {
  if (ket.size() != bra.size()) throw std::invalid_argument("dyad: ket and bra sizes differ");
  int q = 0;
  while ((Eigen::Index{1} << q) < ket.size()) ++q;
  Matrix m = ket * bra.adjoint();
  return DenseOperator(q, std::move(m));
}

DenseOperator DenseOperator::hermitian(int qubits, Matrix entries) {
  DenseOperator op(qubits, std::move(entries));
  if (!op.is_hermitian(1e-12)) throw std::invalid_argument("matrix is not Hermitian to 1e-12");
  op.hermitian_flag_ = true;
  return op;
}

bool DenseOperator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DenseOperator DenseOperator::adjoint() const {
  DenseOperator out(qubits_, m_.adjoint());
  out.hermitian_flag_ = hermitian_flag_;
  return out;
}

DenseOperator DenseOperator::kron(const DenseOperator& rhs) const {
  DenseOperator out(qubits_ + rhs.qubits_, framesim::kron(m_, rhs.m_));
  out.hermitian_flag_ = hermitian_flag_ && rhs.hermitian_flag_;
  return out;
}

double DenseOperator::max_abs_diff(const DenseOperator& other) const {
  if (other.qubits_ != qubits_) throw std::invalid_argument("max_abs_diff: qubit counts differ");
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

double DenseOperator::operator_norm() const {
  const Eigen::MatrixXcd dense = m_;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense);
  return svd.singularValues()(0);
}

DenseOperator& DenseOperator::operator+=(const DenseOperator& rhs) {
  if (rhs.qubits_ != qubits_) throw std::invalid_argument("operator sum: qubit counts differ");
  m_ += rhs.m_;
  hermitian_flag_ = hermitian_flag_ && rhs.hermitian_flag_;
  return *this;
}

DenseOperator& DenseOperator::operator-=(const DenseOperator& rhs) {
  if (rhs.qubits_ != qubits_) throw std::invalid_argument("operator difference: qubit counts differ");
  m_ -= rhs.m_;
  hermitian_flag_ = hermitian_flag_ && rhs.hermitian_flag_;
  return *this;
}

DenseOperator& DenseOperator::operator*=(Complex s) {
  m_ *= s;
  hermitian_flag_ = hermitian_flag_ && s.imag() == 0.0;
  return *this;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  if (a.qubits_ != b.qubits_) throw std::invalid_argument("operator product: qubit counts differ");
  return DenseOperator(a.qubits_, a.m_ * b.m_);
}

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
    for (Eigen::Index j = 0; j < lhs.cols(); ++j) {
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
    }
  }
  return out;
}

Vector kron(const Vector& lhs, const Vector& rhs) {
  Vector out(lhs.size() * rhs.size());
  for (Eigen::Index i = 0; i < lhs.size(); ++i) out.segment(i * rhs.size(), rhs.size()) = lhs(i) * rhs;
  return out;
}

void apply_left(const Matrix& local, std::span<const int> targets, int n_qubits, Matrix& m) {
  check_targets(targets, n_qubits, static_cast<std::size_t>(local.rows()));
  const Embedding e = make_embedding(targets, n_qubits);
  const std::size_t k = e.offsets.size();
  Vector gathered(static_cast<Eigen::Index>(k));
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    for (std::size_t base : e.bases) {
      for (std::size_t j = 0; j < k; ++j) gathered(j) = m(base + e.offsets[j], col);
      const Vector mixed = local * gathered;
      for (std::size_t j = 0; j < k; ++j) m(base + e.offsets[j], col) = mixed(j);
    }
  }
}

void apply_right_adjoint(const Matrix& local, std::span<const int> targets, int n_qubits, Matrix& m) {
  check_targets(targets, n_qubits, static_cast<std::size_t>(local.rows()));
  const Embedding e = make_embedding(targets, n_qubits);
  const std::size_t k = e.offsets.size();
  const Matrix conj_local = local.conjugate();
  Vector gathered(static_cast<Eigen::Index>(k));
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    for (std::size_t base : e.bases) {
      for (std::size_t j = 0; j < k; ++j) gathered(j) = m(row, base + e.offsets[j]);
      // (m K^dagger)_{r,j} = sum_i m_{r,i} conj(K_{j,i})
      const Vector mixed = conj_local * gathered;
      for (std::size_t j = 0; j < k; ++j) m(row, base + e.offsets[j]) = mixed(j);
    }
  }
}

void apply_to_ket(const Matrix& local, std::span<const int> targets, int n_qubits, Vector& v) {
  check_targets(targets, n_qubits, static_cast<std::size_t>(local.rows()));
  const Embedding e = make_embedding(targets, n_qubits);
  const std::size_t k = e.offsets.size();
  Vector gathered(static_cast<Eigen::Index>(k));
  for (std::size_t base : e.bases) {
    for (std::size_t j = 0; j < k; ++j) gathered(j) = v(base + e.offsets[j]);
    const Vector mixed = local * gathered;
    for (std::size_t j = 0; j < k; ++j) v(base + e.offsets[j]) = mixed(j);
  }
}

Vector permute_qubits(const Vector& v, std::span<const int> order) {
  const int n = static_cast<int>(order.size());
  if ((Eigen::Index{1} << n) != v.size()) throw std::invalid_argument("permute_qubits: size mismatch");
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // bit of new qubit k equals bit of old qubit order[k]
    std::size_t src = 0;
    for (int k = 0; k < n; ++k) {
      if ((static_cast<std::size_t>(i) >> (n - 1 - k)) & 1U) src |= std::size_t{1} << (n - 1 - order[k]);
    }
    out(i) = v(static_cast<Eigen::Index>(src));
  }
  return out;
}

}  // namespace framesim
