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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "framesim/channel.hpp"
#include "framesim/operator.hpp"
#include "framesim/pauli.hpp"

using namespace framesim;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = Complex{g(rng), g(rng)};
  }
  return m;
}

Matrix random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, dim));
  return qr.householderQ();
}

double hs(const DenseOperator& a, const DenseOperator& b) {
  return std::abs((a.matrix().adjoint() * b.matrix()).trace());
}

}  // namespace

TEST_CASE("kron puts the left factor on qubit 0") {
  const Vector zero = Vector::Unit(2, 0);
  const Vector one = Vector::Unit(2, 1);
  const Vector v = kron(one, zero);
  CHECK(std::abs(v(2) - Complex{1.0}) < 1e-15);
  CHECK(v.norm() == doctest::Approx(1.0));
}

TEST_CASE("apply_to_ket agrees with the dense embedding") {
  std::mt19937_64 rng(3);
  const Matrix u = random_unitary(rng, 4);
  Vector v = Vector::Random(8);
  v /= v.norm();
  const Vector expected = kron(u, pauli_matrix(0)) * permute_qubits(v, std::vector<int>{2, 0, 1});
  Vector w = v;
  const std::vector<int> targets{2, 0};
  apply_to_ket(u, targets, 3, w);
  CHECK((permute_qubits(w, std::vector<int>{2, 0, 1}) - expected).norm() < 1e-12);
}

TEST_CASE("permute_qubits moves factors") {
  const Vector a = Vector::Unit(2, 0);
  const Vector b = Vector::Unit(2, 1);
  const Vector c = (Vector::Unit(2, 0) + Vector::Unit(2, 1)) / std::numbers::sqrt2;
  const Vector v = kron(kron(a, b), c);
  const std::vector<int> order{2, 0, 1};
  CHECK((permute_qubits(v, order) - kron(kron(c, a), b)).norm() < 1e-15);
}

TEST_CASE("operator norm and adjoint") {
  const DenseOperator x = PauliString::parse("+X").to_dense();
  CHECK(x.operator_norm() == doctest::Approx(1.0));
  const DenseOperator d = DenseOperator::dyad(Vector::Unit(2, 0), Vector::Unit(2, 1));
  CHECK(d.adjoint().max_abs_diff(DenseOperator::dyad(Vector::Unit(2, 1), Vector::Unit(2, 0))) == 0.0);
  CHECK_THROWS_AS(DenseOperator::identity(kMaxDenseQubits + 1), UnsupportedError);
}

TEST_CASE("Pauli strings multiply with phases") {
  const PauliString xy = PauliString::parse("+X") * PauliString::parse("+Y");
  CHECK(xy == PauliString::parse("+iZ"));
  CHECK(PauliString::parse("-iY").phase() == 3);
  CHECK(PauliString::parse("_Z").to_string() == "+IZ");
  CHECK(PauliString::parse("+XZ").index() == 7);
  CHECK_THROWS(PauliString::parse("+XQ"));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const PauliString a = pauli_from_index(rng() % 16, 2);
    const PauliString b = pauli_from_index(rng() % 16, 2);
    const Matrix prod = a.to_dense().matrix() * b.to_dense().matrix();
    CHECK((prod - (a * b).to_dense().matrix()).norm() < 1e-14);
  }
}

TEST_CASE("Pauli vectorization round-trips") {
  std::mt19937_64 rng(7);
  const DenseOperator a(2, random_matrix(rng, 4));
  const Vector v = pauli_vectorize(a);
  CHECK(pauli_reconstruct(v).max_abs_diff(a) < 1e-13);
  const Vector z = pauli_vectorize(PauliString::parse("+ZI").to_dense());
  CHECK(std::abs(z(12) - Complex{1.0}) < 1e-15);
  CHECK(z.norm() == doctest::Approx(1.0));
}

TEST_CASE("Clifford conjugation of Paulis") {
  const Matrix h = gate_matrix("H");
  const Matrix z = pauli_matrix(3);
  CHECK((h * z * h.adjoint() - pauli_matrix(1)).norm() < 1e-14);
  const Matrix cnot = gate_matrix("CNOT");
  const Matrix xi = kron(pauli_matrix(1), pauli_matrix(0));
  CHECK((cnot * xi * cnot.adjoint() - kron(pauli_matrix(1), pauli_matrix(1))).norm() < 1e-14);
  CHECK(is_clifford_gate("cx"));
  CHECK_FALSE(is_clifford_gate("T"));
  CHECK_THROWS(gate_matrix("toffoli"));
}

TEST_CASE("depolarizing and dephasing transfer matrices") {
  const double p = 0.07;
  const Matrix r = make_noise(NoiseModel::Depolarizing, p).ptm();
  CHECK(std::abs(r(0, 0) - 1.0) < 1e-14);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(r(k, k) - (1.0 - 4.0 * p)) < 1e-14);
  CHECK((r - r.diagonal().asDiagonal().toDenseMatrix()).norm() < 1e-14);
  const Matrix d = make_noise(NoiseModel::Dephasing, p).ptm();
  CHECK(std::abs(d(1, 1) - (1.0 - 2.0 * p)) < 1e-14);
  CHECK(std::abs(d(2, 2) - (1.0 - 2.0 * p)) < 1e-14);
  CHECK(std::abs(d(3, 3) - 1.0) < 1e-14);
  CHECK_THROWS(make_noise(NoiseModel::Depolarizing, 0.34));
  CHECK_THROWS(make_noise(NoiseModel::Dephasing, -0.1));
}

TEST_CASE("amplitude damping fixes |0> and contracts |1>") {
  const double q = 0.3;
  const NoisyChannel ad = make_noise(NoiseModel::AmplitudeDamping, q);
  CHECK(ad.trace_preservation_defect() < 1e-14);
  const DenseOperator one = DenseOperator::projector(Vector::Unit(2, 1));
  const DenseOperator out = ad.apply(one);
  CHECK(std::abs(out(0, 0) - Complex{q}) < 1e-14);
  CHECK(std::abs(out(1, 1) - Complex{1.0 - q}) < 1e-14);
  const Matrix r = ad.ptm();
  CHECK(std::abs(r(3, 0) - q) < 1e-14);
  CHECK(std::abs(r(1, 1) - std::sqrt(1.0 - q)) < 1e-14);
}

TEST_CASE("transfer matrices compose multiplicatively") {
  const NoisyChannel a = make_noisy_gate("T", NoiseModel::AmplitudeDamping, 0.2);
  const NoisyChannel b = make_noisy_gate("H", NoiseModel::Depolarizing, 0.05);
  CHECK((compose(b, a).ptm() - b.ptm() * a.ptm()).norm() < 1e-13);
  const NoisyChannel c = make_noisy_gate("CNOT", NoiseModel::Dephasing, 0.1);
  const NoisyChannel d = tensor(b, a);
  CHECK((compose(c, d).ptm() - c.ptm() * d.ptm()).norm() < 1e-13);
}

TEST_CASE("adjoint channel satisfies tr[A C(B)] = tr[C*(A) B]") {
  std::mt19937_64 rng(11);
  const NoisyChannel c = make_noisy_gate("CNOT", NoiseModel::AmplitudeDamping, 0.15);
  const NoisyChannel cs = adjoint(c);
  for (int t = 0; t < 5; ++t) {
    const DenseOperator a(2, random_matrix(rng, 4));
    const DenseOperator b(2, random_matrix(rng, 4));
    const Complex lhs = (a.matrix() * c.apply(b).matrix()).trace();
    const Complex rhs = (cs.apply(a).matrix() * b.matrix()).trace();
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
  CHECK(cs.apply(DenseOperator::identity(2)).max_abs_diff(DenseOperator::identity(2)) < 1e-13);
}

TEST_CASE("per-qubit noise on a two-qubit gate") {
  const NoisyChannel g = make_noisy_gate("CZ", NoiseModel::Depolarizing, 0.02);
  const NoisyChannel n1 = make_noise(NoiseModel::Depolarizing, 0.02);
  const NoisyChannel expected = compose(tensor(n1, n1), make_gate("CZ"));
  CHECK((g.ptm() - expected.ptm()).norm() < 1e-14);
}

TEST_CASE("apply_channel on chosen qubits matches the permuted embedding") {
  const NoisyChannel c = make_noisy_gate("CNOT", NoiseModel::Depolarizing, 0.03);
  std::mt19937_64 rng(13);
  const Matrix u = random_unitary(rng, 8);
  const DenseOperator rho = DenseOperator::projector(u.col(0));
  const std::vector<int> targets{2, 0};
  const DenseOperator out = apply_channel(c, targets, rho);
  CHECK(std::abs(out.trace() - Complex{1.0}) < 1e-13);
  // Same map written as sum_k K_k rho K_k^dagger with embedded Kraus operators.
  Matrix acc = Matrix::Zero(8, 8);
  for (const Matrix& k : c.kraus()) {
    Matrix m = rho.matrix();
    apply_left(k, targets, 3, m);
    apply_right_adjoint(k, targets, 3, m);
    acc += m;
  }
  CHECK((acc - out.matrix()).norm() < 1e-13);
  CHECK(hs(out, out) <= 1.0 + 1e-12);
}

TEST_CASE("non trace-preserving Kraus sets are rejected") {
  std::vector<Matrix> kraus{Matrix::Identity(2, 2) * 0.5};
  CHECK_THROWS_AS(NoisyChannel(1, kraus), std::invalid_argument);
}
