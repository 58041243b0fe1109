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

// Reference computations used only by the tests. They share no code with the
// library solvers: brute-force vertex enumeration for real basis pursuit, a
// first-order primal-dual iteration for the complex case, and hand-written
// random circuits.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "framesim/circuit.hpp"

namespace oracle {

/// min |x|_1 s.t. D x = y over real D by enumerating every column subset of
/// size rank(D). Basic solutions of the split LP have such supports.
inline double vertex_min_one_norm(const Eigen::MatrixXd& d, const Eigen::VectorXd& y) {
  const int m = static_cast<int>(d.rows());
  const int n = static_cast<int>(d.cols());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) pick[static_cast<std::size_t>(k)] = k;
  while (true) {
    Eigen::MatrixXd sub(m, m);
    for (int k = 0; k < m; ++k) sub.col(k) = d.col(pick[static_cast<std::size_t>(k)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (lu.isInvertible()) {
      const Eigen::VectorXd x = lu.solve(y);
      if ((sub * x - y).norm() < 1e-10) best = std::min(best, x.lpNorm<1>());
    }
    int k = m - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == n - m + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < m; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

/// Chambolle-Pock iteration for min |x|_1 s.t. D x = y over complex D.
inline double primal_dual_min_one_norm(const Eigen::MatrixXcd& d, const Eigen::VectorXcd& y, int iterations) {
  const double l = Eigen::JacobiSVD<Eigen::MatrixXcd>(d).singularValues()(0);
  const double tau = 0.95 / l;
  const double sigma = 0.95 / l;
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(d.cols());
  Eigen::VectorXcd xbar = x;
  Eigen::VectorXcd nu = Eigen::VectorXcd::Zero(d.rows());
  for (int it = 0; it < iterations; ++it) {
    nu += sigma * (d * xbar - y);
    Eigen::VectorXcd z = x - tau * (d.adjoint() * nu);
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double a = std::abs(z(i));
      z(i) = a > tau ? z(i) * ((a - tau) / a) : std::complex<double>(0.0);
    }
    xbar = 2.0 * z - x;
    x = z;
  }
  return x.lpNorm<1>();
}

inline framesim::Circuit random_circuit(std::mt19937_64& rng, int n, int m) {
  static const char* kOne[] = {"H", "S", "T", "X", "Z"};
  static const char* kTwo[] = {"CNOT", "CZ"};
  static const char* kStates = "01+-rl";
  static const char* kLetters = "IXYZ";
  std::uniform_int_distribution<int> coin(0, 1 << 20);
  std::uniform_real_distribution<double> strength(0.0, 0.08);
  framesim::Circuit c;
  c.n_qubits = n;
  std::string s;
  std::string o = coin(rng) % 2 ? "+" : "-";
  for (int q = 0; q < n; ++q) {
    s += kStates[coin(rng) % 6];
    o += kLetters[coin(rng) % 4];
  }
  c.initial_state = framesim::ProductState::parse(s);
  c.observable = framesim::PauliString::parse(o);
  for (int g = 0; g < m; ++g) {
    framesim::GateApplication ga;
    if (n >= 2 && coin(rng) % 3 == 0) {
      ga.name = kTwo[coin(rng) % 2];
      const int a = coin(rng) % n;
      const int b = (a + 1 + coin(rng) % (n - 1)) % n;
      ga.qubits = {a, b};
    } else {
      ga.name = kOne[coin(rng) % 5];
      ga.qubits = {coin(rng) % n};
    }
    switch (coin(rng) % 4) {
      case 0:
        break;
      case 1:
        ga.noise = framesim::NoiseModel::Depolarizing;
        break;
      case 2:
        ga.noise = framesim::NoiseModel::Dephasing;
        break;
      default:
        ga.noise = framesim::NoiseModel::AmplitudeDamping;
        break;
    }
    if (ga.noise) ga.strength = strength(rng);
    c.gates.push_back(ga);
  }
  return c;
}

}  // namespace oracle
