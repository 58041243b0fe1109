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

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace framesim {

/// Primal:  minimize c^T x  subject to  A x = b,  x in K
/// Dual:    maximize b^T y  subject to  A^T y + s = c,  s in K
///
/// K is R_+^n_linear followed by second-order cones {(t, u) : t >= |u|} of the
/// listed dimensions, in that order along x.
struct ConicProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  int n_linear = 0;
  std::vector<int> soc_dims;
};

struct ConicOptions {
  int max_iterations = 100;
  double feasibility_tol = 1e-9;
  double gap_tol = 1e-9;
  /// Fraction of the distance to the cone boundary taken per step.
  double step_fraction = 0.99;
};

enum class ConicStatus { Optimal, IterationLimit, NumericalFailure };
std::string to_string(ConicStatus status);

struct ConicResult {
  ConicStatus status = ConicStatus::NumericalFailure;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd s;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  /// |b - A x| / (1 + |b|)
  double primal_residual = 0.0;
  /// |c - A^T y - s| / (1 + |c|)
  double dual_residual = 0.0;
  double complementarity = 0.0;
  int iterations = 0;
};

/// Primal-dual interior point method with Nesterov-Todd scaling and Mehrotra
/// predictor-corrector steps from an infeasible start. A must have full row rank.
ConicResult solve_conic(const ConicProblem& problem, const ConicOptions& options = {});

namespace detail {

/// Nesterov-Todd scaling of one second-order cone block: W x = W^-1 s.
struct SocScaling {
  double theta = 1.0;
  Eigen::VectorXd w;  // normalized, w^T J w = 1
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  Eigen::VectorXd apply_inverse(const Eigen::VectorXd& v) const;
};
SocScaling soc_scaling(const Eigen::VectorXd& x, const Eigen::VectorXd& s);
/// Largest alpha with x + alpha d in the cone (infinity when unbounded).
double soc_max_step(const Eigen::VectorXd& x, const Eigen::VectorXd& d);

}  // namespace detail

}  // namespace framesim
