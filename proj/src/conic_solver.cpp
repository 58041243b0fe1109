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

#include "framesim/conic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace framesim {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// x0^2 - |x1|^2, factored to keep precision near the boundary.
double lorentz_det(const VectorXd& v) {
  const double t = v(0);
  const double r = v.tail(v.size() - 1).norm();
  return (t - r) * (t + r);
}

struct Layout {
  Index n_linear = 0;
  std::vector<Index> offsets;
  std::vector<Index> dims;
  Index size = 0;
  double degree = 0.0;
};

Layout make_layout(const ConicProblem& p) {
  Layout l;
  if (p.n_linear < 0) throw std::invalid_argument("negative linear cone size");
  l.n_linear = p.n_linear;
  Index at = p.n_linear;
  for (int d : p.soc_dims) {
    if (d < 2) throw std::invalid_argument("second-order cones need dimension >= 2");
    l.offsets.push_back(at);
    l.dims.push_back(d);
    at += d;
  }
  l.size = at;
  l.degree = static_cast<double>(p.n_linear + static_cast<int>(p.soc_dims.size()));
  return l;
}

// Shifts v into the interior of K when it is not already well inside.
void shift_into_cone(const Layout& l, VectorXd& v) {
  double violation = -kInf;
  for (Index i = 0; i < l.n_linear; ++i) violation = std::max(violation, -v(i));
  for (std::size_t k = 0; k < l.dims.size(); ++k) {
    const auto seg = v.segment(l.offsets[k], l.dims[k]);
    violation = std::max(violation, seg.tail(l.dims[k] - 1).norm() - seg(0));
  }
  if (violation < -1e-8) return;
  const double shift = 1.0 + std::max(violation, 0.0);
  for (Index i = 0; i < l.n_linear; ++i) v(i) += shift;
  for (std::size_t k = 0; k < l.dims.size(); ++k) v(l.offsets[k]) += shift;
}

double max_step(const Layout& l, const VectorXd& x, const VectorXd& d) {
  double alpha = kInf;
  for (Index i = 0; i < l.n_linear; ++i) {
    if (d(i) < 0.0) alpha = std::min(alpha, -x(i) / d(i));
  }
  for (std::size_t k = 0; k < l.dims.size(); ++k) {
    alpha = std::min(alpha, detail::soc_max_step(x.segment(l.offsets[k], l.dims[k]), d.segment(l.offsets[k], l.dims[k])));
  }
  return alpha;
}

// Jordan product u o v.
VectorXd jordan(const Layout& l, const VectorXd& u, const VectorXd& v) {
  VectorXd out(u.size());
  out.head(l.n_linear) = u.head(l.n_linear).cwiseProduct(v.head(l.n_linear));
  for (std::size_t k = 0; k < l.dims.size(); ++k) {
    const Index o = l.offsets[k];
    const Index m = l.dims[k] - 1;
    out(o) = u.segment(o, l.dims[k]).dot(v.segment(o, l.dims[k]));
    out.segment(o + 1, m) = u(o) * v.segment(o + 1, m) + v(o) * u.segment(o + 1, m);
  }
  return out;
}

// Solves lambda o g = r for g.
VectorXd jordan_solve(const Layout& l, const VectorXd& lambda, const VectorXd& r) {
  VectorXd g(r.size());
  g.head(l.n_linear) = r.head(l.n_linear).cwiseQuotient(lambda.head(l.n_linear));
  for (std::size_t k = 0; k < l.dims.size(); ++k) {
    const Index o = l.offsets[k];
    const Index m = l.dims[k] - 1;
    const double l0 = lambda(o);
    const auto l1 = lambda.segment(o + 1, m);
    const double det = lorentz_det(lambda.segment(o, l.dims[k]));
    const double g0 = (l0 * r(o) - l1.dot(r.segment(o + 1, m))) / det;
    g(o) = g0;
    g.segment(o + 1, m) = (r.segment(o + 1, m) - g0 * l1) / l0;
  }
  return g;
}

VectorXd identity_element(const Layout& l) {
  VectorXd e = VectorXd::Zero(l.size);
  e.head(l.n_linear).setOnes();
  for (Index o : l.offsets) e(o) = 1.0;
  return e;
}

struct Scaling {
  VectorXd lin_winv;  // sqrt(x / s)
  std::vector<detail::SocScaling> soc;
};

Scaling make_scaling(const Layout& l, const VectorXd& x, const VectorXd& s) {
  Scaling w;
  w.lin_winv = (x.head(l.n_linear).cwiseQuotient(s.head(l.n_linear))).cwiseSqrt();
  for (std::size_t k = 0; k < l.dims.size(); ++k) {
    w.soc.push_back(detail::soc_scaling(x.segment(l.offsets[k], l.dims[k]), s.segment(l.offsets[k], l.dims[k])));
  }
  return w;
}

VectorXd apply_w(const Layout& l, const Scaling& w, const VectorXd& v) {
  VectorXd out(v.size());
  out.head(l.n_linear) = v.head(l.n_linear).cwiseQuotient(w.lin_winv);
  for (std::size_t k = 0; k < l.dims.size(); ++k) {
    out.segment(l.offsets[k], l.dims[k]) = w.soc[k].apply(v.segment(l.offsets[k], l.dims[k]));
  }
  return out;
}

VectorXd apply_winv(const Layout& l, const Scaling& w, const VectorXd& v) {
  VectorXd out(v.size());
  out.head(l.n_linear) = v.head(l.n_linear).cwiseProduct(w.lin_winv);
  for (std::size_t k = 0; k < l.dims.size(); ++k) {
    out.segment(l.offsets[k], l.dims[k]) = w.soc[k].apply_inverse(v.segment(l.offsets[k], l.dims[k]));
  }
  return out;
}

// G = A W^-1 (W^-1 is symmetric, so each row of A is scaled blockwise).
MatrixXd scaled_constraints(const Layout& l, const Scaling& w, const MatrixXd& a) {
  MatrixXd g(a.rows(), a.cols());
  g.leftCols(l.n_linear) = a.leftCols(l.n_linear) * w.lin_winv.asDiagonal();
  for (std::size_t k = 0; k < l.dims.size(); ++k) {
    const Index o = l.offsets[k];
    const Index d = l.dims[k];
    const auto& sc = w.soc[k];
    const double inv_theta = 1.0 / sc.theta;
    const double w0 = sc.w(0);
    const VectorXd w1 = sc.w.tail(d - 1);
    // W^-1 = theta^-1 J Wbar J with Wbar = [[w0, w1^T], [w1, I + w1 w1^T / (1 + w0)]]
    const auto blk = a.middleCols(o, d);
    const VectorXd a0 = blk.col(0);
    const MatrixXd a1 = blk.rightCols(d - 1);
    const VectorXd a1w = a1 * w1;
    g.col(o) = inv_theta * (w0 * a0 - a1w);
    g.middleCols(o + 1, d - 1) = inv_theta * (a1 + ((a1w / (1.0 + w0)) - a0) * w1.transpose());
  }
  return g;
}

}  // namespace

namespace detail {

SocScaling soc_scaling(const VectorXd& x, const VectorXd& s) {
  const double xd = std::sqrt(lorentz_det(x));
  const double sd = std::sqrt(lorentz_det(s));
  const VectorXd xb = x / xd;
  const VectorXd sb = s / sd;
  const double gamma = std::sqrt((1.0 + xb.dot(sb)) / 2.0);
  SocScaling sc;
  sc.theta = std::sqrt(sd / xd);
  // w = (sb + J xb) / (2 gamma)
  sc.w = sb;
  sc.w(0) += xb(0);
  sc.w.tail(x.size() - 1) -= xb.tail(x.size() - 1);
  sc.w /= 2.0 * gamma;
  return sc;
}

VectorXd SocScaling::apply(const VectorXd& v) const {
  const Index m = v.size() - 1;
  const auto w1 = w.tail(m);
  const double w1v = w1.dot(v.tail(m));
  VectorXd out(v.size());
  out(0) = w(0) * v(0) + w1v;
  out.tail(m) = v.tail(m) + (v(0) + w1v / (1.0 + w(0))) * w1;
  return theta * out;
}

VectorXd SocScaling::apply_inverse(const VectorXd& v) const {
  const Index m = v.size() - 1;
  const auto w1 = w.tail(m);
  // J Wbar J v with J = diag(1, -1, ..., -1)
  const double w1v = w1.dot(v.tail(m));
  VectorXd out(v.size());
  out(0) = w(0) * v(0) - w1v;
  out.tail(m) = v.tail(m) + (w1v / (1.0 + w(0)) - v(0)) * w1;
  return out / theta;
}

double soc_max_step(const VectorXd& x, const VectorXd& d) {
  const Index m = x.size() - 1;
  const double a = d(0) * d(0) - d.tail(m).squaredNorm();
  const double b = 2.0 * (x(0) * d(0) - x.tail(m).dot(d.tail(m)));
  const double c = lorentz_det(x);
  // f(alpha) = a alpha^2 + b alpha + c, f(0) = c > 0; the ray leaves the cone
  // at the smallest positive root.
  double best = kInf;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (std::abs(a) <= 1e-15 * scale) {
    if (b < 0.0) best = -c / b;
    return best;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return best;
  const double root = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0.0 ? root : -root));
  for (double r : {q / a, q != 0.0 ? c / q : kInf}) {
    if (r > 0.0) best = std::min(best, r);
  }
  return best;
}

}  // namespace detail

std::string to_string(ConicStatus status) {
  switch (status) {
    case ConicStatus::Optimal:
      return "optimal";
    case ConicStatus::IterationLimit:
      return "iteration_limit";
    case ConicStatus::NumericalFailure:
      return "numerical_failure";
  }
  return "?";
}

ConicResult solve_conic(const ConicProblem& p, const ConicOptions& opt) {
  const Layout l = make_layout(p);
  const Index m = p.A.rows();
  if (p.A.cols() != l.size || p.c.size() != l.size || p.b.size() != m) {
    throw std::invalid_argument("conic problem dimensions are inconsistent");
  }
  const double bnorm = 1.0 + p.b.norm();
  const double cnorm = 1.0 + p.c.norm();

  // Least-norm primal point and least-squares dual point, shifted into K.
  const MatrixXd aat = p.A * p.A.transpose();
  Eigen::LDLT<MatrixXd> aat_f(aat);
  if (aat_f.info() != Eigen::Success) throw std::invalid_argument("constraint matrix is rank deficient");
  VectorXd x = p.A.transpose() * aat_f.solve(p.b);
  VectorXd y = aat_f.solve(p.A * p.c);
  VectorXd s = p.c - p.A.transpose() * y;
  shift_into_cone(l, x);
  shift_into_cone(l, s);

  const VectorXd e = identity_element(l);
  ConicResult res;
  res.status = ConicStatus::IterationLimit;

  auto record = [&](int it) {
    res.x = x;
    res.y = y;
    res.s = s;
    res.primal_objective = p.c.dot(x);
    res.dual_objective = p.b.dot(y);
    res.primal_residual = (p.b - p.A * x).norm() / bnorm;
    res.dual_residual = (p.c - p.A.transpose() * y - s).norm() / cnorm;
    res.complementarity = x.dot(s);
    res.iterations = it;
  };

  for (int it = 0; it <= opt.max_iterations; ++it) {
    const VectorXd rp = p.b - p.A * x;
    const VectorXd rd = p.c - p.A.transpose() * y - s;
    const double gap = x.dot(s);
    const double pobj = p.c.dot(x);
    record(it);
    if (rp.norm() / bnorm <= opt.feasibility_tol && rd.norm() / cnorm <= opt.feasibility_tol &&
        gap <= opt.gap_tol * std::max(1.0, std::abs(pobj))) {
      res.status = ConicStatus::Optimal;
      return res;
    }
    if (it == opt.max_iterations) break;
    const double mu = gap / l.degree;

    const Scaling w = make_scaling(l, x, s);
    const VectorXd lambda = apply_w(l, w, x);
    const MatrixXd g = scaled_constraints(l, w, p.A);
    MatrixXd mm = g * g.transpose();
    mm.diagonal().array() += 1e-15 * mm.diagonal().maxCoeff();
    Eigen::LDLT<MatrixXd> chol(mm);
    if (chol.info() != Eigen::Success || !(chol.vectorD().minCoeff() > 0.0)) {
      res.status = ConicStatus::NumericalFailure;
      return res;
    }
    const VectorXd winv_rd = apply_winv(l, w, rd);

    // Returns the scaled directions W dx, W^-1 ds and dy for complementarity target rc.
    auto direction = [&](const VectorXd& rc, VectorXd& dx_s, VectorXd& ds_s, VectorXd& dy) {
      const VectorXd gg = jordan_solve(l, lambda, rc);
      dy = chol.solve(rp + g * (winv_rd - gg));
      ds_s = winv_rd - g.transpose() * dy;
      dx_s = gg - ds_s;
    };

    VectorXd dxa, dsa, dya;
    const VectorXd ll = jordan(l, lambda, lambda);
    direction(-ll, dxa, dsa, dya);
    const double alpha_aff = std::min({1.0, max_step(l, lambda, dxa), max_step(l, lambda, dsa)});
    const double mu_aff = (lambda + alpha_aff * dxa).dot(lambda + alpha_aff * dsa) / l.degree;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    VectorXd dxs, dss, dy;
    direction(sigma * mu * e - ll - jordan(l, dxa, dsa), dxs, dss, dy);
    const double alpha_max = std::min(max_step(l, lambda, dxs), max_step(l, lambda, dss));
    const double alpha = std::min(1.0, opt.step_fraction * alpha_max);
    if (!(alpha > 1e-12)) {
      res.status = ConicStatus::NumericalFailure;
      return res;
    }
    x += alpha * apply_winv(l, w, dxs);
    s += alpha * apply_w(l, w, dss);
    y += alpha * dy;
  }
  return res;
}

}  // namespace framesim
