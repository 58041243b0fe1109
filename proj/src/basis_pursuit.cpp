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

#include "framesim/basis_pursuit.hpp"

#include <algorithm>
#include <cmath>

#include "framesim/pauli.hpp"

namespace framesim {

namespace {

// Pauli-frame columns are read off the transfer matrix; only floating-point
// dust is dropped so the support matches the exact column.
constexpr double kPauliPrune = 1e-13;

Vector unit_phases(const Vector& v) {
  Vector out = Vector::Zero(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 0.0) out(i) = v(i) / mag;
  }
  return out;
}

// Least-squares correction of the coefficients on a fixed support.
Decomposition polish(const Dictionary& dict, const Vector& y, Decomposition dec) {
  if (dec.support.empty()) return dec;
  Matrix sub(dict.columns.rows(), static_cast<Eigen::Index>(dec.support.size()));
  Vector coeffs(static_cast<Eigen::Index>(dec.support.size()));
  for (std::size_t k = 0; k < dec.support.size(); ++k) {
    sub.col(static_cast<Eigen::Index>(k)) = dict.columns.col(static_cast<Eigen::Index>(dec.support[k]));
    coeffs(static_cast<Eigen::Index>(k)) = dec.coeffs[k];
  }
  const Vector r = y - sub * coeffs;
  const Eigen::MatrixXcd dense = sub;
  const Vector delta = dense.completeOrthogonalDecomposition().solve(r);
  coeffs += delta;
  if (dict.real_valued && y.imag().cwiseAbs().maxCoeff() == 0.0) coeffs = coeffs.real().cast<Complex>();
  for (std::size_t k = 0; k < dec.support.size(); ++k) dec.coeffs[k] = coeffs(static_cast<Eigen::Index>(k));
  dec.refresh();
  return dec;
}

}  // namespace

Eigen::Index Dictionary::rank() const {
  const Eigen::MatrixXcd dense = columns;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(dense);
  qr.setThreshold(1e-10);
  return qr.rank();
}

Dictionary make_dictionary(Matrix columns, FrameKind kind) {
  Dictionary d;
  d.kind = kind;
  int q = 0;
  while ((Eigen::Index{1} << (2 * q)) < columns.rows()) ++q;
  if ((Eigen::Index{1} << (2 * q)) != columns.rows()) throw std::invalid_argument("dictionary rows must be 4^q");
  d.qubits = q;
  d.real_valued = columns.imag().cwiseAbs().maxCoeff() == 0.0;
  d.columns = std::move(columns);
  return d;
}

Dictionary build_dictionary(const FrameCatalog& catalog, int q) {
  if (q < 1 || q > 2) throw std::invalid_argument("dictionaries are built for q in {1, 2}");
  const FrameCatalog local = catalog.with_qubits(q);
  const std::size_t count = local.size();
  Matrix cols(Eigen::Index{1} << (2 * q), static_cast<Eigen::Index>(count));
  for (std::size_t m = 0; m < count; ++m) cols.col(static_cast<Eigen::Index>(m)) = pauli_vectorize(local.element(m));
  // Hermitian frame elements have real Pauli coefficients; clear rounding dust.
  if (cols.imag().cwiseAbs().maxCoeff() < 1e-15) cols = cols.real().cast<Complex>();
  return make_dictionary(std::move(cols), catalog.kind());
}

Decomposition Decomposition::from_dense(const Vector& lambda, double prune) {
  Decomposition d;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double mag = std::abs(lambda(i));
    if (mag == 0.0 || mag < prune) continue;
    d.support.push_back(static_cast<std::size_t>(i));
    d.coeffs.push_back(lambda(i));
  }
  d.refresh();
  return d;
}

Vector Decomposition::dense(Eigen::Index size) const {
  Vector v = Vector::Zero(size);
  for (std::size_t k = 0; k < support.size(); ++k) v(static_cast<Eigen::Index>(support[k])) = coeffs[k];
  return v;
}

void Decomposition::refresh() {
  phases.resize(coeffs.size());
  one_norm = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double mag = std::abs(coeffs[k]);
    one_norm += mag;
    phases[k] = mag > 0.0 ? coeffs[k] / mag : Complex{1.0, 0.0};
  }
}

VerifyReport verify_decomposition(const Dictionary& dict, const Vector& y, const Decomposition& dec,
                                  double residual_tol) {
  VerifyReport r;
  Vector acc = -y;
  double norm = 0.0;
  for (std::size_t k = 0; k < dec.support.size(); ++k) {
    if (dec.support[k] >= static_cast<std::size_t>(dict.size())) return r;
    acc += dec.coeffs[k] * dict.columns.col(static_cast<Eigen::Index>(dec.support[k]));
    norm += std::abs(dec.coeffs[k]);
  }
  r.residual = acc.norm();
  r.one_norm = norm;
  r.ok = r.residual <= residual_tol && std::abs(norm - dec.one_norm) <= 1e-10;
  return r;
}

DualCertificate evaluate_certificate(const Dictionary& dict, const Vector& y, const Vector& nu,
                                     const Decomposition& primal, double gap_tol, double residual_tol) {
  DualCertificate c;
  const VerifyReport v = verify_decomposition(dict, y, primal, residual_tol);
  const Vector z = dict.columns.adjoint() * nu;
  const double zmax = z.size() > 0 ? z.cwiseAbs().maxCoeff() : 0.0;
  const double scale = std::max(1.0, zmax);
  c.dual_objective = y.dot(nu).real() / scale;
  c.primal_objective = v.one_norm;
  c.gap = c.primal_objective - c.dual_objective;
  c.feasibility_residual = std::max(v.residual, std::max(0.0, zmax - 1.0));
  c.certified = c.gap <= gap_tol && c.feasibility_residual <= residual_tol;
  return c;
}

BasisPursuitResult solve_min_one_norm(const Dictionary& dict, const Vector& y, const BasisPursuitOptions& opt) {
  const Eigen::Index k = dict.columns.rows();
  const Eigen::Index m = dict.size();
  if (y.size() != k) throw std::invalid_argument("target length does not match the dictionary");
  BasisPursuitResult out;
  if (y.cwiseAbs().maxCoeff() == 0.0) {
    out.dual = Vector::Zero(k);
    out.certificate = evaluate_certificate(dict, y, out.dual, out.decomposition, opt.gap_tol, opt.residual_tol);
    return out;
  }

  const bool linear = opt.allow_linear_program && dict.real_valued && y.imag().cwiseAbs().maxCoeff() == 0.0;
  ConicProblem p;
  if (linear) {
    const Eigen::MatrixXd dr = dict.columns.real();
    p.A.resize(k, 2 * m);
    p.A << dr, -dr;
    p.b = y.real();
    p.c = Eigen::VectorXd::Ones(2 * m);
    p.n_linear = static_cast<int>(2 * m);
  } else {
    const Eigen::MatrixXd dr = dict.columns.real();
    const Eigen::MatrixXd di = dict.columns.imag();
    p.A = Eigen::MatrixXd::Zero(2 * k, 3 * m);
    for (Eigen::Index j = 0; j < m; ++j) {
      p.A.block(0, 3 * j + 1, k, 1) = dr.col(j);
      p.A.block(k, 3 * j + 1, k, 1) = di.col(j);
      p.A.block(0, 3 * j + 2, k, 1) = -di.col(j);
      p.A.block(k, 3 * j + 2, k, 1) = dr.col(j);
    }
    p.b.resize(2 * k);
    p.b << y.real(), y.imag();
    p.c = Eigen::VectorXd::Zero(3 * m);
    for (Eigen::Index j = 0; j < m; ++j) p.c(3 * j) = 1.0;
    p.soc_dims.assign(static_cast<std::size_t>(m), 3);
  }

  const ConicResult r = solve_conic(p, opt.conic);
  out.status = r.status;
  out.iterations = r.iterations;
  Vector lambda(m);
  if (linear) {
    for (Eigen::Index j = 0; j < m; ++j) lambda(j) = r.x(j) - r.x(m + j);
    out.dual = r.y.cast<Complex>();
  } else {
    for (Eigen::Index j = 0; j < m; ++j) lambda(j) = Complex{r.x(3 * j + 1), r.x(3 * j + 2)};
    out.dual = r.y.head(k).cast<Complex>() + Complex{0.0, 1.0} * r.y.tail(k).cast<Complex>();
  }

  Decomposition dec = polish(dict, y, Decomposition::from_dense(lambda, opt.prune));
  VerifyReport v = verify_decomposition(dict, y, dec, opt.residual_tol);
  if (!v.ok) {
    dec = polish(dict, y, Decomposition::from_dense(lambda));
    v = verify_decomposition(dict, y, dec, opt.residual_tol);
  }
  if (!v.ok) {
    throw SolverFailure("basis pursuit did not reach a feasible decomposition (" + to_string(r.status) +
                            ", residual " + std::to_string(v.residual) + ")",
                        v.residual, lambda);
  }
  out.decomposition = std::move(dec);
  out.residual = v.residual;
  out.certificate = evaluate_certificate(dict, y, out.dual, out.decomposition, opt.gap_tol, opt.residual_tol);
  return out;
}

LocalProblem make_local_problem(const NoisyChannel& gate, const FrameCatalog& catalog, Picture picture,
                                bool spectator) {
  LocalProblem lp;
  lp.picture = picture;
  NoisyChannel ch = gate;
  int q = gate.qubits();
  if (!is_product_shaped(catalog.kind())) {
    if (q > 2) throw UnsupportedError("stabilizer-frame tables cover gates on at most two qubits");
    if (q == 1 && spectator) {
      ch = tensor(make_gate("I"), gate);
      q = 2;
    }
  } else if (q > 2) {
    throw UnsupportedError("frame tables cover gates on at most two qubits");
  }
  lp.channel = picture == Picture::Heisenberg ? adjoint(ch) : ch;
  lp.catalog = catalog.with_qubits(q);
  lp.dictionary = build_dictionary(lp.catalog, q);
  return lp;
}

Vector local_target(const LocalProblem& problem, std::size_t input) {
  if (problem.catalog.kind() == FrameKind::Pauli) return problem.channel.ptm().col(static_cast<Eigen::Index>(input));
  return pauli_vectorize(problem.channel.apply(problem.catalog.element(input)));
}

BasisPursuitResult decompose_gate_action(const LocalProblem& problem, std::size_t input,
                                         const BasisPursuitOptions& options) {
  if (input >= problem.catalog.size()) throw std::invalid_argument("input label out of range");
  const Vector y = local_target(problem, input);
  if (problem.catalog.kind() != FrameKind::Pauli) return solve_min_one_norm(problem.dictionary, y, options);
  BasisPursuitResult out;
  out.decomposition = Decomposition::from_dense(y, kPauliPrune);
  out.dual = unit_phases(y);
  out.residual = verify_decomposition(problem.dictionary, y, out.decomposition).residual;
  out.certificate = evaluate_certificate(problem.dictionary, y, out.dual, out.decomposition, options.gap_tol,
                                         options.residual_tol);
  return out;
}

Decomposition decompose_gate_action(const NoisyChannel& gate, const FrameCatalog& catalog, Picture picture,
                                    const FrameElementLabel& input_label) {
  const LocalProblem lp = make_local_problem(gate, catalog, picture);
  return decompose_gate_action(lp, lp.catalog.index(input_label)).decomposition;
}

}  // namespace framesim
