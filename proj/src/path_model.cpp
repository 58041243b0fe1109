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

#include "framesim/path_model.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>

#include "framesim/stabilizer.hpp"

namespace framesim {

namespace {

constexpr std::size_t kNoClifford = std::numeric_limits<std::size_t>::max();

struct KetFactor {
  std::size_t clifford = kNoClifford;
  std::uint32_t local = 0;
  Complex beta = 1.0;
};

// Maps register kets onto the table register. Local qubit k is register qubit
// order[k]; with an ancilla, |k> = beta (C (x) I)(|0> (x) |phi>) after reordering
// to (a, b, t), otherwise |k> = beta |phi> after reordering.
struct Reduction {
  int n = 0;
  int local_q = 0;
  bool ancilla = false;
  std::vector<int> order;
  std::vector<int> inverse;
  std::vector<KetFactor> factors;
};

KetFactor factor_with_ancilla(const Vector& v) {
  const auto& group = clifford_group(2);
  const StabilizerKets& local = StabilizerKets::get(2);
  Eigen::Matrix<Complex, 4, 2> m;
  for (int r = 0; r < 4; ++r) {
    for (int t = 0; t < 2; ++t) m(r, t) = v(2 * r + t);
  }
  for (std::size_t g = 0; g < group.size(); ++g) {
    const Eigen::Matrix<Complex, 4, 2> w = group[g].adjoint() * m;
    if (w.bottomRows<2>().norm() > 1e-9) continue;
    Vector phi(4);
    phi << w(0, 0), w(0, 1), w(1, 0), w(1, 1);
    const auto match = local.find(phi);
    if (!match) throw std::logic_error("reduced state is not a stabilizer state");
    return {g, static_cast<std::uint32_t>(match->index), match->phase};
  }
  throw std::logic_error("no two-qubit Clifford disentangles the spectator pair");
}

std::shared_ptr<const Reduction> get_reduction(int n, const std::vector<int>& order, bool ancilla) {
  static std::mutex mu;
  static std::map<std::pair<int, std::vector<int>>, std::shared_ptr<const Reduction>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, order}];
  if (slot) return slot;
  auto r = std::make_shared<Reduction>();
  r->n = n;
  r->local_q = ancilla ? 2 : n;
  r->ancilla = ancilla;
  r->order = order;
  r->inverse.assign(order.size(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) r->inverse[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  const StabilizerKets& reg = StabilizerKets::get(n);
  const StabilizerKets& local = StabilizerKets::get(r->local_q);
  r->factors.resize(reg.size());
  for (std::size_t k = 0; k < reg.size(); ++k) {
    const Vector v = permute_qubits(reg.ket(k), order);
    if (ancilla) {
      r->factors[k] = factor_with_ancilla(v);
    } else {
      const auto match = local.find(v);
      if (!match) throw std::logic_error("permuted stabilizer ket not found");
      r->factors[k] = {kNoClifford, static_cast<std::uint32_t>(match->index), match->phase};
    }
  }
  slot = std::move(r);
  return slot;
}

// Register ket of W|y> with its phase.
StabilizerMatch map_output(const Reduction& r, std::size_t clifford, std::size_t y) {
  const Vector& w = StabilizerKets::get(r.local_q).ket(y);
  Vector v;
  if (r.ancilla) {
    Eigen::Matrix<Complex, 4, 2> m = Eigen::Matrix<Complex, 4, 2>::Zero();
    m(0, 0) = w(0);
    m(0, 1) = w(1);
    m(1, 0) = w(2);
    m(1, 1) = w(3);
    const Eigen::Matrix<Complex, 4, 2> out = clifford_group(2)[clifford] * m;
    v.resize(8);
    for (int row = 0; row < 4; ++row) {
      for (int t = 0; t < 2; ++t) v(2 * row + t) = out(row, t);
    }
  } else {
    v = w;
  }
  const auto match = StabilizerKets::get(r.n).find(permute_qubits(v, r.inverse));
  if (!match) throw std::logic_error("mapped output is not a register stabilizer state");
  return *match;
}

// Clifford gate followed by Pauli noise: sum_k w_k U_k . U_k^dagger.
struct Mixture {
  std::vector<double> weights;
  std::vector<std::vector<std::uint32_t>> perm;
  std::vector<std::vector<Complex>> phase;
};

std::vector<std::pair<double, int>> noise_paulis(const GateApplication& g) {
  if (!g.noise) return {{1.0, 0}};
  const double p = g.strength;
  if (*g.noise == NoiseModel::Depolarizing) return {{1.0 - 3.0 * p, 0}, {p, 1}, {p, 2}, {p, 3}};
  return {{1.0 - p, 0}, {p, 3}};
}

std::shared_ptr<const Mixture> make_mixture(const GateApplication& g, int n) {
  const Matrix gate = gate_matrix(g.name);
  const auto paulis = noise_paulis(g);
  const StabilizerKets& reg = StabilizerKets::get(n);
  auto mix = std::make_shared<Mixture>();
  const std::size_t arity = g.qubits.size();
  std::size_t combos = 1;
  for (std::size_t i = 0; i < arity; ++i) combos *= paulis.size();
  for (std::size_t c = 0; c < combos; ++c) {
    double w = 1.0;
    Matrix p = Matrix::Identity(1, 1);
    std::size_t rest = c;
    for (std::size_t i = 0; i < arity; ++i) {
      const auto& [wi, letter] = paulis[rest % paulis.size()];
      rest /= paulis.size();
      w *= wi;
      p = kron(p, pauli_matrix(letter));
    }
    if (w == 0.0) continue;
    const Matrix u = p * gate;
    std::vector<std::uint32_t> perm(reg.size());
    std::vector<Complex> phase(reg.size());
    for (std::size_t k = 0; k < reg.size(); ++k) {
      Vector v = reg.ket(k);
      apply_to_ket(u, g.qubits, n, v);
      const auto match = reg.find(v);
      if (!match) throw std::logic_error("Clifford image is not a stabilizer state");
      perm[k] = static_cast<std::uint32_t>(match->index);
      phase[k] = match->phase;
    }
    mix->weights.push_back(w);
    mix->perm.push_back(std::move(perm));
    mix->phase.push_back(std::move(phase));
  }
  return mix;
}

void add_term(std::vector<PathTerm>& out, FrameElementLabel label, Complex c) {
  for (PathTerm& t : out) {
    if (t.label == label) {
      t.coeff += c;
      return;
    }
  }
  out.push_back({std::move(label), c});
}

}  // namespace

struct PathModel::Step {
  enum class Kind { ProductTable, StabMixture, StabTable };
  Kind kind = Kind::ProductTable;
  std::size_t gate = 0;
  std::vector<int> qubits;
  std::shared_ptr<const QuasiProbTable> table;
  std::shared_ptr<const Mixture> mixture;
  std::shared_ptr<const Reduction> reduction;
  double norm_bound = 1.0;

  std::size_t product_input(const FrameElementLabel& x, std::size_t base) const {
    std::size_t in = 0;
    for (int q : qubits) in = in * base + x.payload[static_cast<std::size_t>(q)];
    return in;
  }

  void product_output(FrameElementLabel& x, std::size_t base, std::size_t y) const {
    for (std::size_t i = qubits.size(); i-- > 0;) {
      x.payload[static_cast<std::size_t>(qubits[i])] = static_cast<std::uint32_t>(y % base);
      y /= base;
    }
  }

  std::size_t stab_input(const FrameElementLabel& x) const {
    const auto& f = reduction->factors;
    if (x.kind == FrameKind::DiagStab) return f[x.payload[0]].local;
    const std::size_t n_local = StabilizerKets::get(reduction->local_q).size();
    return f[x.payload[0]].local * n_local + f[x.payload[1]].local;
  }

  // Moves x to the register image of local output y; returns the coefficient phase factor.
  Complex stab_output(FrameElementLabel& x, std::size_t y) const {
    const auto& f = reduction->factors;
    if (x.kind == FrameKind::DiagStab) {
      x.payload[0] = static_cast<std::uint32_t>(map_output(*reduction, f[x.payload[0]].clifford, y).index);
      return 1.0;
    }
    const std::size_t n_local = StabilizerKets::get(reduction->local_q).size();
    const KetFactor& f1 = f[x.payload[0]];
    const KetFactor& f2 = f[x.payload[1]];
    const StabilizerMatch m1 = map_output(*reduction, f1.clifford, y / n_local);
    const StabilizerMatch m2 = map_output(*reduction, f2.clifford, y % n_local);
    x.payload = {static_cast<std::uint32_t>(m1.index), static_cast<std::uint32_t>(m2.index)};
    return f1.beta * std::conj(f2.beta) * m1.phase * std::conj(m2.phase);
  }

  void mixture_terms(const FrameElementLabel& x, std::vector<PathTerm>& out) const {
    out.clear();
    const Mixture& m = *mixture;
    for (std::size_t k = 0; k < m.weights.size(); ++k) {
      if (x.kind == FrameKind::DiagStab) {
        add_term(out, {x.kind, {m.perm[k][x.payload[0]]}}, m.weights[k]);
      } else {
        const std::uint32_t a = x.payload[0];
        const std::uint32_t b = x.payload[1];
        add_term(out, {x.kind, {m.perm[k][a], m.perm[k][b]}}, m.weights[k] * m.phase[k][a] * std::conj(m.phase[k][b]));
      }
    }
  }
};

PathModel::~PathModel() = default;
PathModel::PathModel(PathModel&&) noexcept = default;
PathModel& PathModel::operator=(PathModel&&) noexcept = default;

PathModel::PathModel(const Circuit& circuit, const FrameCatalog& frame, Picture picture, const TableOptions& options)
    : circuit_(circuit), picture_(picture) {
  circuit_.validate();
  if (picture != natural_picture(frame.kind())) {
    throw UnsupportedError("frame " + to_string(frame.kind()) + " is not simulated in the " + to_string(picture) +
                           " picture");
  }
  const int n = circuit_.n_qubits;
  frame_ = frame.with_qubits(n);
  const bool stabilizer = !is_product_shaped(frame_.kind());

  std::map<std::string, std::shared_ptr<const QuasiProbTable>> tables;
  std::map<std::string, std::shared_ptr<const Mixture>> mixtures;
  const std::size_t m = circuit_.gates.size();
  for (std::size_t s = 0; s < m; ++s) {
    const std::size_t g = picture == Picture::Schrodinger ? s : m - 1 - s;
    const GateApplication& ga = circuit_.gates[g];
    auto step = std::make_unique<Step>();
    step->gate = g;
    step->qubits = ga.qubits;
    const int arity = static_cast<int>(ga.qubits.size());
    if (stabilizer && ga.is_clifford_pauli_mixture()) {
      step->kind = Step::Kind::StabMixture;
      const std::string key = ga.channel_key() + "@" + std::to_string(ga.qubits[0]) +
                              (arity > 1 ? "," + std::to_string(ga.qubits[1]) : std::string());
      auto& slot = mixtures[key];
      if (!slot) slot = make_mixture(ga, n);
      step->mixture = slot;
      step->norm_bound = 1.0;
    } else {
      bool spectator = false;
      if (stabilizer) {
        std::vector<int> order;
        bool ancilla = false;
        if (arity == n) {
          order = ga.qubits;
        } else if (arity == 1) {
          for (int q = 0; q < n; ++q) {
            if (q != ga.qubits[0]) order.push_back(q);
          }
          order.push_back(ga.qubits[0]);
          ancilla = n == 3;
          spectator = true;
        } else {
          throw UnsupportedError("stabilizer frames simulate " + ga.channel_key() +
                                 " on two of three qubits only as a Clifford gate with Pauli noise");
        }
        step->kind = Step::Kind::StabTable;
        step->reduction = get_reduction(n, order, ancilla);
      } else {
        step->kind = Step::Kind::ProductTable;
      }
      const std::string key = ga.channel_key() + (spectator ? "/spectator" : "");
      auto& slot = tables[key];
      if (!slot) {
        const NoisyChannel ch = ga.channel();
        slot = std::make_shared<const QuasiProbTable>(
            build_quasiprob_table(make_local_problem(ch, frame_, picture, spectator), ch.label(), options));
      }
      step->table = slot;
      step->norm_bound = slot->table_norm();
    }
    steps_.push_back(std::move(step));
  }

  initial_label_.kind = frame_.kind();
  if (picture == Picture::Heisenberg) {
    for (std::size_t k = 0; k < circuit_.observable.size(); ++k) {
      initial_label_.payload.push_back(static_cast<std::uint32_t>(circuit_.observable[k]));
    }
    initial_coeff_ = circuit_.observable.phase_factor();
  } else if (stabilizer) {
    const auto match = StabilizerKets::get(n).find(circuit_.initial_state.ket());
    if (!match) throw std::logic_error("product stabilizer state missing from the catalog");
    const auto k = static_cast<std::uint32_t>(match->index);
    initial_label_.payload = frame_.kind() == FrameKind::DiagStab ? std::vector<std::uint32_t>{k}
                                                                  : std::vector<std::uint32_t>{k, k};
    observable_ = circuit_.observable.to_dense().matrix();
  } else {
    for (int q = 0; q < n; ++q) {
      const int idx = circuit_.initial_state.local_index(q);
      const Vector& local = frame_.local_kets().at(static_cast<std::size_t>(idx));
      if (std::abs(std::abs(local.dot(circuit_.initial_state.local_ket(q))) - 1.0) > 1e-12) {
        throw UnsupportedError("initial state is not an element of the product frame");
      }
      initial_label_.payload.push_back(static_cast<std::uint32_t>(idx));
    }
  }
}

std::size_t PathModel::steps() const { return steps_.size(); }
std::size_t PathModel::gate_of_step(std::size_t s) const { return steps_.at(s)->gate; }
double PathModel::step_norm_bound(std::size_t s) const { return steps_.at(s)->norm_bound; }

std::vector<std::shared_ptr<const QuasiProbTable>> PathModel::tables() const {
  std::vector<std::shared_ptr<const QuasiProbTable>> out;
  for (const auto& s : steps_) {
    if (s->table && std::find(out.begin(), out.end(), s->table) == out.end()) out.push_back(s->table);
  }
  return out;
}

double PathModel::bound_E() const {
  double b = std::abs(initial_coeff_) * final_overlap_bound();
  for (const auto& s : steps_) b *= s->norm_bound;
  return b;
}

Complex PathModel::advance(std::size_t step, FrameElementLabel& x, double u, double* row_norm) const {
  const Step& s = *steps_.at(step);
  if (s.kind == Step::Kind::StabMixture) {
    thread_local std::vector<PathTerm> terms;
    s.mixture_terms(x, terms);
    double norm = 0.0;
    for (const PathTerm& t : terms) norm += std::abs(t.coeff);
    if (row_norm) *row_norm = norm;
    if (norm == 0.0) return 0.0;
    const double target = u * norm;
    double acc = 0.0;
    std::size_t pick = terms.size() - 1;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      acc += std::abs(terms[k].coeff);
      if (target < acc && terms[k].coeff != Complex{0.0}) {
        pick = k;
        break;
      }
    }
    while (terms[pick].coeff == Complex{0.0}) --pick;
    x = terms[pick].label;
    return terms[pick].coeff / std::abs(terms[pick].coeff) * norm;
  }
  const std::size_t base = s.table->local_catalog().local_size();
  const TableEntry& e = s.table->entry(s.kind == Step::Kind::ProductTable ? s.product_input(x, base) : s.stab_input(x));
  const double norm = e.decomposition.one_norm;
  if (row_norm) *row_norm = norm;
  if (e.cdf.empty()) return 0.0;
  const std::size_t k = e.draw(u);
  const std::size_t y = e.decomposition.support[k];
  Complex phase = e.decomposition.phases[k];
  if (s.kind == Step::Kind::ProductTable) {
    s.product_output(x, base, y);
  } else {
    phase *= s.stab_output(x, y);
  }
  return phase * norm;
}

void PathModel::expand(std::size_t step, const FrameElementLabel& x, std::vector<PathTerm>& out) const {
  const Step& s = *steps_.at(step);
  if (s.kind == Step::Kind::StabMixture) {
    s.mixture_terms(x, out);
    return;
  }
  out.clear();
  const std::size_t base = s.table->local_catalog().local_size();
  const TableEntry& e = s.table->entry(s.kind == Step::Kind::ProductTable ? s.product_input(x, base) : s.stab_input(x));
  for (std::size_t k = 0; k < e.decomposition.support.size(); ++k) {
    FrameElementLabel next = x;
    Complex c = e.decomposition.coeffs[k];
    if (s.kind == Step::Kind::ProductTable) {
      s.product_output(next, base, e.decomposition.support[k]);
    } else {
      c *= s.stab_output(next, e.decomposition.support[k]);
    }
    out.push_back({std::move(next), c});
  }
}

Complex PathModel::final_overlap(const FrameElementLabel& x) const {
  if (picture_ == Picture::Heisenberg) return eval_state_overlap(frame_, x, circuit_.initial_state);
  if (is_product_shaped(frame_.kind())) return eval_observable_overlap(frame_, x, circuit_.observable);
  const auto& kets = StabilizerKets::get(circuit_.n_qubits);
  const Vector& ket = kets.ket(x.payload[0]);
  const Vector& bra = kets.ket(x.payload.size() == 2 ? x.payload[1] : x.payload[0]);
  return bra.dot(observable_ * ket);
}

}  // namespace framesim
