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

#include "framesim/quasiprob_table.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "framesim/symmetry.hpp"

namespace framesim {

namespace {

void fill_cdf(TableEntry& e) {
  const Decomposition& d = e.decomposition;
  e.cdf.assign(d.support.size(), 0.0);
  if (d.support.empty() || d.one_norm == 0.0) {
    e.cdf.clear();
    return;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < d.support.size(); ++k) {
    acc += std::abs(d.coeffs[k]);
    e.cdf[k] = acc / d.one_norm;
  }
  e.cdf.back() = 1.0;
}

std::string describe_label(const FrameCatalog& catalog, std::size_t input) {
  const FrameElementLabel l = catalog.label(input);
  std::string s = to_string(l.kind) + "[";
  for (std::size_t k = 0; k < l.payload.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(l.payload[k]);
  }
  return s + "]";
}

// Runs fn(i) for every i in `items` on a small pool; the first failure (by
// item order) is rethrown after all workers finish.
template <typename Fn>
void parallel_for(const std::vector<std::size_t>& items, int threads, Fn fn) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, items.size())));
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        fn(items[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

double TableEntry::probability(std::size_t k) const {
  return decomposition.one_norm > 0.0 ? std::abs(decomposition.coeffs.at(k)) / decomposition.one_norm : 0.0;
}

std::size_t TableEntry::draw(double u) const {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) return cdf.size() - 1;
  return static_cast<std::size_t>(it - cdf.begin());
}

TableEntry make_entry(const BasisPursuitResult& result) {
  TableEntry e;
  e.decomposition = result.decomposition;
  e.certificate = result.certificate;
  e.status = result.status;
  e.iterations = result.iterations;
  fill_cdf(e);
  return e;
}

QuasiProbTable::QuasiProbTable(std::string gate, LocalProblem problem, std::vector<TableEntry> entries)
    : gate_(std::move(gate)), problem_(std::move(problem)), entries_(std::move(entries)) {
  for (std::size_t x = 0; x < entries_.size(); ++x) {
    if (entries_[x].decomposition.one_norm > table_norm_) {
      table_norm_ = entries_[x].decomposition.one_norm;
      argmax_ = x;
    }
  }
}

std::size_t QuasiProbTable::solved_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const TableEntry& e) { return !e.derived_from; }));
}

std::size_t QuasiProbTable::certified_count() const {
  return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const TableEntry& e) {
    return !e.derived_from && e.certificate.certified;
  }));
}

double QuasiProbTable::max_gap() const {
  double g = 0.0;
  for (const TableEntry& e : entries_) g = std::max(g, e.certificate.gap);
  return g;
}

nlohmann::json QuasiProbTable::to_json() const {
  nlohmann::json j;
  j["gate"] = gate_;
  j["frame"] = problem_.catalog.manifest();
  j["picture"] = to_string(problem_.picture);
  j["table_norm"] = table_norm_;
  j["argmax_input"] = argmax_;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t x = 0; x < entries_.size(); ++x) {
    const TableEntry& e = entries_[x];
    nlohmann::json row;
    row["input"] = x;
    row["label"] = problem_.catalog.label(x).payload;
    row["one_norm"] = e.decomposition.one_norm;
    row["support"] = e.decomposition.support;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Complex& c : e.decomposition.coeffs) coeffs.push_back({c.real(), c.imag()});
    row["coeffs"] = std::move(coeffs);
    row["gap"] = e.certificate.gap;
    row["certified"] = e.certificate.certified;
    if (e.derived_from) row["derived_from"] = *e.derived_from;
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

QuasiProbTable build_quasiprob_table(const NoisyChannel& gate, const FrameCatalog& catalog, Picture picture,
                                     const TableOptions& options) {
  return build_quasiprob_table(make_local_problem(gate, catalog, picture), gate.label(), options);
}

QuasiProbTable build_quasiprob_table(LocalProblem problem, std::string gate_label, const TableOptions& options) {
  const FrameCatalog& catalog = problem.catalog;
  const std::size_t n = problem.catalog.size();
  std::vector<TableEntry> entries(n);

  const bool reduce = options.use_symmetry && !is_product_shaped(catalog.kind());
  std::vector<InputSymmetry> symmetries;
  OrbitPlan plan;
  if (reduce) {
    symmetries = stabilizer_frame_symmetries(problem.channel, catalog.kind());
    plan = plan_orbits(symmetries, catalog.kind(), problem.catalog.local_size());
  } else {
    plan.representatives.resize(n);
    for (std::size_t x = 0; x < n; ++x) plan.representatives[x] = x;
  }

  parallel_for(plan.representatives, options.threads, [&](std::size_t x) {
    try {
      entries[x] = make_entry(decompose_gate_action(problem, x, options.solver));
    } catch (const SolverFailure& f) {
      throw SolverFailure(std::string(f.what()) + " at input " + describe_label(problem.catalog, x), f.residual(),
                          f.best_iterate());
    }
  });

  const std::size_t n_kets = reduce ? problem.catalog.local_size() : 0;
  for (const OrbitPlan::Step& step : plan.steps) {
    const TableEntry& src = entries[step.source];
    TableEntry e;
    e.decomposition = transform_decomposition(symmetries[step.symmetry], catalog.kind(), n_kets, step.source,
                                              src.decomposition);
    e.certificate = src.certificate;
    e.status = src.status;
    e.derived_from = src.derived_from ? *src.derived_from : step.source;
    const Vector y = local_target(problem, step.input);
    const VerifyReport v = verify_decomposition(problem.dictionary, y, e.decomposition, options.solver.residual_tol);
    if (!v.ok) {
      throw SolverFailure("symmetry-mapped decomposition failed verification at input " +
                              describe_label(problem.catalog, step.input),
                          v.residual, e.decomposition.dense(problem.dictionary.size()));
    }
    e.certificate.feasibility_residual = std::max(e.certificate.feasibility_residual, v.residual);
    fill_cdf(e);
    entries[step.input] = std::move(e);
  }
  return QuasiProbTable(std::move(gate_label), std::move(problem), std::move(entries));
}

}  // namespace framesim
