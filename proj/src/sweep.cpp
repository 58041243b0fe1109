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

#include "framesim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include "framesim/basis_pursuit.hpp"

namespace framesim {

namespace {

unsigned hardware_workers(int requested) {
  return requested > 0 ? static_cast<unsigned>(requested) : std::max(1U, std::thread::hardware_concurrency());
}

bool below_one(const SweepPoint& pt, double tol) { return pt.error.empty() && pt.norm <= 1.0 + tol; }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

FrameCatalog FrameSpec::catalog(int n_qubits) const {
  switch (kind) {
    case FrameKind::DiagStab:
      return FrameCatalog::diag_stab(n_qubits);
    case FrameKind::DyadStab:
      return FrameCatalog::dyad_stab(n_qubits);
    case FrameKind::Product:
      return FrameCatalog::product(n_qubits, extra_random, seed);
    case FrameKind::Pauli:
      return FrameCatalog::pauli(n_qubits);
    case FrameKind::ExtPauli:
      return FrameCatalog::ext_pauli(n_qubits, a);
  }
  throw std::logic_error("unknown frame kind");
}

nlohmann::json FrameSpec::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind);
  if (kind == FrameKind::ExtPauli) j["a"] = a;
  if (kind == FrameKind::Product) {
    j["extra_random"] = extra_random;
    j["seed"] = seed;
  }
  return j;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("a grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) g[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (points - 1);
  g.back() = hi;
  return g;
}

double default_p_max(FrameKind kind) { return kind == FrameKind::Pauli ? 0.10 : 0.15; }

std::vector<double> SweepSpec::grid() const { return linear_grid(p_min, p_max, p_steps); }

void SweepSpec::validate() const {
  if (gates.empty()) throw std::invalid_argument("sweep needs at least one gate");
  for (const std::string& g : gates) canonical_gate_name(g);
  if (p_steps < 2) throw std::invalid_argument("p-steps must be at least 2");
  if (!(p_min >= 0.0 && p_min <= p_max && p_max <= max_noise_strength(noise))) {
    throw std::invalid_argument("p-grid must lie within [0, " + format_double(max_noise_strength(noise)) + "] for " +
                                to_string(noise));
  }
}

nlohmann::json SweepSpec::to_json() const {
  nlohmann::json j;
  j["frame"] = frame.to_json();
  j["gates"] = gates;
  j["noise"] = to_string(noise);
  j["p_min"] = p_min;
  j["p_max"] = p_max;
  j["p_steps"] = p_steps;
  j["picture"] = to_string(resolved_picture());
  j["use_symmetry"] = table.use_symmetry;
  j["prune"] = table.solver.prune;
  j["gap_tol"] = table.solver.gap_tol;
  j["residual_tol"] = table.solver.residual_tol;
  return j;
}

SweepPoint evaluate_point(const FrameCatalog& frame, Picture picture, const std::string& gate, NoiseModel noise,
                          double p, const TableOptions& options) {
  SweepPoint pt;
  pt.p = p;
  pt.gate = canonical_gate_name(gate);
  try {
    const QuasiProbTable t = build_quasiprob_table(make_noisy_gate(gate, noise, p), frame, picture, options);
    pt.norm = t.table_norm();
    pt.squared_norm = pt.norm * pt.norm;
    pt.solved = t.solved_count();
    pt.certified_count = t.certified_count();
    pt.certified = t.all_certified();
    pt.max_gap = t.max_gap();
    pt.argmax_input = t.argmax_input();
  } catch (const SolverFailure& e) {
    pt.error = e.what();
    pt.norm = std::nan("");
    pt.squared_norm = std::nan("");
  }
  return pt;
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const FrameCatalog frame = spec.frame.catalog(1);
  const Picture picture = spec.resolved_picture();
  const std::vector<double> grid = spec.grid();
  std::vector<std::pair<double, std::string>> jobs;
  for (double p : grid) {
    for (const std::string& g : spec.gates) jobs.emplace_back(p, g);
  }
  std::vector<SweepPoint> out(jobs.size());
  const unsigned total = hardware_workers(spec.workers);
  const unsigned outer = std::min<unsigned>(total, static_cast<unsigned>(jobs.size()));
  TableOptions inner = spec.table;
  if (inner.threads == 0) inner.threads = static_cast<int>(std::max(1U, total / outer));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      out[i] = evaluate_point(frame, picture, jobs[i].second, spec.noise, jobs[i].first, inner);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < outer; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return out;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepPoint>& points) {
  out << "# framesim sweep\n";
  out << "# manifest: " << spec.to_json().dump() << "\n";
  out << "# catalog: " << spec.frame.catalog(1).manifest().dump() << "\n";
  out << "p,gate,squared_norm,norm,certified,max_gap,solved,certified_solves,argmax_input,status\n";
  for (const SweepPoint& pt : points) {
    out << format_double(pt.p) << ',' << pt.gate << ',' << format_double(pt.squared_norm) << ','
        << format_double(pt.norm) << ',' << (pt.certified ? "true" : "false") << ',' << format_double(pt.max_gap)
        << ',' << pt.solved << ',' << pt.certified_count << ',' << pt.argmax_input << ','
        << (pt.error.empty() ? "ok" : "solver_failure") << '\n';
  }
}

nlohmann::json ThresholdResult::to_json() const {
  nlohmann::json j;
  j["gate"] = gate;
  j["frame"] = to_string(frame);
  j["noise"] = to_string(noise);
  j["found"] = found;
  if (found) {
    j["p_cl"] = p_cl;
    j["p_lo"] = p_lo;
    j["p_hi"] = p_hi;
    j["bracket_width"] = bracket_width;
    j["norm_at_threshold"] = norm_at_threshold;
    j["norm_below"] = norm_below;
    j["verified"] = verified;
  }
  j["evaluations"] = evaluations.size();
  j["message"] = message;
  return j;
}

ThresholdResult find_threshold(const SweepSpec& spec, double bracket_tol, double tol,
                               const std::vector<SweepPoint>* grid_scan) {
  spec.validate();
  if (spec.gates.size() != 1) throw std::invalid_argument("threshold search takes a single gate");
  if (!(bracket_tol > 0.0)) throw std::invalid_argument("bracket tolerance must be positive");
  ThresholdResult r;
  r.gate = canonical_gate_name(spec.gates[0]);
  r.frame = spec.frame.kind;
  r.noise = spec.noise;

  const std::vector<SweepPoint> scan = grid_scan ? *grid_scan : run_sweep(spec);
  if (scan.size() != spec.grid().size()) throw std::invalid_argument("grid scan does not match the sweep grid");
  r.evaluations = scan;
  for (const SweepPoint& pt : scan) {
    if (!pt.error.empty()) {
      r.message = "solver failure at p = " + format_double(pt.p) + ": " + pt.error;
      return r;
    }
  }
  std::optional<std::size_t> last_false;
  for (std::size_t i = scan.size(); i-- > 0;) {
    if (!below_one(scan[i], tol)) {
      last_false = i;
      break;
    }
  }
  if (last_false && *last_false + 1 == scan.size()) {
    r.message = "no threshold: table norm exceeds 1 + tol at p_max";
    return r;
  }

  const FrameCatalog frame = spec.frame.catalog(1);
  const Picture picture = spec.resolved_picture();
  auto eval = [&](double p) {
    SweepPoint pt = evaluate_point(frame, picture, r.gate, spec.noise, p, spec.table);
    r.evaluations.push_back(pt);
    if (!pt.error.empty()) throw SolverFailure(pt.error, 0.0, Vector());
    return pt;
  };

  r.found = true;
  if (!last_false) {
    r.p_lo = r.p_hi = r.p_cl = scan.front().p;
    r.norm_at_threshold = r.norm_below = scan.front().norm;
    r.verified = true;
    r.message = "predicate holds on the whole grid";
    return r;
  }
  double lo = scan[*last_false].p;
  double hi = scan[*last_false + 1].p;
  double norm_lo = scan[*last_false].norm;
  double norm_hi = scan[*last_false + 1].norm;
  try {
    while (hi - lo > bracket_tol) {
      const double mid = 0.5 * (lo + hi);
      const SweepPoint pt = eval(mid);
      if (below_one(pt, tol)) {
        hi = mid;
        norm_hi = pt.norm;
      } else {
        lo = mid;
        norm_lo = pt.norm;
      }
    }
    r.p_lo = lo;
    r.p_hi = hi;
    r.p_cl = 0.5 * (lo + hi);
    r.bracket_width = hi - lo;
    r.norm_at_threshold = norm_hi;
    r.norm_below = norm_lo;
    const SweepPoint check_hi = eval(hi);
    const SweepPoint check_lo = eval(lo);
    r.verified = below_one(check_hi, tol) && !below_one(check_lo, tol);
    r.message = r.verified ? "bracket verified" : "bracket failed post-hoc verification";
  } catch (const SolverFailure& e) {
    r.found = false;
    r.message = std::string("solver failure during bisection: ") + e.what();
  }
  return r;
}

std::vector<double> default_a_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 12; ++k) g.push_back(0.70 + 0.02 * k);
  g.push_back(0.95);
  return g;
}

ScanAResult scan_a(const std::vector<std::string>& gates, NoiseModel noise, double p, const std::vector<double>& grid,
                   const TableOptions& options) {
  if (gates.empty()) throw std::invalid_argument("scan-a needs at least one gate");
  if (grid.empty()) throw std::invalid_argument("scan-a needs at least one value of a");
  ScanAResult r;
  for (const std::string& g : gates) r.gates.push_back(canonical_gate_name(g));
  r.noise = noise;
  r.p = p;
  r.points.resize(grid.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        const FrameCatalog frame = FrameCatalog::ext_pauli(1, grid[i]);
        ScanAPoint pt;
        pt.a = grid[i];
        for (const std::string& g : r.gates) {
          const SweepPoint sp = evaluate_point(frame, Picture::Heisenberg, g, noise, p, options);
          if (!sp.error.empty()) throw SolverFailure(sp.error, 0.0, Vector());
          pt.norms.push_back(sp.norm);
          pt.max_norm = std::max(pt.max_norm, sp.norm);
          pt.certified = pt.certified && sp.certified;
        }
        r.points[i] = std::move(pt);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned workers = std::min<unsigned>(hardware_workers(options.threads), static_cast<unsigned>(grid.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::size_t best = 0;
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    if (r.points[i].max_norm < r.points[best].max_norm - 1e-9) best = i;
  }
  r.argmin_a = r.points[best].a;
  r.min_norm = r.points[best].max_norm;
  return r;
}

void write_scan_a_csv(std::ostream& out, const ScanAResult& r) {
  nlohmann::json m;
  m["frame"] = "ext-pauli";
  m["gates"] = r.gates;
  m["noise"] = to_string(r.noise);
  m["p"] = r.p;
  out << "# framesim scan-a\n";
  out << "# manifest: " << m.dump() << "\n";
  out << "# argmin_a: " << format_double(r.argmin_a) << " max_norm: " << format_double(r.min_norm) << "\n";
  out << "a,max_squared_norm,max_norm";
  for (const std::string& g : r.gates) out << ",norm_" << g;
  out << ",certified\n";
  for (const ScanAPoint& pt : r.points) {
    out << format_double(pt.a) << ',' << format_double(pt.max_norm * pt.max_norm) << ',' << format_double(pt.max_norm);
    for (double n : pt.norms) out << ',' << format_double(n);
    out << ',' << (pt.certified ? "true" : "false") << '\n';
  }
}

nlohmann::json frame_summary(const FrameSpec& spec, int max_qubits) {
  nlohmann::json j;
  j["manifest"] = spec.catalog(1).manifest();
  nlohmann::json regs = nlohmann::json::array();
  for (int q = 1; q <= max_qubits; ++q) {
    const FrameCatalog c = spec.catalog(q);
    const Dictionary d = build_dictionary(c, q);
    const auto rank = d.rank();
    nlohmann::json r;
    r["qubits"] = q;
    r["elements"] = c.size();
    r["rank"] = rank;
    r["full_rank"] = rank == (Eigen::Index{1} << (2 * q));
    regs.push_back(std::move(r));
  }
  j["registers"] = std::move(regs);
  return j;
}

}  // namespace framesim
