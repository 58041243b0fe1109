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

// Runs the acceptance checks and prints one PASS/FAIL line per criterion.
// Usage: framesim_acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "framesim/basis_pursuit.hpp"
#include "framesim/circuit.hpp"
#include "framesim/exact.hpp"
#include "framesim/path_model.hpp"
#include "framesim/quasiprob_table.hpp"
#include "framesim/sampler.hpp"
#include "framesim/sweep.hpp"
#include "oracles.hpp"

using namespace framesim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

// Sweep points gathered by every criterion, for the certification count.
std::vector<SweepPoint>& all_points() {
  static std::vector<SweepPoint> points;
  return points;
}

void record(const std::vector<SweepPoint>& pts) {
  all_points().insert(all_points().end(), pts.begin(), pts.end());
}

double table_norm(const FrameCatalog& frame, Picture picture, const std::string& gate, NoiseModel noise, double p) {
  const SweepPoint pt = evaluate_point(frame, picture, gate, noise, p);
  record({pt});
  if (!pt.error.empty()) throw std::runtime_error(pt.error);
  return pt.norm;
}

SweepSpec t_depol_spec(FrameKind kind, int steps) {
  SweepSpec s;
  s.frame.kind = kind;
  s.gates = {"T"};
  s.noise = NoiseModel::Depolarizing;
  s.p_min = 0.0;
  s.p_max = default_p_max(kind);
  s.p_steps = steps;
  return s;
}

// Stabilizer-frame T+depolarizing grids shared by criteria 3, 4 and 11.
const std::vector<SweepPoint>& stabilizer_grid(FrameKind kind) {
  static std::map<FrameKind, std::vector<SweepPoint>> cache;
  auto it = cache.find(kind);
  if (it == cache.end()) {
    it = cache.emplace(kind, run_sweep(t_depol_spec(kind, 16))).first;
    record(it->second);
  }
  return it->second;
}

const double kPauliThreshold = (1.0 - 1.0 / std::numbers::sqrt2) / 4.0;

Outcome criterion_1() {
  const auto t0 = Clock::now();
  const ThresholdResult r = find_threshold(t_depol_spec(FrameKind::Pauli, 16), 1e-7);
  const double dt = seconds_since(t0);
  record(r.evaluations);
  const double err = std::abs(r.p_cl - kPauliThreshold);
  return {r.found && r.verified && err <= 1e-6 && dt < 1.0,
          fmt("p_cl=%.9f closed form=%.9f |diff|=%.2e time=%.3fs", r.p_cl, kPauliThreshold, err, dt)};
}

Outcome criterion_2() {
  SweepSpec spec = t_depol_spec(FrameKind::Pauli, 61);
  const std::vector<double> grid = spec.grid();
  double worst_row = 0.0;
  double worst_max = 0.0;
  bool argmax_ok = true;
  for (double p : grid) {
    const QuasiProbTable t = build_quasiprob_table(make_noisy_gate("T", NoiseModel::Depolarizing, p),
                                                   FrameCatalog::pauli(1), Picture::Heisenberg);
    const double row = std::numbers::sqrt2 * (1.0 - 4.0 * p);
    worst_row = std::max(worst_row, std::abs(t.entry(1).decomposition.one_norm - row));
    worst_max = std::max(worst_max, std::abs(t.table_norm() - std::max(1.0, row)));
    if (row > 1.0 + 1e-9 && std::abs(t.entry(t.argmax_input()).decomposition.one_norm - row) > 1e-10) {
      argmax_ok = false;
    }
  }
  record(run_sweep(spec));
  return {worst_row <= 1e-10 && worst_max <= 1e-10 && argmax_ok,
          fmt("61 points, max |X row - sqrt2(1-4p)|=%.2e, max |norm - max(1,.)|=%.2e", worst_row, worst_max)};
}

Outcome criterion_3() {
  std::string detail;
  bool pass = true;
  for (FrameKind kind : {FrameKind::DiagStab, FrameKind::DyadStab}) {
    const auto t0 = Clock::now();
    const std::vector<SweepPoint>& grid = stabilizer_grid(kind);
    const ThresholdResult r = find_threshold(t_depol_spec(kind, 16), 1e-4, 1e-6, &grid);
    record(r.evaluations);
    const bool ok = r.found && r.verified && r.p_cl >= 0.105 && r.p_cl <= 0.118 && r.bracket_width <= 1e-4;
    pass = pass && ok;
    detail += fmt("%s p_cl=%.6f width=%.1e (%.0fs); ", to_string(kind).c_str(), r.p_cl, r.bracket_width,
                  seconds_since(t0));
  }
  return {pass, detail};
}

Outcome criterion_4() {
  const std::vector<SweepPoint>& diag = stabilizer_grid(FrameKind::DiagStab);
  const std::vector<SweepPoint>& dyad = stabilizer_grid(FrameKind::DyadStab);
  double worst = -1e300;
  for (std::size_t i = 0; i < diag.size(); ++i) worst = std::max(worst, dyad[i].norm - diag[i].norm);
  const double diag02 = table_norm(FrameCatalog::diag_stab(1), Picture::Schrodinger, "T", NoiseModel::Depolarizing, 0.02);
  const double dyad02 = table_norm(FrameCatalog::dyad_stab(1), Picture::Schrodinger, "T", NoiseModel::Depolarizing, 0.02);
  const double gap = diag02 * diag02 - dyad02 * dyad02;
  return {worst <= 1e-7 && gap > 0.01,
          fmt("%zu points, max(dyad - diag)=%.2e, squared gap at p=0.02: %.4f", diag.size(), worst, gap)};
}

Outcome criterion_5() {
  const std::map<NoiseModel, std::vector<double>> strengths = {
      {NoiseModel::Depolarizing, {0.0, 0.02, 0.05, 0.1, 0.2}},
      {NoiseModel::Dephasing, {0.0, 0.05, 0.1, 0.25, 0.5}},
  };
  double worst = 0.0;
  std::size_t count = 0;
  const auto t0 = Clock::now();
  for (FrameKind kind : {FrameKind::DiagStab, FrameKind::DyadStab, FrameKind::Pauli}) {
    FrameSpec fs;
    fs.kind = kind;
    const FrameCatalog frame = fs.catalog(1);
    for (const char* gate : {"H", "S", "CNOT"}) {
      for (const auto& [noise, ps] : strengths) {
        for (double p : ps) {
          worst = std::max(worst, std::abs(table_norm(frame, natural_picture(kind), gate, noise, p) - 1.0));
          ++count;
        }
      }
    }
  }
  return {worst <= 1e-9, fmt("%zu tables, max |norm - 1|=%.2e (%.0fs)", count, worst, seconds_since(t0))};
}

Outcome criterion_6() {
  std::string detail;
  bool pass = true;
  for (std::uint64_t seed : {1, 2, 3}) {
    FrameSpec fs;
    fs.kind = FrameKind::Product;
    fs.extra_random = 24;
    fs.seed = seed;
    const FrameCatalog frame = fs.catalog(1);
    const double lo = table_norm(frame, Picture::Schrodinger, "CNOT", NoiseModel::Depolarizing, 0.05);
    const double hi = table_norm(frame, Picture::Schrodinger, "CNOT", NoiseModel::Depolarizing, 0.15);
    pass = pass && lo > 1.05 && hi <= 1.02;
    detail += fmt("seed %llu: %.4f@0.05 %.4f@0.15; ", static_cast<unsigned long long>(seed), lo, hi);
  }
  return {pass, detail};
}

Outcome criterion_7() {
  const double p = 0.04;
  double ext_max = 0.0;
  for (const char* gate : {"H", "CNOT", "T"}) {
    const double n = table_norm(FrameCatalog::ext_pauli(1, 0.84), Picture::Heisenberg, gate,
                                NoiseModel::Depolarizing, p);
    ext_max = std::max(ext_max, n * n);
  }
  const double pauli_t = table_norm(FrameCatalog::pauli(1), Picture::Heisenberg, "T", NoiseModel::Depolarizing, p);
  const double pauli_sq = pauli_t * pauli_t;
  const ScanAResult scan = scan_a({"H", "CNOT", "T"}, NoiseModel::Depolarizing, p, default_a_grid());
  const bool ok = pauli_sq - ext_max >= 0.02 && std::abs(scan.argmin_a - 0.84) <= 0.04;
  return {ok, fmt("ext-pauli max squared norm %.4f vs Pauli T %.4f, scan-a argmin a=%.2f", ext_max, pauli_sq,
                  scan.argmin_a)};
}

Outcome criterion_8() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20261015);
  double worst = 0.0;
  int count = 0;
  for (FrameKind kind : {FrameKind::DiagStab, FrameKind::DyadStab, FrameKind::Product, FrameKind::Pauli,
                         FrameKind::ExtPauli}) {
    // Non-Clifford dyadic tables on two qubits cost seconds each, so dyadic instances use one qubit.
    const int n = kind == FrameKind::DyadStab ? 1 : 2;
    FrameSpec fs;
    fs.kind = kind;
    fs.extra_random = 2;
    const FrameCatalog frame = fs.catalog(1);
    for (int i = 0; i < 5; ++i) {
      const Circuit c = oracle::random_circuit(rng, n, 4);
      const double ex = exact_expectation(c);
      const PathModel model(c, frame, natural_picture(kind));
      const Complex v = enumerate_all_paths(model);
      worst = std::max(worst, std::abs(v - Complex(ex, 0.0)));
      ++count;
    }
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-10 && dt < 30.0, fmt("%d instances, max |enum - exact|=%.2e, time=%.1fs", count, worst, dt)};
}

Outcome criterion_9() {
  const Circuit c = parse_circuit(R"({"n_qubits": 3, "initial_state": "0+r", "observable": "+ZYY", "gates": [
    {"name": "H", "qubits": [0], "noise": {"model": "depolarizing", "strength": 0.02}},
    {"name": "T", "qubits": [0], "noise": {"model": "depolarizing", "strength": 0.03}},
    {"name": "CNOT", "qubits": [0, 1], "noise": {"model": "dephasing", "strength": 0.02}},
    {"name": "T", "qubits": [1], "noise": {"model": "depolarizing", "strength": 0.03}},
    {"name": "H", "qubits": [2]},
    {"name": "CZ", "qubits": [1, 2], "noise": {"model": "depolarizing", "strength": 0.01}},
    {"name": "T", "qubits": [2], "noise": {"model": "amplitude_damping", "strength": 0.05}},
    {"name": "S", "qubits": [1]},
    {"name": "CNOT", "qubits": [2, 0]},
    {"name": "T", "qubits": [0], "noise": {"model": "depolarizing", "strength": 0.02}}]})",
                                 "acceptance");
  const double ex = exact_expectation(c);
  const PathModel model(c, FrameCatalog::pauli(1), Picture::Heisenberg);
  int inside = 0;
  double max_se = 0.0;
  std::uint64_t n = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    EstimateOptions o;
    o.epsilon = 0.1;
    o.delta = 0.05;
    o.seed = seed;
    const EstimatorResult r = estimate(model, o);
    n = r.n_samples;
    max_se = std::max(max_se, r.std_error);
    if (std::abs(r.mean - ex) <= 0.1) ++inside;
  }
  return {inside >= 93 && max_se > 0.0,
          fmt("exact=%.6f, %d/100 runs within 0.1 (N=%llu, E=%.4f, std error %.4f)", ex, inside,
              static_cast<unsigned long long>(n), model.bound_E(), max_se)};
}

Outcome criterion_10() {
  bool pass = true;
  std::string detail;
  const auto check = [&](const char* name, const FrameCatalog& c1, const FrameCatalog& c2, std::size_t n1,
                         std::size_t n2) {
    const bool counts = n1 == 0 || (c1.size() == n1 && c2.size() == n2);
    const bool ranks = build_dictionary(c1, 1).rank() == 4 && build_dictionary(c2, 2).rank() == 16;
    pass = pass && counts && ranks;
    detail += fmt("%s %zu/%zu%s; ", name, c1.size(), c2.size(), ranks ? "" : " rank deficient");
  };
  check("diag-stab", FrameCatalog::diag_stab(1), FrameCatalog::diag_stab(2), 6, 60);
  check("dyad-stab", FrameCatalog::dyad_stab(1), FrameCatalog::dyad_stab(2), 36, 3600);
  check("pauli", FrameCatalog::pauli(1), FrameCatalog::pauli(2), 4, 16);
  check("ext-pauli", FrameCatalog::ext_pauli(1, 0.84), FrameCatalog::ext_pauli(2, 0.84), 0, 0);
  check("product", FrameCatalog::product(1, 24, 1), FrameCatalog::product(2, 24, 1), 30, 900);
  return {pass, detail};
}

Outcome criterion_11() {
  SweepSpec spec = t_depol_spec(FrameKind::DiagStab, 61);
  const std::vector<SweepPoint> pts = run_sweep(spec);
  record(pts);
  std::ostringstream csv;
  write_sweep_csv(csv, spec, pts);
  // Every row's certified column must match the point.
  std::istringstream in(csv.str());
  std::string line;
  std::size_t row = 0;
  bool flags_ok = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("p,", 0) == 0) continue;
    const bool flagged = line.find(",false,") != std::string::npos;
    flags_ok = flags_ok && row < pts.size() && flagged == !pts[row].certified;
    ++row;
  }
  flags_ok = flags_ok && row == pts.size();
  std::size_t solved = 0;
  std::size_t certified = 0;
  std::size_t uncertified_points = 0;
  for (const SweepPoint& pt : all_points()) {
    solved += pt.solved;
    certified += pt.certified_count;
    if (!pt.certified) ++uncertified_points;
  }
  const double frac = solved ? static_cast<double>(certified) / static_cast<double>(solved) : 0.0;
  return {frac >= 0.99 && flags_ok,
          fmt("%zu/%zu solves certified (%.4f) over %zu sweep points, %zu points flagged uncertified, csv flags %s",
              certified, solved, frac, all_points().size(), uncertified_points, flags_ok ? "consistent" : "wrong")};
}

Outcome criterion_12() {
  bool pass = true;
  double worst_row = 0.0;
  for (double q : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9}) {
    const QuasiProbTable t = build_quasiprob_table(make_noisy_gate("T", NoiseModel::AmplitudeDamping, q),
                                                   FrameCatalog::pauli(1), Picture::Heisenberg);
    const double row = std::sqrt(2.0 * (1.0 - q));
    worst_row = std::max(worst_row, std::abs(t.entry(1).decomposition.one_norm - row));
    worst_row = std::max(worst_row, std::abs(t.table_norm() - std::max(1.0, row)));
  }
  pass = pass && worst_row <= 1e-9;

  SweepSpec spec;
  spec.frame.kind = FrameKind::Pauli;
  spec.noise = NoiseModel::AmplitudeDamping;
  spec.p_min = 0.0;
  spec.p_max = 1.0;
  spec.p_steps = 11;
  const ThresholdResult thr = find_threshold(spec, 1e-7, 1e-9);
  record(thr.evaluations);
  pass = pass && thr.found && std::abs(thr.p_cl - 0.5) <= 1e-6;

  // Clifford gates with amplitude damping: unit norm in the Pauli frame,
  // above sqrt(1-q)+q > 1 in the stabilizer polytope.
  double pauli_worst = 0.0;
  double stab_margin = 1e300;
  double stab_min = 1e300;
  for (double q : {0.1, 0.3, 0.5, 0.7}) {
    for (const char* gate : {"H", "S", "CNOT"}) {
      pauli_worst = std::max(
          pauli_worst,
          std::abs(table_norm(FrameCatalog::pauli(1), Picture::Heisenberg, gate, NoiseModel::AmplitudeDamping, q) -
                   1.0));
      const double s =
          table_norm(FrameCatalog::diag_stab(1), Picture::Schrodinger, gate, NoiseModel::AmplitudeDamping, q);
      stab_margin = std::min(stab_margin, s - (std::sqrt(1.0 - q) + q));
      stab_min = std::min(stab_min, s);
    }
  }
  pass = pass && pauli_worst <= 1e-9 && stab_margin >= -1e-9 && stab_min > 1.0 + 1e-6;
  return {pass, fmt("max X-row error %.2e, crossing q=%.7f, Pauli Clifford+AD max |norm-1|=%.2e, "
                    "stabilizer Clifford+AD min norm %.4f (margin over sqrt(1-q)+q: %.2e)",
                    worst_row, thr.p_cl, pauli_worst, stab_min, stab_margin)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Pauli T+depolarizing threshold matches closed form", criterion_1},
      {"Pauli T+depolarizing sweep matches transfer-matrix rows", criterion_2},
      {"stabilizer-frame T+depolarizing thresholds", criterion_3},
      {"dyadic frame never worse than diagonal frame", criterion_4},
      {"Clifford gates with Pauli noise have unit norm", criterion_5},
      {"product frame CNOT+depolarizing crossing", criterion_6},
      {"extended Pauli frame at a=0.84", criterion_7},
      {"path enumeration equals exact simulation", criterion_8},
      {"Monte Carlo estimates meet the error target", criterion_9},
      {"frame counts and spanning ranks", criterion_10},
      {"solver certification", criterion_11},
      {"amplitude damping is not unital", criterion_12},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %d: %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(),
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
