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

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "framesim/channel.hpp"
#include "framesim/frames.hpp"
#include "framesim/quasiprob_table.hpp"

namespace framesim {

/// Frame kind with its hyperparameters.
struct FrameSpec {
  FrameKind kind = FrameKind::Pauli;
  /// Extended Pauli hyperparameter.
  double a = 0.84;
  /// Haar-random local states added to the six stabilizer states of the product frame.
  int extra_random = 24;
  std::uint64_t seed = 1;

  FrameCatalog catalog(int n_qubits = 1) const;
  nlohmann::json to_json() const;
};

struct GateNoise {
  std::string gate = "T";
  NoiseModel noise = NoiseModel::Depolarizing;
};

/// Table summary of one noisy gate at one noise strength.
struct SweepPoint {
  double p = 0.0;
  std::string gate;
  double norm = 0.0;
  double squared_norm = 0.0;
  bool certified = false;
  double max_gap = 0.0;
  std::size_t solved = 0;
  std::size_t certified_count = 0;
  std::size_t argmax_input = 0;
  /// Empty on success, otherwise the solver failure message.
  std::string error;
};

struct SweepSpec {
  FrameSpec frame;
  std::vector<std::string> gates{"T"};
  NoiseModel noise = NoiseModel::Depolarizing;
  double p_min = 0.0;
  double p_max = 0.15;
  int p_steps = 61;
  std::optional<Picture> picture;
  TableOptions table;
  /// Sweep points evaluated concurrently; 0 picks the hardware concurrency.
  int workers = 0;

  Picture resolved_picture() const { return picture.value_or(natural_picture(frame.kind)); }
  std::vector<double> grid() const;
  /// Throws std::invalid_argument on an empty gate list, fewer than 2 points
  /// or strengths outside the noise model's range.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Default p-grid upper end: 0.10 for the Pauli frame, 0.15 otherwise.
double default_p_max(FrameKind kind);
std::vector<double> linear_grid(double lo, double hi, int points);

SweepPoint evaluate_point(const FrameCatalog& frame, Picture picture, const std::string& gate, NoiseModel noise,
                          double p, const TableOptions& options = {});

/// One point per (p, gate) in grid-major order; solver failures are recorded, not thrown.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec);
/// '#' manifest lines, header and rows with 17 significant digits.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepPoint>& points);

struct ThresholdResult {
  std::string gate;
  FrameKind frame = FrameKind::Pauli;
  NoiseModel noise = NoiseModel::Depolarizing;
  bool found = false;
  /// The predicate fails at p_lo and holds at p_hi; p_cl is the bracket midpoint.
  double p_lo = 0.0;
  double p_hi = 0.0;
  double p_cl = 0.0;
  double bracket_width = 0.0;
  /// Table norms at p_hi and p_lo.
  double norm_at_threshold = 0.0;
  double norm_below = 0.0;
  /// Post-hoc check of the bracket ends.
  bool verified = false;
  std::vector<SweepPoint> evaluations;
  std::string message;

  nlohmann::json to_json() const;
};

/// Scans the grid of `spec` for the last change of the predicate
/// table_norm <= 1 + tol and bisects it to `bracket_tol`. A previous
/// run_sweep(spec) result may be passed as `grid_scan`.
ThresholdResult find_threshold(const SweepSpec& spec, double bracket_tol = 1e-4, double tol = 1e-6,
                               const std::vector<SweepPoint>* grid_scan = nullptr);

struct ScanAPoint {
  double a = 0.0;
  /// Table norm per gate in the order of the gate set.
  std::vector<double> norms;
  double max_norm = 0.0;
  bool certified = true;
};

struct ScanAResult {
  std::vector<std::string> gates;
  NoiseModel noise = NoiseModel::Depolarizing;
  double p = 0.0;
  std::vector<ScanAPoint> points;
  double argmin_a = 0.0;
  double min_norm = 0.0;
};

/// 0.70, 0.72, ..., 0.94 followed by 0.95.
std::vector<double> default_a_grid();
/// Max over the gate set of the extended-Pauli table norms for each a; the
/// argmin takes the first a attaining the minimum.
ScanAResult scan_a(const std::vector<std::string>& gates, NoiseModel noise, double p, const std::vector<double>& grid,
                   const TableOptions& options = {});
void write_scan_a_csv(std::ostream& out, const ScanAResult& result);

/// Element count, dictionary rank per register size and the manifest.
nlohmann::json frame_summary(const FrameSpec& spec, int max_qubits = 2);

/// %.17g formatting.
std::string format_double(double v);

}  // namespace framesim
