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
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "framesim/path_model.hpp"

namespace framesim {

/// Hoeffding sample count ceil(2 ln(2/delta) e_bound^2 / epsilon^2) for estimators
/// with real part in [-e_bound, e_bound].
std::uint64_t plan_samples(double e_bound, double epsilon, double delta);

/// initial_norm * prod_j table_norm_j * final_overlap_bound.
double bound_E(const std::vector<const QuasiProbTable*>& tables, double initial_norm, double final_overlap_bound);

/// Logical random stream `stream` of a master seed; independent of thread count.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

struct PathSample {
  std::vector<FrameElementLabel> labels;
  std::vector<double> step_norms;
  Complex estimator_value;
};

/// Draws one path. Labels and row norms are recorded when `record` is set.
PathSample sample_path(const PathModel& model, RngStream& rng, bool record = true);
/// Estimator value of one path without recording.
Complex sample_value(const PathModel& model, RngStream& rng);

struct EstimateOptions {
  double epsilon = 0.1;
  double delta = 0.05;
  std::uint64_t seed = 1;
  /// Logical streams; sample i belongs to stream i mod streams.
  int streams = 16;
  /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
  int threads = 0;
  /// Stop before the Hoeffding count once sqrt(2 ln(2/delta)) * std_error <= epsilon.
  bool adaptive = false;
  /// Samples per stream between adaptive checks.
  std::uint64_t batch = 256;
  /// Fixed sample count instead of the Hoeffding plan (0 keeps the plan).
  std::uint64_t samples = 0;
};

struct EstimatorResult {
  double mean = 0.0;
  Complex raw_mean;
  std::uint64_t n_samples = 0;
  std::uint64_t planned_samples = 0;
  /// Worst-case |estimator| from the table norms.
  double e_bound = 0.0;
  /// Largest |estimator| over the drawn paths.
  double max_abs_estimator = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  /// Standard error of the real part of the mean.
  double std_error = 0.0;
  double imag_std_error = 0.0;
  /// |Im raw_mean| <= 3 * imag_std_error (up to rounding).
  bool imaginary_check_passed = true;
  bool stopped_early = false;
  std::uint64_t seed = 0;
  int streams = 0;
  std::string manifest_hash;
  double table_seconds = 0.0;
  double sample_seconds = 0.0;

  nlohmann::json to_json() const;
};

/// Monte Carlo estimate of tr[O C_m o ... o C_1(rho0)]. Every path is checked
/// against e_bound. A circuit without gates has a single deterministic path.
EstimatorResult estimate(const PathModel& model, const EstimateOptions& options = {});
EstimatorResult estimate(const Circuit& circuit, const FrameCatalog& frame, Picture picture,
                         const EstimateOptions& options = {}, const TableOptions& tables = {});

/// Exact sum over every path; throws UnsupportedError beyond `max_paths` leaves.
Complex enumerate_all_paths(const PathModel& model, std::uint64_t max_paths = 1000000);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);
/// Hash of the frame manifest, picture, circuit and sampling options.
std::string manifest_hash(const PathModel& model, const EstimateOptions& options);

}  // namespace framesim
