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

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "framesim/basis_pursuit.hpp"

namespace framesim {

struct TableEntry {
  Decomposition decomposition;
  /// cdf[k] = sum_{j <= k} |lambda_j| / one_norm over the support order; last entry is 1.
  std::vector<double> cdf;
  DualCertificate certificate;
  ConicStatus status = ConicStatus::Optimal;
  int iterations = 0;
  /// Set when the entry was mapped from another input by a symmetry of the channel.
  std::optional<std::size_t> derived_from;

  double probability(std::size_t k) const;
  /// Support position drawn by inverse CDF for u in [0, 1).
  std::size_t draw(double u) const;
};

/// Per-input decompositions of one noisy gate over the local frame restriction.
class QuasiProbTable {
 public:
  QuasiProbTable() = default;
  QuasiProbTable(std::string gate, LocalProblem problem, std::vector<TableEntry> entries);

  const std::string& gate() const { return gate_; }
  FrameKind kind() const { return problem_.catalog.kind(); }
  Picture picture() const { return problem_.picture; }
  const LocalProblem& problem() const { return problem_; }
  const FrameCatalog& local_catalog() const { return problem_.catalog; }
  std::size_t size() const { return entries_.size(); }
  const TableEntry& entry(std::size_t input) const { return entries_.at(input); }
  const std::vector<TableEntry>& entries() const { return entries_; }

  /// sup over inputs of the entry one-norms.
  double table_norm() const { return table_norm_; }
  std::size_t argmax_input() const { return argmax_; }
  /// Number of independently solved entries and how many of them are certified.
  std::size_t solved_count() const;
  std::size_t certified_count() const;
  bool all_certified() const { return certified_count() == solved_count(); }
  double max_gap() const;

  nlohmann::json to_json() const;

 private:
  std::string gate_;
  LocalProblem problem_;
  std::vector<TableEntry> entries_;
  double table_norm_ = 0.0;
  std::size_t argmax_ = 0;
};

struct TableOptions {
  BasisPursuitOptions solver;
  /// Solve one input per symmetry orbit (stabilizer frames).
  bool use_symmetry = true;
  /// Worker threads for independent solves; 0 picks the hardware concurrency.
  int threads = 0;
};

/// Builds the table over every input of the local frame restriction.
QuasiProbTable build_quasiprob_table(const NoisyChannel& gate, const FrameCatalog& catalog, Picture picture,
                                     const TableOptions& options = {});
QuasiProbTable build_quasiprob_table(LocalProblem problem, std::string gate_label, const TableOptions& options = {});

/// Entry with its sampling distribution from a solve result.
TableEntry make_entry(const BasisPursuitResult& result);

}  // namespace framesim
