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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "framesim/sweep.hpp"

using namespace framesim;

TEST_CASE("linear grids include both ends") {
  const auto g = linear_grid(0.0, 0.15, 61);
  REQUIRE(g.size() == 61);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 0.15);
  CHECK(g[20] == doctest::Approx(0.05));
  CHECK_THROWS(linear_grid(0.0, 1.0, 1));
}

TEST_CASE("sweep spec validation") {
  SweepSpec s;
  s.p_max = 0.4;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.p_max = 0.1;
  s.p_steps = 1;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.p_steps = 3;
  s.gates = {};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("Pauli sweep follows the transfer-matrix closed form") {
  SweepSpec s;
  s.frame.kind = FrameKind::Pauli;
  s.p_max = 0.10;
  const auto pts = run_sweep(s);
  REQUIRE(pts.size() == 61);
  for (const SweepPoint& pt : pts) {
    const double expected = std::max(1.0, std::numbers::sqrt2 * (1.0 - 4.0 * pt.p));
    CHECK(pt.norm == doctest::Approx(expected).epsilon(1e-10));
    CHECK(pt.squared_norm == doctest::Approx(expected * expected).epsilon(1e-10));
    CHECK(pt.certified);
  }
}

TEST_CASE("identity gate sweeps are constant") {
  SweepSpec s;
  s.frame.kind = FrameKind::DiagStab;
  s.gates = {"I"};
  s.p_steps = 4;
  for (const SweepPoint& pt : run_sweep(s)) CHECK(pt.norm == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sweep CSV is byte-identical across runs") {
  SweepSpec s;
  s.frame.kind = FrameKind::Product;
  s.frame.extra_random = 3;
  s.frame.seed = 11;
  s.gates = {"T", "H"};
  s.p_steps = 3;
  std::ostringstream a;
  std::ostringstream b;
  write_sweep_csv(a, s, run_sweep(s));
  s.workers = 1;
  write_sweep_csv(b, s, run_sweep(s));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("# framesim sweep\n", 0) == 0);
  CHECK(a.str().find("p,gate,squared_norm,norm,certified") != std::string::npos);
}

TEST_CASE("threshold search on the Pauli frame") {
  SweepSpec s;
  s.frame.kind = FrameKind::Pauli;
  s.noise = NoiseModel::Dephasing;
  s.p_max = 0.2;
  s.p_steps = 11;
  const ThresholdResult r = find_threshold(s, 1e-7);
  REQUIRE(r.found);
  CHECK(r.verified);
  CHECK(r.bracket_width <= 1e-7);
  // sqrt2 (1 - 2p) = 1
  CHECK(r.p_cl == doctest::Approx((1.0 - 1.0 / std::numbers::sqrt2) / 2.0).epsilon(1e-6));
}

TEST_CASE("threshold search reports a missing threshold") {
  SweepSpec s;
  s.frame.kind = FrameKind::Pauli;
  s.p_max = 0.05;
  s.p_steps = 3;
  const ThresholdResult r = find_threshold(s);
  CHECK_FALSE(r.found);
  CHECK(r.message.find("no threshold") != std::string::npos);
}

TEST_CASE("a = 0 in the extended Pauli frame reproduces the Pauli frame") {
  const ScanAResult r = scan_a({"T", "H", "CNOT"}, NoiseModel::Depolarizing, 0.03, {0.0});
  REQUIRE(r.points.size() == 1);
  const double pauli = std::numbers::sqrt2 * (1.0 - 4.0 * 0.03);
  CHECK(r.points[0].norms[0] == doctest::Approx(pauli).epsilon(1e-9));
  CHECK(r.points[0].norms[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.points[0].norms[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("T norm does not grow with a at small p") {
  const ScanAResult r = scan_a({"T"}, NoiseModel::Depolarizing, 0.01, default_a_grid());
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    CHECK(r.points[i].max_norm <= r.points[i - 1].max_norm + 1e-8);
  }
}

TEST_CASE("frame summaries") {
  FrameSpec f;
  f.kind = FrameKind::DyadStab;
  const auto j = frame_summary(f);
  CHECK(j["registers"][0]["elements"] == 36);
  CHECK(j["registers"][1]["elements"] == 3600);
  CHECK(j["registers"][1]["full_rank"] == true);
  f.kind = FrameKind::ExtPauli;
  f.a = 0.5;
  const auto e = frame_summary(f, 1);
  CHECK(e["registers"][0]["elements"] == 6);
  CHECK(e["registers"][0]["rank"] == 4);
}
