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
#include <set>

#include "framesim/basis_pursuit.hpp"
#include "framesim/frames.hpp"
#include "framesim/stabilizer.hpp"

using namespace framesim;

TEST_CASE("stabilizer state counts") {
  CHECK(StabilizerKets::get(1).size() == 6);
  CHECK(StabilizerKets::get(2).size() == 60);
  CHECK(StabilizerKets::get(3).size() == 1080);
  CHECK(enumerate_stabilizer_states(2).size() == 60);
  CHECK(build_dyadic_catalog(1).size() == 36);
  CHECK(build_dyadic_catalog(2).size() == 3600);
}

TEST_CASE("stabilizer kets are distinct unit vectors in the documented order") {
  const auto& k1 = StabilizerKets::get(1);
  const double s = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(k1.ket(2)(1) - Complex{s}) < 1e-15);
  CHECK(std::abs(k1.ket(3)(1) - Complex{-s}) < 1e-15);
  CHECK(std::abs(k1.ket(4)(1) - Complex{0.0, s}) < 1e-15);
  CHECK(std::abs(k1.ket(5)(1) - Complex{0.0, -s}) < 1e-15);
  const auto& k2 = StabilizerKets::get(2);
  for (std::size_t i = 0; i < k2.size(); ++i) {
    CHECK(k2.ket(i).norm() == doctest::Approx(1.0));
    for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(std::abs(k2.ket(i).dot(k2.ket(j))) - 1.0) > 1e-6);
  }
}

TEST_CASE("stabilizer lookup recovers the phase") {
  const auto& k2 = StabilizerKets::get(2);
  const Complex phase = std::polar(1.0, 0.7);
  const auto m = k2.find(phase * k2.ket(17));
  REQUIRE(m.has_value());
  CHECK(m->index == 17);
  CHECK(std::abs(m->phase - phase) < 1e-12);
  Vector t(2);
  t << std::cos(0.3), std::sin(0.3);
  CHECK_FALSE(StabilizerKets::get(1).find(t).has_value());
}

TEST_CASE("Clifford group orders") {
  CHECK(clifford_group(1).size() == 24);
  CHECK(clifford_group(2).size() == 11520);
}

TEST_CASE("catalog sizes") {
  CHECK(FrameCatalog::diag_stab(1).size() == 6);
  CHECK(FrameCatalog::diag_stab(2).size() == 60);
  CHECK(FrameCatalog::dyad_stab(1).size() == 36);
  CHECK(FrameCatalog::dyad_stab(2).size() == 3600);
  CHECK(FrameCatalog::pauli(2).size() == 16);
  CHECK(FrameCatalog::ext_pauli(1, 0.5).size() == 6);
  CHECK(FrameCatalog::product(2, 24, 1).size() == 900);
  CHECK_THROWS_AS(FrameCatalog::diag_stab(4), UnsupportedError);
}

TEST_CASE("dictionaries span the operator space") {
  for (int q = 1; q <= 2; ++q) {
    const Eigen::Index full = Eigen::Index{1} << (2 * q);
    CHECK(build_dictionary(FrameCatalog::diag_stab(q), q).rank() == full);
    CHECK(build_dictionary(FrameCatalog::dyad_stab(q), q).rank() == full);
    CHECK(build_dictionary(FrameCatalog::pauli(q), q).rank() == full);
    CHECK(build_dictionary(FrameCatalog::ext_pauli(q, 0.5), q).rank() == full);
    CHECK(build_dictionary(FrameCatalog::product(q, 4, 9), q).rank() == full);
  }
  CHECK(build_dictionary(FrameCatalog::diag_stab(1), 1).real_valued);
  CHECK_FALSE(build_dictionary(FrameCatalog::dyad_stab(1), 1).real_valued);
}

TEST_CASE("dyadic element index is ket * N + bra") {
  const FrameCatalog c = FrameCatalog::dyad_stab(1);
  const FrameElementLabel l = c.label(2 * 6 + 5);
  CHECK(l.payload == std::vector<std::uint32_t>{2, 5});
  const auto& k = StabilizerKets::get(1);
  CHECK(c.element(l).max_abs_diff(DenseOperator::dyad(k.ket(2), k.ket(5))) < 1e-15);
  CHECK(c.index(l) == 17);
}

TEST_CASE("extended Pauli local set") {
  const auto set = build_ext_pauli_local_set(0.84);
  REQUIRE(set.size() == 6);
  const Matrix expected = 0.84 / std::numbers::sqrt2 * (pauli_matrix(1) + pauli_matrix(2));
  CHECK((set[4].matrix() - expected).norm() < 1e-15);
  const Matrix expected_minus = 0.84 / std::numbers::sqrt2 * (pauli_matrix(1) - pauli_matrix(2));
  CHECK((set[5].matrix() - expected_minus).norm() < 1e-15);
  CHECK_THROWS(build_ext_pauli_local_set(1.2));
  CHECK_THROWS(build_ext_pauli_local_set(-0.1));
}

TEST_CASE("product frame starts with the stabilizer states and is seeded") {
  const FrameCatalog a = FrameCatalog::product(1, 3, 42);
  const FrameCatalog b = FrameCatalog::product(1, 3, 42);
  const FrameCatalog c = FrameCatalog::product(1, 3, 43);
  REQUIRE(a.local_kets().size() == 9);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(std::abs(std::abs(a.local_kets()[k].dot(StabilizerKets::get(1).ket(k))) - 1.0) < 1e-14);
  }
  CHECK((a.local_kets()[7] - b.local_kets()[7]).norm() == 0.0);
  CHECK((a.local_kets()[7] - c.local_kets()[7]).norm() > 1e-3);
  for (const Vector& k : a.local_kets()) CHECK(k.norm() == doctest::Approx(1.0));
}

TEST_CASE("manifest round trip") {
  const FrameCatalog a = FrameCatalog::product(2, 5, 17);
  const FrameCatalog b = FrameCatalog::from_manifest(a.manifest());
  CHECK(b.kind() == FrameKind::Product);
  CHECK(b.n_qubits() == 2);
  REQUIRE(b.local_kets().size() == a.local_kets().size());
  for (std::size_t k = 0; k < a.local_kets().size(); ++k) {
    CHECK((a.local_kets()[k] - b.local_kets()[k]).norm() == 0.0);
  }
  const FrameCatalog e = FrameCatalog::from_manifest(FrameCatalog::ext_pauli(1, 0.7).manifest());
  CHECK(e.hyper_a() == 0.7);
}

TEST_CASE("labels round trip through indices") {
  const FrameCatalog c = FrameCatalog::ext_pauli(3, 0.8);
  for (std::size_t i = 0; i < c.size(); i += 7) CHECK(c.index(c.label(i)) == i);
  FrameElementLabel bad{FrameKind::ExtPauli, {0, 9, 1}};
  CHECK_THROWS_AS(c.validate(bad), std::invalid_argument);
}

TEST_CASE("observable and state overlaps") {
  const FrameCatalog p = FrameCatalog::pauli(2);
  const ProductState s = ProductState::parse("0+");
  CHECK(std::abs(eval_state_overlap(p, {FrameKind::Pauli, {3, 1}}, s) - Complex{1.0}) < 1e-14);
  CHECK(std::abs(eval_state_overlap(p, {FrameKind::Pauli, {1, 1}}, s)) < 1e-14);
  const FrameCatalog d = FrameCatalog::diag_stab(2);
  const PauliString zx = PauliString::parse("-ZX");
  // |0+> is kron(ket 0, ket 2) of the single-qubit order.
  const auto m = StabilizerKets::get(2).find(s.ket());
  REQUIRE(m.has_value());
  CHECK(std::abs(eval_observable_overlap(d, {FrameKind::DiagStab, {static_cast<std::uint32_t>(m->index)}}, zx) -
                 Complex{-1.0}) < 1e-14);
  // Product-shaped overlaps factorize against the dense trace.
  const FrameCatalog e = FrameCatalog::ext_pauli(2, 0.6);
  const FrameElementLabel l{FrameKind::ExtPauli, {4, 5}};
  const Complex dense = (PauliString::parse("+XY").to_dense().matrix() * e.element(l).matrix()).trace();
  CHECK(std::abs(eval_observable_overlap(e, l, PauliString::parse("+XY")) - dense) < 1e-14);
}

TEST_CASE("product states") {
  const ProductState s = ProductState::parse("01+-rl");
  CHECK(s.size() == 6);
  CHECK(s.local_index(4) == 4);
  CHECK(std::abs(s.density().trace() - Complex{1.0}) < 1e-12);
  CHECK_THROWS(ProductState::parse("0x"));
}

TEST_CASE("frame names parse") {
  CHECK(parse_frame_kind("dyad_stab") == FrameKind::DyadStab);
  CHECK(parse_frame_kind("ext-pauli") == FrameKind::ExtPauli);
  CHECK(natural_picture(FrameKind::Product) == Picture::Schrodinger);
  CHECK(natural_picture(FrameKind::Pauli) == Picture::Heisenberg);
  CHECK_THROWS(parse_frame_kind("mps"));
}
