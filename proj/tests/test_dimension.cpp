// Copyright 2026 The mcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mcl/dimension.hpp"
#include "mcl/error.hpp"
#include "mcl/statevector.hpp"

using namespace mcl;

namespace {

CircuitInstance single_gate(const GateMatrix& u) {
  return {BrickwallLayout::build(2, 2), {u}, MeasurementConfiguration(2, 2), 0.0};
}

Eigen::VectorXcd column(const Eigen::MatrixXd& m, int k) {
  const auto dim = m.rows() / 2;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(m(i, k), m(dim + i, k));
  return v;
}

// Dense oracle: U^dagger P U |0^n> for a Pauli string.
std::vector<Complex> dense_image(const BrickwallLayout& layout, const std::vector<GateMatrix>& gs, int last,
                                 const PauliString& p) {
  auto s = StateVector::zero_state(layout.n());
  for (int g = 0; g <= last; ++g) apply_two_qubit_gate(s, gs[g], layout.placement(g).qubit, layout.placement(g).qubit + 1);
  for (int q = 0; q < layout.n(); ++q) {
    if ((p.z >> q) & 1) apply_single_qubit_gate(s, gates::pauli('Z'), q);
    if ((p.x >> q) & 1) apply_single_qubit_gate(s, gates::pauli('X'), q);
  }
  const Complex ph[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (auto& a : s.amplitudes) a *= ph[p.kappa & 3];
  for (int g = last; g >= 0; --g)
    apply_two_qubit_gate(s, gs[g].adjoint(), layout.placement(g).qubit, layout.placement(g).qubit + 1);
  return s.amplitudes;
}

}  // namespace

TEST_CASE("perturbation indices") {
  CHECK(perturbation_indices(1, PauliFamily::Full15).size() == 15u);
  CHECK(perturbation_indices(4, PauliFamily::SingleQubit6).size() == 24u);
}

TEST_CASE("perturbed outputs on an identity gate") {
  const auto m = perturbed_outputs(single_gate(gates::identity()), PauliFamily::Full15);
  CHECK(m.rows() == 8);
  CHECK(m.cols() == 15);
  const auto idx = perturbation_indices(1, PauliFamily::Full15);
  for (int k = 0; k < 15; ++k) {
    const auto v = column(m, k);
    if (idx[k].alpha == 'Z' && idx[k].beta == 'I') CHECK(std::abs(v(0) - 1.0) < 1e-15);
    if (idx[k].alpha == 'X' && idx[k].beta == 'I') CHECK(std::abs(v(1) - 1.0) < 1e-15);  // qubit 0 is bit 0
  }
}

TEST_CASE("numerical rank basics") {
  CHECK(numerical_rank(Eigen::MatrixXd::Zero(4, 3)).rank == 0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(6, 3);
  const int r = numerical_rank(a).rank;
  Eigen::MatrixXd b(6, 4);
  b << a, a.col(1);
  CHECK(numerical_rank(b).rank == r);
  CHECK_THROWS_AS(numerical_rank(a, 0.0), Error);
}

TEST_CASE("single haar gate has rank 7 with a wide gap") {
  for (int s = 0; s < 10; ++s) {
    const auto m = perturbed_outputs(single_gate(sample_haar_su4(StreamKey(30, {std::uint64_t(s)}))), PauliFamily::Full15);
    const auto rep = numerical_rank(m);
    CHECK(rep.rank == 7);
    CHECK(rep.gap >= 1e6);
    CHECK_FALSE(rep.gap_warning);
  }
  CHECK(estimate_accessible_dimension(MeasurementConfiguration(2, 2), 3, StreamKey(31)).rank == 7);
}

TEST_CASE("rank invariant under a global phase and monotone in columns") {
  const auto lay = BrickwallLayout::build(4, 4);
  CircuitInstance inst{lay, sample_haar_gates(lay, StreamKey(32)), MeasurementConfiguration(4, 4), 0.0};
  const auto m = perturbed_outputs(inst, PauliFamily::Full15);
  const int r = numerical_rank(m).rank;
  const double th = 0.7;
  const auto dim = m.rows() / 2;
  Eigen::MatrixXd rot(m.rows(), m.cols());
  rot.topRows(dim) = std::cos(th) * m.topRows(dim) - std::sin(th) * m.bottomRows(dim);
  rot.bottomRows(dim) = std::sin(th) * m.topRows(dim) + std::cos(th) * m.bottomRows(dim);
  CHECK(numerical_rank(rot).rank == r);
  CHECK(numerical_rank(m.leftCols(10)).rank <= r);
  CHECK(r <= 2 * 16 - 1);
  CHECK(r == 2 * 16 - 1);  // saturates at this depth
}

TEST_CASE("fully measured configuration gives a single ray") {
  MeasurementConfiguration all(4, 4);
  for (int l = 0; l < 4; ++l)
    for (int q = 0; q < 4; ++q) all.set(q, l, MeasurementStatus::measured_with(0));
  // Every column is a complex multiple of |0000>: real span of dimension <= 2.
  const auto rep = estimate_accessible_dimension(all, 2, StreamKey(33));
  CHECK(rep.rank <= 2);
}

TEST_CASE("estimate is monotone in the sample count") {
  const auto cfg = sample_measurement_configuration(4, 4, 0.3, OutcomeMode::StructuralZero, StreamKey(34));
  const int one = estimate_accessible_dimension(cfg, 1, StreamKey(35)).rank;
  const int two = estimate_accessible_dimension(cfg, 2, StreamKey(35)).rank;
  CHECK(two >= one);
  const auto json = estimate_accessible_dimension(cfg, 1, StreamKey(35)).to_json();
  CHECK(json.find("\"family\":\"Full15\"") != std::string::npos);
}

TEST_CASE("complexity bound formulas") {
  CHECK(cm_lower_bound(8, 2).over13 == 0.0);
  CHECK(cm_lower_bound(8, 2).over11 == 0.0);
  CHECK(cm_lower_bound(28, 2).over13 == doctest::Approx(20.0 / 13));
  CHECK(cm_lower_bound(28, 2).over11 == doctest::Approx(20.0 / 11));
  CHECK(cm_lower_bound(0, 2).over13 == 0.0);
  CHECK(short_circuit_dim_bound(1, 0, 2).tight == 15);
  CHECK(short_circuit_dim_bound(1, 0, 2).relaxed == 17);
  CHECK(short_circuit_dim_bound(2, 4, 4).tight == 34);
  CHECK(short_circuit_dim_bound(2, 4, 4).relaxed == 34);
  CHECK(short_circuit_dim_bound(0, 0, 2).tight == 6);
  CHECK_THROWS_AS(short_circuit_dim_bound(1, 3, 2), Error);
}

TEST_CASE("projector monotonicity") {
  MeasurementConfiguration nearly(4, 4);
  for (int l = 0; l < 4; ++l)
    for (int q = 0; q < 4; ++q)
      if (l != 3 || q != 2) nearly.set(q, l, MeasurementStatus::measured_with(0));
  CHECK(projector_monotonicity_test(nearly, 2, 3, 1, StreamKey(36)).pass);
  for (int i = 0; i < 20; ++i) {
    const StreamKey key(37, {std::uint64_t(i)});
    const auto cfg = sample_measurement_configuration(4, 4, 0.3, OutcomeMode::StructuralZero, key);
    Rng rng(key.child(1));
    int q, l;
    do {
      q = static_cast<int>(rng.below(4));
      l = static_cast<int>(rng.below(4));
    } while (cfg.measured(q, l) && cfg.measured_count() < 16);
    if (cfg.measured(q, l)) continue;
    CHECK(projector_monotonicity_test(cfg, q, l, 2, key.child(2)).pass);
  }
}

TEST_CASE("pauli algebra and clifford tables") {
  // CNOT conjugation of X on the control gives X X.
  PauliString p = PauliString::single(2, 0, 'X');
  CliffordTable(gates::cnot()).conjugate(p, 0);
  CHECK(p.x == 3u);
  CHECK(p.z == 0u);
  CHECK(p.kappa == 0);
  // H conjugating Z gives X.
  PauliString z = PauliString::single(2, 0, 'Z');
  CliffordTable(gates::kron(gates::hadamard(), Matrix2::Identity())).conjugate(z, 0);
  CHECK(z.x == 1u);
  CHECK(z.z == 0u);
  CHECK(single_qubit_cliffords().size() == 24u);
  CHECK_THROWS_AS(CliffordTable(sample_haar_su4(StreamKey(1))), Error);
  const auto y = PauliString::single(1, 0, 'Y');
  CHECK((y * y) == PauliString::identity(1));
}

TEST_CASE("pauli propagation agrees with the dense engine") {
  const auto c = build_lower_bound_clifford(4, 5, StreamKey(40));
  const auto& lay = c.layout;
  Rng rng(StreamKey(41));
  for (int trial = 0; trial < 30; ++trial) {
    PauliString p{4, rng.below(16), rng.below(16), static_cast<int>(rng.below(4))};
    const int last = static_cast<int>(rng.below(lay.gate_count()));
    const auto img = pauli_propagate(lay, c.gates, p, last);
    const auto dense = dense_image(lay, c.gates, last, p);
    const Complex ph[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (std::size_t i = 0; i < dense.size(); ++i) {
      const Complex expect = i == img.x ? ph[img.kappa & 3] : Complex(0, 0);
      CHECK(std::abs(dense[i] - expect) < 1e-12);
    }
  }
}

TEST_CASE("lower bound clifford construction") {
  const auto one = build_lower_bound_clifford(4, 1);
  REQUIRE(one.images.size() == 1u);
  CHECK(one.images[0].x == 0u);
  const auto five = build_lower_bound_clifford(4, 5);
  CHECK(five.images.size() == 5u);
  CHECK(pauli_image_rank(five.images) == 5);
  CHECK_THROWS_AS(build_lower_bound_clifford(4, 32), Error);
  CHECK(build_lower_bound_clifford(2, 7).images.size() == 7u);
}

TEST_CASE("d0 growth") {
  for (int n : {2, 4}) {
    for (int t : {6, 12, 24, 48}) {
      const auto r = verify_d0_growth(n, t);
      CAPTURE(n);
      CAPTURE(t);
      CHECK(r.pass);
      CHECK(r.rank_svd >= std::min(r.bound, r.cap));
    }
  }
  CHECK(verify_d0_growth(4, 12).bound == 2);
  CHECK(verify_d0_growth(2, 6).bound == 2);
}
