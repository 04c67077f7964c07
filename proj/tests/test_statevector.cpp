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

#include "mcl/circuit.hpp"
#include "mcl/error.hpp"
#include "mcl/statevector.hpp"

using namespace mcl;

namespace {
StateVector basis(int n, std::size_t index) {
  std::vector<Complex> a(std::size_t{1} << n, 0.0);
  a[index] = 1.0;
  return StateVector::from_amplitudes(n, a);
}
}  // namespace

TEST_CASE("two-qubit gate truth tables") {
  auto s = basis(2, 0b10);  // qubit 1 set
  apply_two_qubit_gate(s, gates::identity(), 0, 1);
  CHECK(std::abs(s.amplitudes[0b10] - 1.0) < 1e-15);
  apply_two_qubit_gate(s, gates::swap(), 0, 1);
  CHECK(std::abs(s.amplitudes[0b01] - 1.0) < 1e-15);
  // qubit 0 set; CNOT with control 0 flips qubit 1
  apply_two_qubit_gate(s, gates::cnot(), 0, 1);
  CHECK(std::abs(s.amplitudes[0b11] - 1.0) < 1e-15);
  CHECK_THROWS_AS(apply_two_qubit_gate(s, gates::cnot(), 0, 2), Error);
  CHECK_THROWS_AS(apply_two_qubit_gate(s, gates::cnot(), 1, 1), Error);
}

TEST_CASE("gate application preserves norm") {
  auto s = StateVector::zero_state(5);
  const auto lay = BrickwallLayout::build(6, 4);
  const auto g = sample_haar_gates(lay, StreamKey(4));
  for (int i = 0; i < 20; ++i) apply_two_qubit_gate(s, g[i % g.size()], i % 5, (i + 2) % 5);
  CHECK(std::abs(s.amplitude_norm_squared() - 1.0) < 1e-12);
}

TEST_CASE("measurement kraus examples") {
  const double r = 1 / std::sqrt(2.0);
  auto plus = StateVector::from_amplitudes(1, {r, r});
  apply_measurement_kraus(plus, 0, 0, 0.5);
  CHECK(std::abs(plus.amplitudes[0] - 0.5) < 1e-15);
  CHECK(std::abs(plus.amplitudes[1]) == 0.0);

  auto zero = StateVector::zero_state(1);
  apply_measurement_kraus(zero, 0, 1, 0.7);
  CHECK(zero.amplitude_norm_squared() == 0.0);

  auto bell = StateVector::from_amplitudes(2, {1.0, 0.0, 0.0, 1.0});
  apply_measurement_kraus(bell, 0, 0, 1.0);
  CHECK(bell.amplitudes[0] == Complex(1.0));
  CHECK(bell.amplitude_norm_squared() == 1.0);
}

TEST_CASE("run identity circuit without measurements") {
  const auto lay = BrickwallLayout::build(4, 4);
  CircuitInstance inst{lay, std::vector<GateMatrix>(lay.gate_count(), gates::identity()),
                       MeasurementConfiguration(4, 4), 0.0};
  const auto res = run(inst);
  CHECK(res.weight() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(res.state.amplitudes[0] - 1.0) < 1e-15);
}

TEST_CASE("run n=2 t=2 single measured zero has weight p(1-p)^3") {
  const auto lay = BrickwallLayout::build(2, 2);
  MeasurementConfiguration cfg(2, 2);
  cfg.set(0, 0, MeasurementStatus::measured_with(0));
  for (double p : {0.1, 0.37, 0.8}) {
    CircuitInstance inst{lay, {gates::identity()}, cfg, p};
    const auto res = run(inst);
    CHECK(res.weight() == doctest::Approx(p * std::pow(1 - p, 3)).epsilon(1e-12));
    CHECK(fidelity(res.state, StateVector::zero_state(2)) == doctest::Approx(1.0));
  }
}

TEST_CASE("channel completeness by exhaustive enumeration") {
  for (int t : {2, 4}) {
    const auto lay = BrickwallLayout::build(2, t);
    const auto g = sample_haar_gates(lay, StreamKey(21, {static_cast<std::uint64_t>(t)}));
    const int sites = 2 * t;
    int combos = 1;
    for (int i = 0; i < sites; ++i) combos *= 3;
    const double p = 0.31;
    double total = 0.0;
    for (int c = 0; c < combos; ++c) {
      MeasurementConfiguration cfg(2, t);
      int code = c;
      for (int s = 0; s < sites; ++s, code /= 3) {
        if (code % 3) cfg.set(s % 2, s / 2, MeasurementStatus::measured_with(code % 3 - 1));
      }
      total += run(lay, g, cfg, p).weight();
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
  }
}

TEST_CASE("run is invariant under reordering commuting gates") {
  const auto lay = BrickwallLayout::build(6, 2);
  const auto g = sample_haar_gates(lay, StreamKey(9));
  auto a = StateVector::zero_state(6);
  auto b = StateVector::zero_state(6);
  for (int i : {0, 1, 2, 3, 4}) apply_two_qubit_gate(a, g[i], lay.placement(i).qubit, lay.placement(i).qubit + 1);
  for (int i : {2, 0, 1, 4, 3}) apply_two_qubit_gate(b, g[i], lay.placement(i).qubit, lay.placement(i).qubit + 1);
  CHECK(fidelity(a, b) > 1 - 1e-13);
}

TEST_CASE("normalized output and zero weight") {
  const auto lay = BrickwallLayout::build(2, 2);
  MeasurementConfiguration cfg(2, 2);
  cfg.set(1, 1, MeasurementStatus::measured_with(1));
  CircuitInstance bad{lay, {gates::identity()}, cfg, 0.5};
  CHECK_THROWS_AS(normalized_output(bad), Error);
  try {
    normalized_output(bad);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroWeight);
  }
  CircuitInstance good{lay, sample_haar_gates(lay, StreamKey(2)), cfg, 0.5};
  CHECK(normalized_output(good).amplitude_norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("large depth keeps amplitudes finite") {
  const auto lay = BrickwallLayout::build(4, 400);
  CircuitInstance inst{lay, sample_haar_gates(lay, StreamKey(3)), MeasurementConfiguration(4, 400), 0.5};
  const auto res = run(inst);
  CHECK(res.state.amplitude_norm_squared() == doctest::Approx(1.0));
  CHECK(res.log_weight == doctest::Approx(1600 * std::log(0.5)));
}

TEST_CASE("trajectory sampling") {
  const auto lay = BrickwallLayout::build(4, 4);
  const auto g = sample_haar_gates(lay, StreamKey(5));
  CHECK(sample_trajectory(4, 4, 0.0, g, StreamKey(1)).config.measured_count() == 0);
  const std::vector<GateMatrix> ids(lay.gate_count(), gates::identity());
  const auto all = sample_trajectory(4, 4, 1.0, ids, StreamKey(1));
  CHECK(all.config.measured_count() == 16);
  CHECK(all.config.all_outcomes_zero());

  // One Haar gate, qubit 0 measured with p=1: outcome-0 frequency matches the
  // marginal of the gate's first column.
  const auto lay2 = BrickwallLayout::build(2, 2);
  const std::vector<GateMatrix> one{sample_haar_su4(StreamKey(77))};
  const double p0 = std::norm(one[0](0, 0)) + std::norm(one[0](1, 0));
  const int trials = 10000;
  int zeros = 0;
  for (int i = 0; i < trials; ++i) {
    const auto tr = sample_trajectory(2, 2, 1.0, one, StreamKey(78, {static_cast<std::uint64_t>(i)}));
    zeros += tr.config.at(0, 0).outcome == 0 ? 1 : 0;
  }
  const double sigma = std::sqrt(p0 * (1 - p0) / trials);
  CHECK(std::abs(zeros / double(trials) - p0) < 3 * sigma + 1e-12);
}

TEST_CASE("schmidt rank examples") {
  CHECK(schmidt_rank(StateVector::zero_state(4), 2) == 1);
  const double r = 1 / std::sqrt(2.0);
  auto bell = StateVector::from_amplitudes(2, {r, 0, 0, r});
  CHECK(schmidt_rank(bell, 1) == 2);
  std::vector<Complex> ghz(16, 0.0);
  ghz[0] = r;
  ghz[15] = r;
  CHECK(schmidt_rank(StateVector::from_amplitudes(4, ghz), 2) == 2);
}

TEST_CASE("engine cap and dumps") {
  CHECK_THROWS_AS(StateVector::zero_state(max_qubits() + 1), Error);
  const auto csv = StateVector::zero_state(2).to_csv();
  CHECK(csv.find("little-endian") != std::string::npos);
  CHECK(StateVector::zero_state(1).to_json().find("endianness") != std::string::npos);
}
