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


#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcl/rng.hpp"

namespace mcl {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
// Two-qubit gate on the ordered pair (a, b). Basis index is 2*bit(a) + bit(b),
// so kron(A, B) applies A to qubit a and B to qubit b.
using GateMatrix = Eigen::Matrix4cd;

// Qubits and layers are 0-based throughout the C++ API. Layer l (0-based)
// corresponds to the 1-based time step tau = l + 1; even l gates pairs
// (0,1),(2,3),... and odd l gates (1,2),(3,4),...
struct Placement {
  int layer = 0;
  int qubit = 0;  // first qubit of the pair (qubit, qubit + 1)
};

class BrickwallLayout {
 public:
  static BrickwallLayout build(int n, int t);

  int n() const noexcept { return n_; }
  int t() const noexcept { return t_; }
  int gate_count() const noexcept { return static_cast<int>(placements_.size()); }
  const std::vector<Placement>& placements() const noexcept { return placements_; }
  const Placement& placement(int index) const { return placements_.at(index); }

  // Placement indices of one layer, ordered by qubit.
  std::vector<int> layer_gates(int layer) const;
  // Placement index of the gate touching `qubit` in `layer`, if any.
  std::optional<int> gate_at(int layer, int qubit) const;

 private:
  int n_ = 0;
  int t_ = 0;
  std::vector<Placement> placements_;
  std::vector<int> layer_offset_;
};

struct MeasurementStatus {
  bool measured = false;
  std::uint8_t outcome = 0;

  static MeasurementStatus unmeasured() { return {}; }
  static MeasurementStatus measured_with(int outcome) {
    return {true, static_cast<std::uint8_t>(outcome & 1)};
  }
  friend bool operator==(const MeasurementStatus&, const MeasurementStatus&) = default;
};

// Status grid over (qubit, layer). Site (q, l) is the measurement slot right
// after gate layer l on qubit q.
class MeasurementConfiguration {
 public:
  MeasurementConfiguration() = default;
  MeasurementConfiguration(int n, int t);

  int n() const noexcept { return n_; }
  int t() const noexcept { return t_; }
  std::size_t site_count() const noexcept { return sites_.size(); }

  const MeasurementStatus& at(int qubit, int layer) const;
  void set(int qubit, int layer, MeasurementStatus status);
  bool measured(int qubit, int layer) const { return at(qubit, layer).measured; }

  int measured_count() const;
  bool all_outcomes_zero() const;
  // Same sites measured, every outcome forced to 0.
  MeasurementConfiguration with_zero_outcomes() const;

  std::string to_json() const;
  static MeasurementConfiguration from_json(const std::string& text);

  friend bool operator==(const MeasurementConfiguration&, const MeasurementConfiguration&) = default;

 private:
  int n_ = 0;
  int t_ = 0;
  std::vector<MeasurementStatus> sites_;  // index layer * n + qubit
};

enum class OutcomeMode { StructuralZero, OutcomeDeferred };

MeasurementConfiguration sample_measurement_configuration(int n, int t, double p, OutcomeMode mode,
                                                          const StreamKey& stream);

struct CircuitInstance {
  BrickwallLayout layout;
  std::vector<GateMatrix> gates;  // one per placement
  MeasurementConfiguration config;
  double p = 0.0;

  // Throws InvalidInput when gate count or dimensions disagree.
  void validate() const;
};

GateMatrix sample_haar_su4(const StreamKey& stream);
std::vector<GateMatrix> sample_haar_gates(const BrickwallLayout& layout, const StreamKey& stream);
Matrix2 sample_haar_u2(Rng& rng);

double unitarity_residual(const GateMatrix& u);

struct NormalizedInstance {
  CircuitInstance instance;
  // Bit q set: the original output equals X_q applied to the new output.
  std::uint64_t output_flips = 0;
};

// Rewrites every outcome-1 site as X P0 X and absorbs the X factors into the
// neighbouring gates on that qubit. The operator V^M is unchanged apart from
// the recorded output flips.
NormalizedInstance normalize_outcomes_to_zero(const CircuitInstance& instance);

namespace gates {
Matrix2 pauli(char which);  // 'I', 'X', 'Y', 'Z'
Matrix2 hadamard();
Matrix2 phase_s();
GateMatrix kron(const Matrix2& a, const Matrix2& b);
GateMatrix identity();
GateMatrix swap();
GateMatrix cnot();           // control a, target b
GateMatrix cnot_reversed();  // control b, target a
}  // namespace gates

}  // namespace mcl
