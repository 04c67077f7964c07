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

#include <cstdint>
#include <string>
#include <vector>

#include "mcl/circuit.hpp"
#include "mcl/pauli.hpp"

namespace mcl {

enum class PauliFamily { Full15, SingleQubit6 };
const char* to_string(PauliFamily family);

struct PerturbationIndex {
  int gate = 0;
  char alpha = 'I';  // on the first qubit of the pair
  char beta = 'I';
};

std::vector<PerturbationIndex> perturbation_indices(int gate_count, PauliFamily family);

// One column per perturbation: the engine output with (alpha x beta) applied
// right after gate j, stacked as [Re; Im]. The common Kraus scalar is dropped.
Eigen::MatrixXd perturbed_outputs(const CircuitInstance& instance, PauliFamily family);
Eigen::MatrixXd perturbed_outputs(const CircuitInstance& instance, const std::vector<PerturbationIndex>& indices);

struct RankReport {
  std::vector<double> singular_values;  // descending
  double tol = 1e-9;
  int rank = 0;
  // Ratio sigma_rank / sigma_{rank+1}; infinity when there is no next value.
  double gap = 0.0;
  bool gap_warning = false;  // gap < 1e3
  std::uint64_t seed = 0;
  int n = 0, t = 0, gates = 0;
  PauliFamily family = PauliFamily::Full15;

  std::string to_json(int max_values = 64) const;
};

RankReport numerical_rank(const Eigen::MatrixXd& matrix, double tol = 1e-9);

// Max rank over `samples` Haar gate tuples: a lower bound on d_M.
RankReport estimate_accessible_dimension(const MeasurementConfiguration& config, int samples,
                                         const StreamKey& stream, PauliFamily family = PauliFamily::Full15,
                                         double tol = 1e-9);

struct CmBound {
  double over13 = 0.0;  // (d - 3n - 2) / 13
  double over11 = 0.0;  // (d - 3n - 2) / 11, the tighter count
};
CmBound cm_lower_bound(double d, int n);

struct ShortCircuitBound {
  int tight = 0;    // 9R' + m + 3n
  int relaxed = 0;  // 11R' + 3n
};
ShortCircuitBound short_circuit_dim_bound(int r_prime, int m, int n);

struct MonotonicityResult {
  int d_before = 0;
  int d_after = 0;
  bool pass = false;
};
// Adds Measured(0) at (qubit, layer) and compares rank estimates computed on
// the same gate samples.
MonotonicityResult projector_monotonicity_test(const MeasurementConfiguration& config, int qubit, int layer,
                                               int samples, const StreamKey& stream);

// Brick-wall circuit of Clifford gates, grouped into blocks of 3n/2 layers.
// Block b's probe gate is its last gate on the pair (0, 1); inserting Z on
// qubit 0 there and pulling it back to the input gives image b.
struct CliffordCircuit {
  BrickwallLayout layout;
  std::vector<GateMatrix> gates;
  int block_layers = 0;
  int blocks = 0;
  std::vector<int> probe_gates;
  std::vector<PauliString> images;
};

CliffordCircuit build_lower_bound_clifford(int n, int blocks, const StreamKey& stream = StreamKey(2024));
// Same construction inside a fixed depth t; block count min(floor(2t/3n), 2^{n+1} - 1).
CliffordCircuit build_lower_bound_clifford_depth(int n, int t, const StreamKey& stream = StreamKey(2024));

// U_1^dagger ... U_j^dagger P U_j ... U_1 over gates 0..last_gate.
PauliString pauli_propagate(const BrickwallLayout& layout, const std::vector<GateMatrix>& gates,
                            PauliString p, int last_gate);

struct D0Growth {
  int rank_svd = 0;
  int rank_pauli = 0;
  int bound = 0;  // floor(2t / 3n)
  int cap = 0;    // 2 * 2^n - 1
  bool pass = false;
};
D0Growth verify_d0_growth(int n, int t, const StreamKey& stream = StreamKey(2024));

}  // namespace mcl
