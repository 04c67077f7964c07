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

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mcl/circuit.hpp"

namespace mcl {

// Dense amplitudes over n qubits, little-endian: qubit q is bit q of the
// basis index. The represented vector is exp(log_scale) * amplitudes; scalar
// Kraus factors go into log_scale so that amplitudes stay O(1).
struct StateVector {
  int n = 0;
  std::vector<Complex> amplitudes;
  double log_scale = 0.0;
  bool normalized = false;

  static StateVector zero_state(int n);  // |0^n>
  static StateVector from_amplitudes(int n, std::vector<Complex> amps);

  double amplitude_norm_squared() const;
  // Squared norm of the represented vector (includes log_scale).
  double squared_norm() const;
  // Amplitudes with log_scale folded in.
  std::vector<Complex> materialized() const;

  std::string to_csv() const;
  std::string to_json() const;
};

// Engine size cap: MCL_MAX_QUBITS if set, else 14.
int max_qubits();

void apply_two_qubit_gate(StateVector& state, const GateMatrix& u, int a, int b);
void apply_single_qubit_gate(StateVector& state, const Matrix2& u, int q);
// sqrt(p) |b><b| on qubit q, with sqrt(p) multiplied into the amplitudes.
void apply_measurement_kraus(StateVector& state, int qubit, int outcome, double p);
// |b><b| on qubit q without any scalar.
void project(StateVector& state, int qubit, int outcome);
double probability_of_zero(const StateVector& state, int qubit);

struct RunResult {
  StateVector state;  // unnormalized; see StateVector::log_scale
  double log_weight = 0.0;
  double weight() const;
};

// Applies layers in order: gates of layer 0, measurement layer 0, gates of
// layer 1, ... ending with the measurement layer after layer t-1.
RunResult run(const CircuitInstance& instance);
RunResult run(const BrickwallLayout& layout, std::span<const GateMatrix> gates,
              const MeasurementConfiguration& config, double p);

// Continues an evolution in which gates [0, first_gate) have been applied.
// The measurement layer of the layer holding gate first_gate - 1 must still
// be pending; earlier measurement layers must be done.
void evolve(StateVector& state, const BrickwallLayout& layout, std::span<const GateMatrix> gates,
            const MeasurementConfiguration& config, double p, int first_gate);

// Unit-norm conditioned output; throws ZeroWeight for impossible outcomes.
StateVector normalized_output(const CircuitInstance& instance);
StateVector normalized(const StateVector& state);

double fidelity(const StateVector& a, const StateVector& b);

struct Trajectory {
  MeasurementConfiguration config;
  StateVector state;  // normalized
  double log_weight = 0.0;
};

// Born-rule trajectory: each site is measured with probability p and its
// outcome is drawn from the current conditional state.
Trajectory sample_trajectory(int n, int t, double p, std::span<const GateMatrix> gates,
                             const StreamKey& stream);

// Number of singular values above tol * largest of the amplitude matrix that
// splits qubits [0, cut) from [cut, n).
int schmidt_rank(const StateVector& state, int cut, double tol = 1e-10);

}  // namespace mcl
