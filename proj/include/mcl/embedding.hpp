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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcl/circuit.hpp"
#include "mcl/lattice.hpp"
#include "mcl/statevector.hpp"

namespace mcl {

// Logical gate (u1 x v1) W (u2 x v2), W in {I, CNOT}, on wires (wire, wire+1).
struct LogicalGate {
  int layer = 0;
  int wire = 0;
  Matrix2 u1 = Matrix2::Identity(), v1 = Matrix2::Identity();
  Matrix2 u2 = Matrix2::Identity(), v2 = Matrix2::Identity();
  bool cnot = false;  // W = CNOT with control on `wire`
};

struct LogicalSingle {
  int layer = 0;  // applied before the layer's two-qubit gates
  int wire = 0;
  Matrix2 u = Matrix2::Identity();
};

// Brick-wall logical circuit on k wires and m layers: layer s holds the
// slots (w, w+1) with w = s mod 2, 2, ... . Every slot has a gate.
struct LogicalCircuit {
  int k = 0;
  int m = 0;
  std::vector<LogicalGate> gates;  // ordered by (layer, wire)
  std::vector<LogicalSingle> singles;

  static LogicalCircuit identity(int k, int m);
  // Random gates of that form with single-qubit Clifford factors.
  static LogicalCircuit random_clifford(int k, int m, const StreamKey& stream);
  StateVector simulate() const;  // on |0^k>
};

enum class VertexUseKind : std::uint8_t { Forward, Backward, Cap, Cup };
const char* to_string(VertexUseKind kind);

// A leg traversed by a carrier, with its direction relative to time.
struct PathStep {
  int edge = 0;
  int qubit = 0;
  int layer = -1;  // -1 for the initial leg
  bool causal = true;
};

struct VertexUse {
  int vertex = 0;
  int in_edge = 0;   // edge the carrier arrives on
  int out_edge = 0;  // edge it leaves on
  VertexUseKind kind = VertexUseKind::Forward;
};

// Open route through the tilted lattice. For paths it runs from a left to a
// right terminal; for bridges from a control endpoint to a target endpoint
// (the endpoints themselves belong to paths and are not listed in `uses`).
struct Carrier {
  std::vector<int> vertices;
  std::vector<PathStep> steps;
  std::vector<VertexUse> uses;  // interior vertices only
};

struct MeasurementFreePath {
  Carrier route;
  int logical = 0;
  int output_qubit = 0;
  // Positions in route.uses of forward passes through gate vertices.
  std::vector<int> forward_gates;
};

struct Bridge {
  int slot = 0;        // index into the logical slot list (layer-major)
  int upper = 0;       // path index (control side)
  int lower = 0;       // path index (target side)
  int control_use = 0;  // position in paths[upper].route.uses
  int target_use = 0;
  bool control_backward = false;  // bridge enters the control vertex on its free input
  bool target_backward = false;   // bridge leaves the target vertex on its free output
  Carrier route;
};

struct EmbeddingPlan {
  MeasurementConfiguration base;
  int k = 0;
  int m = 0;
  std::vector<MeasurementFreePath> paths;
  std::vector<Bridge> bridges;
  std::vector<int> slot_bridge;  // per logical slot: bridge index or -1
  std::vector<std::pair<int, int>> added_sites;  // (qubit, layer)
  // Per path: position in forward_gates usable for trailing single-qubit gates.
  std::vector<int> flush_positions;

  MeasurementConfiguration augmented() const;
  std::vector<int> output_qubits() const;
  std::string to_json(const std::vector<GateMatrix>* gates = nullptr) const;
};

// Bridges for every slot of a depth-m brick-wall on k wires.
EmbeddingPlan plan_embedding(const MeasurementConfiguration& config, int k, int m);
// Bridges only for the CNOT slots of `logical`.
EmbeddingPlan plan_embedding(const MeasurementConfiguration& config, const LogicalCircuit& logical);

std::vector<GateMatrix> assign_gates(const EmbeddingPlan& plan, const LogicalCircuit& logical);

struct EmbeddingCheck {
  double fidelity = 0.0;
  double weight = 0.0;
  double log_weight = 0.0;
};
EmbeddingCheck verify_embedding(const EmbeddingPlan& plan, const std::vector<GateMatrix>& gates,
                                const LogicalCircuit& logical, double p = 0.5);

// Reference output: the logical state on the paths' output qubits, |0> on the rest.
StateVector embedding_reference(const EmbeddingPlan& plan, const LogicalCircuit& logical);

struct EmbeddedBound {
  int rank = 0;
  int formula = 0;  // floor(2m / 3k)
  int perturbations = 0;
};
EmbeddedBound embedded_dimension_bound(const MeasurementConfiguration& config, int k, int m,
                                       const StreamKey& stream);

}  // namespace mcl
