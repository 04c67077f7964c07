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
#include <functional>
#include <string>
#include <vector>

#include "mcl/circuit.hpp"
#include "mcl/lattice.hpp"
#include "mcl/rng.hpp"

namespace mcl {

bool left_right_crossing(const BondLattice& lattice);

struct CrossingReport {
  bool exists = false;
  int count = 0;
  // Each path is a list of edge ids from the left boundary to the right one.
  std::vector<std::vector<int>> paths;
};

// Max number of edge-disjoint open left-right paths (unit-capacity max-flow),
// with explicit paths from the flow decomposition.
CrossingReport max_edge_disjoint_crossings(const BondLattice& lattice, bool want_paths = true);

struct CutReport {
  bool exists = false;
  std::vector<int> cut_edges;  // primal edge ids crossed by the dual path
};

// Top-to-bottom path of open dual edges. `allowed` restricts which primal
// edges the dual path may cross.
CutReport dual_top_bottom_cut(const BondLattice& lattice,
                              const std::function<bool(int edge)>& allowed = {});

struct Cluster {
  std::vector<int> edges;       // open site edges, final legs excluded
  std::vector<int> final_legs;  // qubits whose final leg joins this cluster
  std::vector<int> gates;       // placement indices inside
  int size() const { return static_cast<int>(edges.size()); }
};

struct ClusterReport {
  std::vector<Cluster> clusters;
  int m() const { return static_cast<int>(clusters.size()); }
  int max_size() const;
};

ClusterReport final_time_clusters(const MeasurementConfiguration& config);
int effective_gate_count(const MeasurementConfiguration& config);

// Gate placements that can influence the conditioned output: those in
// final-time clusters.
std::vector<bool> effective_gate_mask(const MeasurementConfiguration& config);

// k edge-disjoint open left-right paths ordered by starting leg (qubit).
// Throws InsufficientPaths when fewer exist.
std::vector<std::vector<int>> measurement_free_paths(const MeasurementConfiguration& config, int k);

// Gates that sit on the initial-time side of a dual top-bottom cut that only
// crosses sites in layers >= min_layer.
struct UncomplexWitness {
  bool found = false;
  std::vector<int> cut_edges;
  std::vector<bool> pre_cut_gates;
};
UncomplexWitness uncomplex_witness(const MeasurementConfiguration& config, int min_layer);

struct Estimate {
  double value = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  int trials = 0;
  int hits = 0;
  double stderr_binomial() const;
};

Estimate wilson_estimate(int hits, int trials, double z = 1.96);

// Runs `event` on trials independent child streams of `stream` and returns a
// Wilson 95% interval.
Estimate mc_estimate(const std::function<bool(const StreamKey&)>& event, int trials,
                     const StreamKey& stream);

enum class LatticeFamily { Square, Tilted };

// Left-right crossing of an L x L window. Tilted uses the circuit lattice with
// n = t = L and site-open probability q.
bool sample_crossing(LatticeFamily family, int L, double q, const StreamKey& stream);

// Number of vertices of the origin cluster of Z^2 bond percolation, explored
// lazily and capped: returns cap once the cluster reaches cap vertices.
int origin_cluster_size(double q, int cap, const StreamKey& stream);

}  // namespace mcl
