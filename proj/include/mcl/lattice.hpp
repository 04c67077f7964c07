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
#include <string>
#include <vector>

#include "mcl/circuit.hpp"
#include "mcl/rng.hpp"

namespace mcl {

enum class LatticeKind { RectangularZ2, CircuitTilted };

enum class EdgeRole : std::uint8_t {
  Bulk,        // rectangular edge
  Site,        // circuit site between two layers
  FinalLeg,    // circuit site at the last layer, ends on a right terminal
  InitialLeg,  // left terminal to first-layer gate; always open
};

struct Edge {
  int u = 0;
  int v = 0;
  bool open = false;
  EdgeRole role = EdgeRole::Bulk;
  int qubit = -1;  // circuit sites only
  int layer = -1;
};

enum class VertexRole : std::uint8_t { Grid, Gate, Passthrough, LeftTerminal, RightTerminal };

// Undirected bond lattice with open/closed edges and boundary labels.
//
// RectangularZ2(a, b): vertices (x, y) with 0 <= x <= b, 0 <= y <= a and id
// y * (b + 1) + x. Left is x = 0, right is x = b, bottom y = 0, top y = a.
//
// CircuitTilted(M): one vertex per gate placement, plus a passthrough vertex
// for boundary qubits in gate-free (odd) layers, plus a left and right
// terminal per qubit. Site (q, l) is the edge leaving node(q, l) along wire q
// towards node(q, l + 1), or towards right terminal q when l = t - 1. It is
// open iff the site is unmeasured. Initial legs tie left terminal q to the
// layer-0 gate on q and are always open. Top is the qubit-0 side.
struct BondLattice {
  LatticeKind kind = LatticeKind::RectangularZ2;
  int a = 0;  // rectangular height
  int b = 0;  // rectangular width
  int n = 0;  // circuit qubits
  int t = 0;  // circuit layers

  int vertex_count = 0;
  std::vector<VertexRole> vertex_roles;
  std::vector<int> vertex_gate;  // placement index or -1
  std::vector<Edge> edges;
  std::vector<int> left, right, top, bottom;

  // Circuit only: edge id of site (q, l) at l * n + q; vertex id of gate g.
  std::vector<int> site_edge;
  std::vector<int> gate_vertex;

  int site_edge_id(int qubit, int layer) const { return site_edge.at(layer * n + qubit); }
  int open_edge_count() const;

  // Edge list CSV (id,u,v,open) and a boundary label CSV (side,vertex).
  std::string edges_csv() const;
  std::string boundary_csv() const;
};

BondLattice circuit_to_bond_lattice(const MeasurementConfiguration& config);
BondLattice rectangular_lattice(int a, int b, double q, const StreamKey& stream);
// All edges open (true) or closed (false).
BondLattice rectangular_lattice_uniform(int a, int b, bool open);

// Faces of the planar embedding plus two outer regions: top and bottom.
// Dual edge i crosses primal edge primal[i]; it is open iff that primal edge
// is closed. Primal edges on the left/right boundary line have no dual edge.
struct DualLattice {
  int face_count = 0;
  int top = 0;
  int bottom = 0;
  struct DualEdge {
    int f = 0;
    int g = 0;
    int primal = 0;
    bool open = false;
  };
  std::vector<DualEdge> edges;
};

DualLattice build_dual(const BondLattice& lattice);

}  // namespace mcl
