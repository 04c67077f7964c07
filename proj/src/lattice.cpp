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


#include "mcl/lattice.hpp"

#include <sstream>

#include "mcl/error.hpp"

namespace mcl {

int BondLattice::open_edge_count() const {
  int c = 0;
  for (const auto& e : edges) c += e.open ? 1 : 0;
  return c;
}

std::string BondLattice::edges_csv() const {
  std::ostringstream os;
  os << "id,u,v,open\n";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    os << i << ',' << edges[i].u << ',' << edges[i].v << ',' << (edges[i].open ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string BondLattice::boundary_csv() const {
  std::ostringstream os;
  os << "side,vertex\n";
  auto dump = [&](const char* side, const std::vector<int>& vs) {
    for (int v : vs) os << side << ',' << v << '\n';
  };
  dump("left", left);
  dump("right", right);
  dump("top", top);
  dump("bottom", bottom);
  return os.str();
}

BondLattice circuit_to_bond_lattice(const MeasurementConfiguration& config) {
  const int n = config.n();
  const int t = config.t();
  const BrickwallLayout layout = BrickwallLayout::build(n, t);
  BondLattice lat;
  lat.kind = LatticeKind::CircuitTilted;
  lat.n = n;
  lat.t = t;

  const int gates = layout.gate_count();
  lat.gate_vertex.resize(gates);
  for (int g = 0; g < gates; ++g) {
    lat.gate_vertex[g] = g;
    lat.vertex_roles.push_back(VertexRole::Gate);
    lat.vertex_gate.push_back(g);
  }
  // node[l * n + q]: the vertex wire q sits on during layer l.
  std::vector<int> node(static_cast<std::size_t>(n) * t, -1);
  for (int l = 0; l < t; ++l) {
    for (int q = 0; q < n; ++q) {
      if (auto g = layout.gate_at(l, q)) {
        node[l * n + q] = *g;
      } else {
        node[l * n + q] = static_cast<int>(lat.vertex_roles.size());
        lat.vertex_roles.push_back(VertexRole::Passthrough);
        lat.vertex_gate.push_back(-1);
      }
    }
  }
  const int left0 = static_cast<int>(lat.vertex_roles.size());
  for (int q = 0; q < n; ++q) {
    lat.vertex_roles.push_back(VertexRole::LeftTerminal);
    lat.vertex_gate.push_back(-1);
    lat.left.push_back(left0 + q);
  }
  const int right0 = left0 + n;
  for (int q = 0; q < n; ++q) {
    lat.vertex_roles.push_back(VertexRole::RightTerminal);
    lat.vertex_gate.push_back(-1);
    lat.right.push_back(right0 + q);
  }
  lat.vertex_count = static_cast<int>(lat.vertex_roles.size());

  lat.site_edge.assign(static_cast<std::size_t>(n) * t, -1);
  for (int l = 0; l < t; ++l) {
    for (int q = 0; q < n; ++q) {
      Edge e;
      e.u = node[l * n + q];
      e.v = l + 1 < t ? node[(l + 1) * n + q] : right0 + q;
      e.open = !config.measured(q, l);
      e.role = l + 1 < t ? EdgeRole::Site : EdgeRole::FinalLeg;
      e.qubit = q;
      e.layer = l;
      lat.site_edge[l * n + q] = static_cast<int>(lat.edges.size());
      lat.edges.push_back(e);
    }
  }
  for (int q = 0; q < n; ++q) {
    Edge e;
    e.u = left0 + q;
    e.v = node[q];
    e.open = true;
    e.role = EdgeRole::InitialLeg;
    e.qubit = q;
    lat.edges.push_back(e);
  }
  for (int l = 0; l < t; ++l) {
    for (int q : {0, n - 1}) {
      auto& side = q == 0 ? lat.top : lat.bottom;
      const int v = node[l * n + q];
      if (side.empty() || side.back() != v) side.push_back(v);
    }
  }
  return lat;
}

namespace {

BondLattice rectangular_shell(int a, int b) {
  if (a < 1 || b < 1) throw Error(ErrorKind::InvalidInput, "rectangle needs a, b >= 1");
  BondLattice lat;
  lat.kind = LatticeKind::RectangularZ2;
  lat.a = a;
  lat.b = b;
  lat.vertex_count = (a + 1) * (b + 1);
  lat.vertex_roles.assign(lat.vertex_count, VertexRole::Grid);
  lat.vertex_gate.assign(lat.vertex_count, -1);
  auto id = [b](int x, int y) { return y * (b + 1) + x; };
  for (int y = 0; y <= a; ++y) {
    for (int x = 0; x <= b; ++x) {
      if (x < b) lat.edges.push_back(Edge{id(x, y), id(x + 1, y), false, EdgeRole::Bulk, -1, -1});
      if (y < a) lat.edges.push_back(Edge{id(x, y), id(x, y + 1), false, EdgeRole::Bulk, -1, -1});
    }
  }
  for (int y = 0; y <= a; ++y) {
    lat.left.push_back(id(0, y));
    lat.right.push_back(id(b, y));
  }
  for (int x = 0; x <= b; ++x) {
    lat.bottom.push_back(id(x, 0));
    lat.top.push_back(id(x, a));
  }
  return lat;
}

}  // namespace

BondLattice rectangular_lattice(int a, int b, double q, const StreamKey& stream) {
  BondLattice lat = rectangular_shell(a, b);
  Rng rng(stream);
  for (auto& e : lat.edges) e.open = rng.bernoulli(q);
  return lat;
}

BondLattice rectangular_lattice_uniform(int a, int b, bool open) {
  BondLattice lat = rectangular_shell(a, b);
  for (auto& e : lat.edges) e.open = open;
  return lat;
}

DualLattice build_dual(const BondLattice& lat) {
  DualLattice d;
  if (lat.kind == LatticeKind::RectangularZ2) {
    const int a = lat.a;
    const int b = lat.b;
    d.face_count = a * b + 2;
    d.top = a * b;
    d.bottom = a * b + 1;
    const int w = b + 1;
    for (std::size_t i = 0; i < lat.edges.size(); ++i) {
      const auto& e = lat.edges[i];
      const int x = e.u % w;
      const int y = e.u / w;
      DualLattice::DualEdge de{0, 0, static_cast<int>(i), !e.open};
      if (e.v == e.u + 1) {  // horizontal
        de.f = y == 0 ? d.bottom : (y - 1) * b + x;
        de.g = y == a ? d.top : y * b + x;
      } else {  // vertical; boundary columns carry no dual edge
        if (x == 0 || x == b) continue;
        de.f = y * b + x - 1;
        de.g = y * b + x;
      }
      d.edges.push_back(de);
    }
    return d;
  }

  // Tilted: face (f, g) for pseudo-layer f in 0..t and gap g in 0..n-2 with
  // the gap (between qubits g and g+1) not gated at f, i.e. f + g odd.
  const int n = lat.n;
  const int t = lat.t;
  std::vector<int> face_id(static_cast<std::size_t>(t + 1) * (n - 1), -1);
  int next = 0;
  for (int f = 0; f <= t; ++f) {
    for (int g = 0; g + 1 < n; ++g) {
      if ((f + g) % 2 == 1) face_id[f * (n - 1) + g] = next++;
    }
  }
  d.top = next++;
  d.bottom = next++;
  d.face_count = next;
  auto face = [&](int gap, int l) {
    if (gap < 0) return d.top;
    if (gap > n - 2) return d.bottom;
    const int f = (l + gap) % 2 == 1 ? l : l + 1;
    return face_id[f * (n - 1) + gap];
  };
  for (std::size_t i = 0; i < lat.edges.size(); ++i) {
    const auto& e = lat.edges[i];
    if (e.role == EdgeRole::InitialLeg) continue;
    d.edges.push_back({face(e.qubit - 1, e.layer), face(e.qubit, e.layer), static_cast<int>(i), !e.open});
  }
  return d;
}

}  // namespace mcl
