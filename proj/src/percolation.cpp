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


#include "mcl/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "mcl/error.hpp"
#include "mcl/maxflow.hpp"
#include "mcl/union_find.hpp"

namespace mcl {

namespace {

std::vector<std::vector<std::pair<int, int>>> open_adjacency(const BondLattice& lat) {
  std::vector<std::vector<std::pair<int, int>>> adj(lat.vertex_count);
  for (std::size_t i = 0; i < lat.edges.size(); ++i) {
    const auto& e = lat.edges[i];
    if (!e.open) continue;
    adj[e.u].push_back({static_cast<int>(i), e.v});
    adj[e.v].push_back({static_cast<int>(i), e.u});
  }
  return adj;
}

}  // namespace

bool left_right_crossing(const BondLattice& lat) {
  const auto adj = open_adjacency(lat);
  std::vector<char> seen(lat.vertex_count, 0);
  std::vector<char> is_right(lat.vertex_count, 0);
  for (int v : lat.right) is_right[v] = 1;
  std::queue<int> queue;
  for (int v : lat.left) {
    seen[v] = 1;
    queue.push(v);
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    if (is_right[v]) return true;
    for (auto [e, w] : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push(w);
      }
    }
  }
  return false;
}

CrossingReport max_edge_disjoint_crossings(const BondLattice& lat, bool want_paths) {
  const int nv = lat.vertex_count;
  const int source = nv;
  const int sink = nv + 1;
  const int big = static_cast<int>(lat.edges.size()) + 1;
  MaxFlow mf(nv + 2);
  std::vector<int> left_arc(lat.left.size());
  for (std::size_t i = 0; i < lat.left.size(); ++i) left_arc[i] = mf.add_edge(source, lat.left[i], big);
  for (int v : lat.right) mf.add_edge(v, sink, big);
  std::vector<int> arc_of(lat.edges.size(), -1);
  for (std::size_t i = 0; i < lat.edges.size(); ++i) {
    const auto& e = lat.edges[i];
    if (e.open && e.u != e.v) arc_of[i] = mf.add_edge(e.u, e.v, 1, true);
  }
  CrossingReport rep;
  rep.count = mf.solve(source, sink);
  rep.exists = rep.count > 0;
  if (!want_paths || rep.count == 0) return rep;

  // Net flow leaving each vertex, by ascending edge id.
  std::vector<std::vector<std::pair<int, int>>> out(nv);
  for (std::size_t i = 0; i < lat.edges.size(); ++i) {
    if (arc_of[i] < 0) continue;
    const int f = mf.flow(arc_of[i]);
    if (f > 0) out[lat.edges[i].u].push_back({static_cast<int>(i), lat.edges[i].v});
    if (f < 0) out[lat.edges[i].v].push_back({static_cast<int>(i), lat.edges[i].u});
  }
  std::vector<std::size_t> cursor(nv, 0);
  std::vector<char> is_right(nv, 0);
  for (int v : lat.right) is_right[v] = 1;
  std::vector<int> on_path(nv, -1);  // position in the current walk

  for (std::size_t li = 0; li < lat.left.size(); ++li) {
    for (int unit = mf.flow(left_arc[li]); unit > 0; --unit) {
      std::vector<int> verts{lat.left[li]};
      std::vector<int> path;
      on_path[verts[0]] = 0;
      while (!is_right[verts.back()]) {
        const int v = verts.back();
        if (cursor[v] >= out[v].size()) throw std::logic_error("flow decomposition stuck");
        const auto [e, w] = out[v][cursor[v]++];
        if (on_path[w] >= 0) {
          // Drop the cycle back to w.
          const int keep = on_path[w];
          for (std::size_t k = keep + 1; k < verts.size(); ++k) on_path[verts[k]] = -1;
          verts.resize(keep + 1);
          path.resize(keep);
          continue;
        }
        on_path[w] = static_cast<int>(verts.size());
        verts.push_back(w);
        path.push_back(e);
      }
      for (int v : verts) on_path[v] = -1;
      rep.paths.push_back(std::move(path));
    }
  }
  return rep;
}

CutReport dual_top_bottom_cut(const BondLattice& lat, const std::function<bool(int)>& allowed) {
  const DualLattice d = build_dual(lat);
  std::vector<std::vector<std::pair<int, int>>> adj(d.face_count);
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    if (!e.open) continue;
    if (allowed && !allowed(e.primal)) continue;
    adj[e.f].push_back({static_cast<int>(i), e.g});
    adj[e.g].push_back({static_cast<int>(i), e.f});
  }
  std::vector<int> via(d.face_count, -2);
  std::queue<int> queue;
  via[d.top] = -1;
  queue.push(d.top);
  while (!queue.empty() && via[d.bottom] == -2) {
    const int f = queue.front();
    queue.pop();
    for (auto [e, g] : adj[f]) {
      if (via[g] == -2) {
        via[g] = e;
        queue.push(g);
      }
    }
  }
  CutReport rep;
  if (via[d.bottom] == -2) return rep;
  rep.exists = true;
  for (int f = d.bottom; f != d.top;) {
    const auto& e = d.edges[via[f]];
    rep.cut_edges.push_back(e.primal);
    f = e.f == f ? e.g : e.f;
  }
  std::reverse(rep.cut_edges.begin(), rep.cut_edges.end());
  return rep;
}

int ClusterReport::max_size() const {
  int m = 0;
  for (const auto& c : clusters) m = std::max(m, c.size());
  return m;
}

ClusterReport final_time_clusters(const MeasurementConfiguration& config) {
  const BondLattice lat = circuit_to_bond_lattice(config);
  UnionFind uf(lat.vertex_count);
  for (const auto& e : lat.edges) {
    if (e.open && e.role == EdgeRole::Site) uf.unite(e.u, e.v);
  }
  ClusterReport rep;
  std::unordered_map<int, int> index_of_root;
  for (int q = 0; q < lat.n; ++q) {
    const auto& leg = lat.edges[lat.site_edge_id(q, lat.t - 1)];
    if (!leg.open) continue;
    const int root = uf.find(leg.u);
    auto [it, inserted] = index_of_root.try_emplace(root, rep.m());
    if (inserted) rep.clusters.emplace_back();
    rep.clusters[it->second].final_legs.push_back(q);
  }
  for (std::size_t i = 0; i < lat.edges.size(); ++i) {
    const auto& e = lat.edges[i];
    if (!e.open || e.role != EdgeRole::Site) continue;
    auto it = index_of_root.find(uf.find(e.u));
    if (it != index_of_root.end()) rep.clusters[it->second].edges.push_back(static_cast<int>(i));
  }
  for (int g = 0; g < static_cast<int>(lat.gate_vertex.size()); ++g) {
    auto it = index_of_root.find(uf.find(lat.gate_vertex[g]));
    if (it != index_of_root.end()) rep.clusters[it->second].gates.push_back(g);
  }
  return rep;
}

std::vector<bool> effective_gate_mask(const MeasurementConfiguration& config) {
  const auto rep = final_time_clusters(config);
  const int gates = BrickwallLayout::build(config.n(), config.t()).gate_count();
  std::vector<bool> mask(gates, false);
  for (const auto& c : rep.clusters)
    for (int g : c.gates) mask[g] = true;
  return mask;
}

int effective_gate_count(const MeasurementConfiguration& config) {
  const auto mask = effective_gate_mask(config);
  return static_cast<int>(std::count(mask.begin(), mask.end(), true));
}

std::vector<std::vector<int>> measurement_free_paths(const MeasurementConfiguration& config, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "need k >= 1 paths");
  const auto rep = max_edge_disjoint_crossings(circuit_to_bond_lattice(config));
  if (rep.count < k) {
    throw Error(ErrorKind::InsufficientPaths,
                "only " + std::to_string(rep.count) + " measurement-free paths, need " + std::to_string(k));
  }
  return {rep.paths.begin(), rep.paths.begin() + k};
}

UncomplexWitness uncomplex_witness(const MeasurementConfiguration& config, int min_layer) {
  const BondLattice lat = circuit_to_bond_lattice(config);
  const auto cut = dual_top_bottom_cut(lat, [&](int e) { return lat.edges[e].layer >= min_layer; });
  UncomplexWitness w;
  w.pre_cut_gates.assign(lat.gate_vertex.size(), false);
  if (!cut.exists) return w;
  w.found = true;
  w.cut_edges = cut.cut_edges;
  std::vector<char> removed(lat.edges.size(), 0);
  for (int e : cut.cut_edges) removed[e] = 1;
  std::vector<std::vector<int>> adj(lat.vertex_count);
  for (std::size_t i = 0; i < lat.edges.size(); ++i) {
    if (removed[i]) continue;
    adj[lat.edges[i].u].push_back(lat.edges[i].v);
    adj[lat.edges[i].v].push_back(lat.edges[i].u);
  }
  std::vector<char> seen(lat.vertex_count, 0);
  std::queue<int> queue;
  for (int v : lat.left) {
    seen[v] = 1;
    queue.push(v);
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        queue.push(u);
      }
    }
  }
  for (std::size_t g = 0; g < lat.gate_vertex.size(); ++g) w.pre_cut_gates[g] = seen[lat.gate_vertex[g]] != 0;
  return w;
}

double Estimate::stderr_binomial() const {
  if (trials == 0) return 0.0;
  return std::sqrt(value * (1.0 - value) / trials);
}

Estimate wilson_estimate(int hits, int trials, double z) {
  Estimate e;
  e.hits = hits;
  e.trials = trials;
  if (trials <= 0) return e;
  const double nn = trials;
  const double ph = hits / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (ph + z2 / (2 * nn)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn)) / denom;
  e.value = ph;
  e.ci_lo = std::max(0.0, centre - half);
  e.ci_hi = std::min(1.0, centre + half);
  return e;
}

Estimate mc_estimate(const std::function<bool(const StreamKey&)>& event, int trials, const StreamKey& stream) {
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "need at least one trial");
  int hits = 0;
  for (int i = 0; i < trials; ++i) hits += event(stream.child(static_cast<std::uint64_t>(i))) ? 1 : 0;
  return wilson_estimate(hits, trials);
}

bool sample_crossing(LatticeFamily family, int L, double q, const StreamKey& stream) {
  if (family == LatticeFamily::Square) return left_right_crossing(rectangular_lattice(L, L, q, stream));
  const auto cfg = sample_measurement_configuration(L, L, 1.0 - q, OutcomeMode::StructuralZero, stream);
  return left_right_crossing(circuit_to_bond_lattice(cfg));
}

int origin_cluster_size(double q, int cap, const StreamKey& stream) {
  Rng rng(stream);
  std::unordered_map<std::uint64_t, bool> edge_open;
  std::unordered_map<std::uint64_t, char> seen;
  auto key = [](std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(x + (1 << 20)) << 21) | static_cast<std::uint64_t>(y + (1 << 20));
  };
  auto bond = [&](std::int64_t x, std::int64_t y, int dir) {
    // dir 0: (x,y)-(x+1,y); dir 1: (x,y)-(x,y+1)
    const std::uint64_t k = key(x, y) * 2 + dir;
    auto [it, inserted] = edge_open.try_emplace(k, false);
    if (inserted) it->second = rng.bernoulli(q);
    return it->second;
  };
  std::queue<std::pair<std::int64_t, std::int64_t>> queue;
  queue.push({0, 0});
  seen[key(0, 0)] = 1;
  int size = 1;
  while (!queue.empty() && size < cap) {
    const auto [x, y] = queue.front();
    queue.pop();
    const std::int64_t nx[4] = {x + 1, x - 1, x, x};
    const std::int64_t ny[4] = {y, y, y + 1, y - 1};
    const bool open[4] = {bond(x, y, 0), bond(x - 1, y, 0), bond(x, y, 1), bond(x, y - 1, 1)};
    for (int d = 0; d < 4 && size < cap; ++d) {
      if (!open[d]) continue;
      if (seen.try_emplace(key(nx[d], ny[d]), 1).second) {
        ++size;
        queue.push({nx[d], ny[d]});
      }
    }
  }
  return size;
}

}  // namespace mcl
