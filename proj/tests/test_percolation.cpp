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

#include <algorithm>
#include <set>

#include "mcl/error.hpp"
#include "mcl/percolation.hpp"
#include "mcl/statevector.hpp"

using namespace mcl;

namespace {

MeasurementConfiguration all_sites(int n, int t, bool measured) {
  MeasurementConfiguration c(n, t);
  if (measured)
    for (int l = 0; l < t; ++l)
      for (int q = 0; q < n; ++q) c.set(q, l, MeasurementStatus::measured_with(0));
  return c;
}

// Brute-force oracle: edges crossing between the components of the
// open-edge graph that contain left vertices and the rest.
bool crossing_by_union(const BondLattice& lat) {
  std::vector<int> comp(lat.vertex_count);
  for (int i = 0; i < lat.vertex_count; ++i) comp[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : lat.edges) {
      if (!e.open) continue;
      const int m = std::min(comp[e.u], comp[e.v]);
      if (comp[e.u] != m || comp[e.v] != m) {
        comp[e.u] = comp[e.v] = m;
        changed = true;
      }
    }
  }
  std::set<int> lefts;
  for (int v : lat.left) lefts.insert(comp[v]);
  for (int v : lat.right)
    if (lefts.count(comp[v])) return true;
  return false;
}

void check_paths(const BondLattice& lat, const CrossingReport& rep) {
  REQUIRE(static_cast<int>(rep.paths.size()) == rep.count);
  std::set<int> used;
  std::set<int> lefts(lat.left.begin(), lat.left.end());
  std::set<int> rights(lat.right.begin(), lat.right.end());
  for (const auto& path : rep.paths) {
    REQUIRE_FALSE(path.empty());
    for (int e : path) {
      CHECK(lat.edges[e].open);
      CHECK(used.insert(e).second);
    }
    // Walk the path and confirm it is connected from left to right.
    const auto& e0 = lat.edges[path[0]];
    int v = lefts.count(e0.u) ? e0.u : e0.v;
    CHECK(lefts.count(v));
    for (int e : path) {
      const auto& ed = lat.edges[e];
      REQUIRE((ed.u == v || ed.v == v));
      v = ed.u == v ? ed.v : ed.u;
    }
    CHECK(rights.count(v));
  }
}

}  // namespace

TEST_CASE("tilted lattice extremes") {
  const auto open = circuit_to_bond_lattice(all_sites(6, 6, false));
  for (const auto& e : open.edges) CHECK(e.open);
  const auto closed = circuit_to_bond_lattice(all_sites(6, 6, true));
  for (const auto& e : closed.edges) CHECK(e.open == (e.role == EdgeRole::InitialLeg));
  CHECK(open.gate_vertex.size() == 15u);
  CHECK(open.left.size() == 6u);
}

TEST_CASE("tilted lattice single measured site closes the right bond") {
  MeasurementConfiguration c(4, 4);
  c.set(1, 1, MeasurementStatus::measured_with(0));  // qubit 2, tau 2 in 1-based terms
  const auto lat = circuit_to_bond_lattice(c);
  const auto layout = BrickwallLayout::build(4, 4);
  int closed = 0;
  for (const auto& e : lat.edges) {
    if (e.open) continue;
    ++closed;
    const int g1 = *layout.gate_at(1, 1);
    const int g2 = *layout.gate_at(2, 0);
    CHECK(layout.placement(g1).qubit == 1);
    CHECK(layout.placement(g2).qubit == 0);
    CHECK(((e.u == lat.gate_vertex[g1] && e.v == lat.gate_vertex[g2]) ||
           (e.v == lat.gate_vertex[g1] && e.u == lat.gate_vertex[g2])));
  }
  CHECK(closed == 1);
}

TEST_CASE("rectangular lattice sampling") {
  CHECK(rectangular_lattice(5, 7, 1.0, StreamKey(1)).open_edge_count() == 2 * 5 * 7 + 5 + 7);
  CHECK(rectangular_lattice(5, 7, 0.0, StreamKey(1)).open_edge_count() == 0);
  const auto lat = rectangular_lattice(71, 71, 0.5, StreamKey(2));
  const double frac = lat.open_edge_count() / static_cast<double>(lat.edges.size());
  CHECK(lat.edges.size() >= 10000u);
  CHECK(std::abs(frac - 0.5) < 0.02);
  CHECK(rectangular_lattice(5, 7, 0.5, StreamKey(3)).edges_csv() ==
        rectangular_lattice(5, 7, 0.5, StreamKey(3)).edges_csv());
}

TEST_CASE("left right crossing examples") {
  CHECK(left_right_crossing(rectangular_lattice_uniform(6, 6, true)));
  CHECK_FALSE(left_right_crossing(rectangular_lattice_uniform(6, 6, false)));
  auto row = rectangular_lattice_uniform(6, 6, false);
  for (auto& e : row.edges)
    if (e.v == e.u + 1 && e.u / 7 == 3) e.open = true;
  CHECK(left_right_crossing(row));
  const auto rep = max_edge_disjoint_crossings(row);
  CHECK(rep.count == 1);
  check_paths(row, rep);
  CHECK(rep.paths[0].size() == 6u);
}

TEST_CASE("max edge-disjoint crossings of a fully open square is L+1") {
  for (int L = 1; L <= 8; ++L) {
    const auto lat = rectangular_lattice_uniform(L, L, true);
    const auto rep = max_edge_disjoint_crossings(lat);
    CHECK(rep.count == L + 1);
    check_paths(lat, rep);
  }
  CHECK(max_edge_disjoint_crossings(rectangular_lattice_uniform(5, 5, false)).count == 0);
}

TEST_CASE("random lattices: paths valid and monotone under opening") {
  for (int i = 0; i < 60; ++i) {
    auto lat = rectangular_lattice(10, 12, 0.6, StreamKey(5, {static_cast<std::uint64_t>(i)}));
    const auto rep = max_edge_disjoint_crossings(lat);
    check_paths(lat, rep);
    CHECK(rep.exists == left_right_crossing(lat));
    Rng rng(StreamKey(6, {static_cast<std::uint64_t>(i)}));
    for (int k = 0; k < 5; ++k) {
      auto& e = lat.edges[rng.below(lat.edges.size())];
      const bool before_cross = left_right_crossing(lat);
      const int before = max_edge_disjoint_crossings(lat, false).count;
      e.open = true;
      CHECK(max_edge_disjoint_crossings(lat, false).count >= before);
      if (before_cross) CHECK(left_right_crossing(lat));
    }
  }
  for (int i = 0; i < 40; ++i) {
    const auto cfg = sample_measurement_configuration(8, 10, 0.3, OutcomeMode::StructuralZero,
                                                      StreamKey(8, {static_cast<std::uint64_t>(i)}));
    const auto lat = circuit_to_bond_lattice(cfg);
    const auto rep = max_edge_disjoint_crossings(lat);
    check_paths(lat, rep);
    CHECK(rep.count <= 8);
  }
}

TEST_CASE("dual lattice flags mirror the primal") {
  const auto lat = rectangular_lattice(6, 9, 0.5, StreamKey(4));
  const auto d = build_dual(lat);
  CHECK(d.edges.size() == lat.edges.size() - 2 * 6);
  for (const auto& e : d.edges) CHECK(e.open == !lat.edges[e.primal].open);
  const auto cfg = sample_measurement_configuration(6, 8, 0.5, OutcomeMode::StructuralZero, StreamKey(9));
  const auto tl = circuit_to_bond_lattice(cfg);
  const auto td = build_dual(tl);
  CHECK(td.edges.size() == 48u);
  for (const auto& e : td.edges) CHECK(e.open == !tl.edges[e.primal].open);
}

TEST_CASE("duality exhaustive on small rectangles") {
  for (auto [a, b] : {std::pair{1, 1}, {2, 2}, {1, 3}, {3, 2}}) {
    auto lat = rectangular_lattice_uniform(a, b, false);
    const std::size_t m = lat.edges.size();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      for (std::size_t i = 0; i < m; ++i) lat.edges[i].open = (mask >> i) & 1;
      const bool cross = left_right_crossing(lat);
      CHECK(cross == crossing_by_union(lat));
      CHECK(dual_top_bottom_cut(lat).exists == !cross);
    }
  }
}

TEST_CASE("duality exhaustive on small circuits") {
  for (auto [n, t] : {std::pair{2, 2}, {4, 2}, {4, 4}, {6, 2}}) {
    const int sites = n * t;
    for (std::uint32_t mask = 0; mask < (1u << sites); ++mask) {
      MeasurementConfiguration c(n, t);
      for (int s = 0; s < sites; ++s)
        if ((mask >> s) & 1) c.set(s % n, s / n, MeasurementStatus::measured_with(0));
      const auto lat = circuit_to_bond_lattice(c);
      const bool cross = left_right_crossing(lat);
      REQUIRE(cross == crossing_by_union(lat));
      REQUIRE(dual_top_bottom_cut(lat).exists == !cross);
    }
  }
}

TEST_CASE("duality on random lattices") {
  int violations = 0;
  for (int i = 0; i < 500; ++i) {
    const auto lat = rectangular_lattice(8, 8, 0.5, StreamKey(10, {static_cast<std::uint64_t>(i)}));
    violations += dual_top_bottom_cut(lat).exists == left_right_crossing(lat) ? 1 : 0;
    const auto cfg = sample_measurement_configuration(8, 12, 0.5, OutcomeMode::StructuralZero,
                                                      StreamKey(11, {static_cast<std::uint64_t>(i)}));
    const auto tl = circuit_to_bond_lattice(cfg);
    violations += dual_top_bottom_cut(tl).exists == left_right_crossing(tl) ? 1 : 0;
  }
  CHECK(violations == 0);
  CHECK(dual_top_bottom_cut(rectangular_lattice_uniform(5, 5, false)).exists);
  CHECK_FALSE(dual_top_bottom_cut(rectangular_lattice_uniform(5, 5, true)).exists);
}

TEST_CASE("final time clusters") {
  const auto open = final_time_clusters(all_sites(6, 8, false));
  REQUIRE(open.m() == 1);
  CHECK(open.clusters[0].size() == 6 * 7);
  CHECK(open.clusters[0].final_legs.size() == 6u);
  CHECK(final_time_clusters(all_sites(6, 8, true)).m() == 0);

  std::vector<int> maxima;
  for (int i = 0; i < 200; ++i) {
    const auto cfg = sample_measurement_configuration(8, 16, 0.8, OutcomeMode::StructuralZero,
                                                      StreamKey(12, {static_cast<std::uint64_t>(i)}));
    const auto rep = final_time_clusters(cfg);
    CHECK(rep.m() <= 8 / 2 + 1);
    maxima.push_back(rep.max_size());
  }
  double mean = 0;
  for (int v : maxima) mean += v;
  mean /= maxima.size();
  std::nth_element(maxima.begin(), maxima.begin() + 100, maxima.end());
  const double median = maxima[100];
  CHECK(mean <= 3.0 * std::max(median, 1.0));
}

TEST_CASE("effective gate count extremes and semantics") {
  CHECK(effective_gate_count(all_sites(6, 8, false)) == 4 * 5);
  CHECK(effective_gate_count(all_sites(6, 8, true)) == 0);
  const auto layout = BrickwallLayout::build(6, 8);
  int checked = 0;
  for (int i = 0; i < 50; ++i) {
    const StreamKey key(13, {static_cast<std::uint64_t>(i)});
    const auto cfg = sample_measurement_configuration(6, 8, 0.7, OutcomeMode::StructuralZero, key.child(1));
    CircuitInstance inst{layout, sample_haar_gates(layout, key.child(2)), cfg, 0.7};
    const auto mask = effective_gate_mask(cfg);
    CircuitInstance reduced = inst;
    for (int g = 0; g < layout.gate_count(); ++g)
      if (!mask[g]) reduced.gates[g] = gates::identity();
    const auto r0 = run(inst);
    if (r0.state.amplitude_norm_squared() < 1e-20) continue;
    CHECK(fidelity(normalized_output(inst), normalized_output(reduced)) > 1 - 1e-10);
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("measurement free paths") {
  const auto paths = measurement_free_paths(all_sites(4, 6, false), 4);
  CHECK(paths.size() == 4u);
  CHECK_THROWS_AS(measurement_free_paths(all_sites(4, 6, true), 1), Error);
  try {
    measurement_free_paths(all_sites(4, 6, false), 5);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientPaths);
  }
}

TEST_CASE("uncomplex witness zeroes pre-cut gates without changing output") {
  const auto layout = BrickwallLayout::build(6, 10);
  int found = 0;
  for (int i = 0; i < 30; ++i) {
    const StreamKey key(14, {static_cast<std::uint64_t>(i)});
    const auto cfg = sample_measurement_configuration(6, 10, 0.75, OutcomeMode::StructuralZero, key.child(1));
    const auto w = uncomplex_witness(cfg, 4);
    if (!w.found) continue;
    ++found;
    for (int e : w.cut_edges) CHECK(cfg.measured(e % 6, e / 6));
    CircuitInstance inst{layout, sample_haar_gates(layout, key.child(2)), cfg, 0.75};
    CircuitInstance reduced = inst;
    for (int g = 0; g < layout.gate_count(); ++g)
      if (w.pre_cut_gates[g]) reduced.gates[g] = gates::identity();
    CHECK(fidelity(normalized_output(inst), normalized_output(reduced)) > 1 - 1e-10);
  }
  CHECK(found > 10);
}

TEST_CASE("monte carlo estimates") {
  const auto always = mc_estimate([](const StreamKey& k) { return sample_crossing(LatticeFamily::Square, 8, 1.0, k); },
                                  50, StreamKey(15));
  CHECK(always.value == 1.0);
  CHECK(always.ci_hi == 1.0);
  const auto hi = mc_estimate([](const StreamKey& k) { return sample_crossing(LatticeFamily::Square, 32, 0.6, k); },
                              2000, StreamKey(16));
  CHECK(hi.value >= 0.95);
  const auto lo = mc_estimate([](const StreamKey& k) { return sample_crossing(LatticeFamily::Square, 32, 0.4, k); },
                              2000, StreamKey(17));
  CHECK(lo.value <= 0.05);
  const auto w = wilson_estimate(50, 100);
  CHECK(w.ci_lo < 0.5);
  CHECK(w.ci_hi > 0.5);
  CHECK(w.ci_hi - w.ci_lo == doctest::Approx(0.192).epsilon(0.02));
}

TEST_CASE("origin cluster") {
  CHECK(origin_cluster_size(0.0, 100, StreamKey(1)) == 1);
  CHECK(origin_cluster_size(1.0, 100, StreamKey(1)) == 100);
  CHECK(origin_cluster_size(0.3, 50, StreamKey(2)) == origin_cluster_size(0.3, 50, StreamKey(2)));
}

TEST_CASE("lattice dumps") {
  const auto lat = rectangular_lattice_uniform(1, 1, true);
  CHECK(lat.edges_csv().rfind("id,u,v,open\n", 0) == 0);
  CHECK(lat.boundary_csv().find("left,0") != std::string::npos);
}
