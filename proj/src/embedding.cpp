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


#include "mcl/embedding.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "mcl/dimension.hpp"
#include "mcl/error.hpp"
#include "mcl/maxflow.hpp"
#include "mcl/pauli.hpp"

namespace mcl {

namespace {

GateMatrix on_qubit(const Matrix2& u, bool first) {
  return first ? gates::kron(u, Matrix2::Identity()) : gates::kron(Matrix2::Identity(), u);
}

bool proportional_to_identity(const Matrix2& u) {
  return std::abs(u(0, 1)) < 1e-14 && std::abs(u(1, 0)) < 1e-14 && std::abs(u(0, 0) - u(1, 1)) < 1e-14;
}

std::vector<std::pair<int, int>> slot_list(int k, int m) {
  std::vector<std::pair<int, int>> slots;
  for (int s = 0; s < m; ++s)
    for (int w = s % 2; w + 1 < k; w += 2) slots.push_back({s, w});
  return slots;
}

// Incident edges per vertex.
std::vector<std::vector<int>> incidence(const BondLattice& lat) {
  std::vector<std::vector<int>> inc(lat.vertex_count);
  for (std::size_t i = 0; i < lat.edges.size(); ++i) {
    inc[lat.edges[i].u].push_back(static_cast<int>(i));
    inc[lat.edges[i].v].push_back(static_cast<int>(i));
  }
  return inc;
}

bool is_in_leg(const BondLattice& lat, int edge, int vertex) { return lat.edges[edge].v == vertex; }

int other_end(const BondLattice& lat, int edge, int vertex) {
  return lat.edges[edge].u == vertex ? lat.edges[edge].v : lat.edges[edge].u;
}

Carrier make_carrier(const BondLattice& lat, const std::vector<int>& vertices, const std::vector<int>& edges) {
  Carrier c;
  c.vertices = vertices;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = lat.edges[edges[i]];
    c.steps.push_back({edges[i], e.qubit, e.layer, e.v == vertices[i + 1]});
  }
  for (std::size_t i = 1; i + 1 < vertices.size(); ++i) {
    const int v = vertices[i];
    const bool arrive_in = is_in_leg(lat, edges[i - 1], v);
    const bool leave_out = !is_in_leg(lat, edges[i], v);
    VertexUseKind kind = arrive_in ? (leave_out ? VertexUseKind::Forward : VertexUseKind::Cap)
                                   : (leave_out ? VertexUseKind::Cup : VertexUseKind::Backward);
    c.uses.push_back({v, edges[i - 1], edges[i], kind});
  }
  return c;
}

std::vector<MeasurementFreePath> vertex_disjoint_paths(const BondLattice& lat, int k) {
  const int nv = lat.vertex_count;
  const int source = 2 * nv;
  const int sink = 2 * nv + 1;
  MinCostFlow mcf(2 * nv + 2);
  for (int v = 0; v < nv; ++v) mcf.add_edge(2 * v, 2 * v + 1, 1, 0);
  for (int v : lat.left) mcf.add_edge(source, 2 * v, 1, 0);
  for (int v : lat.right) mcf.add_edge(2 * v + 1, sink, 1, 0);
  // arcs[x]: (arc id, edge id, next vertex) leaving x_out
  std::vector<std::vector<std::tuple<int, int, int>>> arcs(nv);
  for (std::size_t i = 0; i < lat.edges.size(); ++i) {
    const auto& e = lat.edges[i];
    if (!e.open) continue;
    arcs[e.u].push_back({mcf.add_edge(2 * e.u + 1, 2 * e.v, 1, 1), static_cast<int>(i), e.v});
    arcs[e.v].push_back({mcf.add_edge(2 * e.v + 1, 2 * e.u, 1, 1), static_cast<int>(i), e.u});
  }
  const int got = mcf.solve(source, sink, k);
  if (got < k) {
    throw Error(ErrorKind::InsufficientPaths, "only " + std::to_string(got) +
                                                  " vertex-disjoint measurement-free paths, need " + std::to_string(k));
  }
  std::vector<char> is_right(nv, 0);
  for (int v : lat.right) is_right[v] = 1;
  std::vector<MeasurementFreePath> paths;
  for (int start : lat.left) {
    // A left terminal carries flow iff its initial leg arc is used.
    int v = start;
    std::vector<int> verts{v};
    std::vector<int> edges;
    bool used = false;
    for (auto [arc, edge, next] : arcs[v]) used = used || mcf.flow(arc) > 0;
    if (!used) continue;
    while (!is_right[v]) {
      int step = -1;
      for (auto [arc, edge, next] : arcs[v]) {
        if (mcf.flow(arc) > 0) {
          step = edge;
          v = next;
          break;
        }
      }
      if (step < 0) throw std::logic_error("path decomposition stuck");
      edges.push_back(step);
      verts.push_back(v);
    }
    MeasurementFreePath path;
    path.route = make_carrier(lat, verts, edges);
    path.logical = static_cast<int>(paths.size());
    path.output_qubit = lat.edges[edges.back()].qubit;
    for (std::size_t i = 0; i < path.route.uses.size(); ++i) {
      const auto& use = path.route.uses[i];
      if (use.kind == VertexUseKind::Forward && lat.vertex_gate[use.vertex] >= 0)
        path.forward_gates.push_back(static_cast<int>(i));
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

struct Planner {
  const BondLattice& lat;
  std::vector<std::vector<int>> inc;
  std::vector<int> owner;          // vertex -> carrier id (paths first), -1 free
  std::vector<int> path_position;  // vertex -> index into its path's uses
  std::vector<char> endpoint_used;
  std::set<std::pair<int, int>> added;

  Planner(const BondLattice& l, const std::vector<MeasurementFreePath>& paths)
      : lat(l), inc(incidence(l)), owner(l.vertex_count, -1), path_position(l.vertex_count, -1),
        endpoint_used(l.vertex_count, 0) {
    for (std::size_t p = 0; p < paths.size(); ++p) {
      for (int v : paths[p].route.vertices) owner[v] = static_cast<int>(p);
      for (std::size_t i = 0; i < paths[p].route.uses.size(); ++i)
        path_position[paths[p].route.uses[i].vertex] = static_cast<int>(i);
    }
  }

  void require_measured(int edge) {
    const auto& e = lat.edges[edge];
    if (e.role != EdgeRole::Site && e.role != EdgeRole::FinalLeg) {
      throw Error(ErrorKind::GadgetPreconditionViolated, "gadget needs a measurement on a non-site leg");
    }
    if (e.open) added.insert({e.qubit, e.layer});
  }

  void require_cap_measurements(const Carrier& c) {
    for (const auto& use : c.uses) {
      if (use.kind != VertexUseKind::Cap) continue;
      for (int e : inc[use.vertex])
        if (lat.edges[e].u == use.vertex) require_measured(e);
    }
  }

  // Free legs of a forward use: the vertex's edges not used by its carrier.
  std::vector<int> free_legs(const VertexUse& use) const {
    std::vector<int> out;
    for (int e : inc[use.vertex])
      if (e != use.in_edge && e != use.out_edge) out.push_back(e);
    return out;
  }

  // Searches a bridge between paths `up` and `down` with endpoint positions
  // (indices into forward_gates) at least cu and cd.
  std::optional<Bridge> find_bridge(const std::vector<MeasurementFreePath>& paths, int up, int down, int cu,
                                    int cd) {
    const auto& P = paths[up];
    const auto& Q = paths[down];
    std::vector<int> q_rank(lat.vertex_count, -1);  // vertex -> index into Q.forward_gates
    for (std::size_t j = cd; j < Q.forward_gates.size(); ++j) {
      const int v = Q.route.uses[Q.forward_gates[j]].vertex;
      if (!endpoint_used[v]) q_rank[v] = static_cast<int>(j);
    }
    for (std::size_t i = cu; i < P.forward_gates.size(); ++i) {
      const auto& a_use = P.route.uses[P.forward_gates[i]];
      const int a = a_use.vertex;
      if (endpoint_used[a]) continue;
      // BFS over free vertices; parent[v] = (previous vertex, edge)
      std::map<int, std::pair<int, int>> parent;
      std::queue<int> queue;
      int best_rank = std::numeric_limits<int>::max();
      int best_vertex = -1;
      int best_edge = -1;
      int best_from = -1;
      auto consider = [&](int from, int edge, int to) {
        if (q_rank[to] < 0) return false;
        const auto& b_use = Q.route.uses[path_position[to]];
        if (edge == b_use.in_edge || edge == b_use.out_edge) return false;
        if (q_rank[to] < best_rank) {
          best_rank = q_rank[to];
          best_vertex = to;
          best_edge = edge;
          best_from = from;
        }
        return true;
      };
      for (int e : free_legs(a_use)) {
        if (!lat.edges[e].open) continue;
        const int x = other_end(lat, e, a);
        if (consider(a, e, x)) continue;
        if (owner[x] >= 0 || parent.count(x)) continue;
        parent[x] = {a, e};
        queue.push(x);
      }
      while (!queue.empty()) {
        const int y = queue.front();
        queue.pop();
        for (int e : inc[y]) {
          if (!lat.edges[e].open) continue;
          const int z = other_end(lat, e, y);
          if (z == a) continue;
          if (consider(y, e, z)) continue;
          if (owner[z] >= 0 || parent.count(z)) continue;
          parent[z] = {y, e};
          queue.push(z);
        }
      }
      if (best_vertex < 0) continue;

      std::vector<int> verts{best_vertex};
      std::vector<int> edges{best_edge};
      for (int v = best_from; v != a; v = parent[v].first) {
        verts.push_back(v);
        edges.push_back(parent[v].second);
      }
      verts.push_back(a);
      std::reverse(verts.begin(), verts.end());
      std::reverse(edges.begin(), edges.end());

      Bridge br;
      br.upper = up;
      br.lower = down;
      br.control_use = P.forward_gates[i];
      br.target_use = Q.forward_gates[best_rank];
      br.route = make_carrier(lat, verts, edges);
      br.control_backward = is_in_leg(lat, edges.front(), a);
      br.target_backward = !is_in_leg(lat, edges.back(), best_vertex);
      // cursor bookkeeping via the caller
      br.slot = static_cast<int>(i) * 0;
      last_control_rank = static_cast<int>(i);
      last_target_rank = best_rank;
      return br;
    }
    return std::nullopt;
  }

  void commit(const std::vector<MeasurementFreePath>& paths, const Bridge& br) {
    const int a = br.route.vertices.front();
    const int b = br.route.vertices.back();
    endpoint_used[a] = 1;
    endpoint_used[b] = 1;
    for (const auto& use : br.route.uses) owner[use.vertex] = 1000000;
    require_cap_measurements(br.route);
    // Junk outputs: the endpoint's free output when the bridge uses its free input.
    const auto junk = [&](const VertexUse& use, int bridge_edge) {
      for (int e : free_legs(use))
        if (e != bridge_edge) require_measured(e);
    };
    if (br.control_backward) junk(paths[br.upper].route.uses[br.control_use], br.route.steps.front().edge);
    if (!br.target_backward) junk(paths[br.lower].route.uses[br.target_use], br.route.steps.back().edge);
  }

  int last_control_rank = -1;
  int last_target_rank = -1;
};

EmbeddingPlan build_plan(const MeasurementConfiguration& config, int k, int m, const std::vector<bool>& needed) {
  if (k < 2) throw Error(ErrorKind::InvalidInput, "embedding needs k >= 2 logical qubits");
  if (m < 0) throw Error(ErrorKind::InvalidInput, "logical depth must be non-negative");
  const BondLattice lat = circuit_to_bond_lattice(config);
  EmbeddingPlan plan;
  plan.base = config;
  plan.k = k;
  plan.m = m;
  plan.paths = vertex_disjoint_paths(lat, k);
  Planner planner(lat, plan.paths);
  for (const auto& p : plan.paths) planner.require_cap_measurements(p.route);

  const auto slots = slot_list(k, m);
  plan.slot_bridge.assign(slots.size(), -1);
  std::vector<int> cursor(k, 0);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (!needed[s]) continue;
    const int w = slots[s].second;
    auto br = planner.find_bridge(plan.paths, w, w + 1, cursor[w], cursor[w + 1]);
    if (!br) {
      throw Error(ErrorKind::NoBridgeFound, "no open bridge between paths " + std::to_string(w) + " and " +
                                                std::to_string(w + 1) + " for logical layer " +
                                                std::to_string(slots[s].first));
    }
    br->slot = static_cast<int>(s);
    cursor[w] = planner.last_control_rank + 1;
    cursor[w + 1] = planner.last_target_rank + 1;
    planner.commit(plan.paths, *br);
    plan.slot_bridge[s] = static_cast<int>(plan.bridges.size());
    plan.bridges.push_back(std::move(*br));
  }
  for (int w = 0; w < k; ++w) {
    const auto& fg = plan.paths[w].forward_gates;
    plan.flush_positions.push_back(cursor[w] < static_cast<int>(fg.size()) ? cursor[w] : -1);
  }
  plan.added_sites.assign(planner.added.begin(), planner.added.end());
  return plan;
}

}  // namespace

const char* to_string(VertexUseKind kind) {
  switch (kind) {
    case VertexUseKind::Forward: return "forward";
    case VertexUseKind::Backward: return "backward";
    case VertexUseKind::Cap: return "cap";
    case VertexUseKind::Cup: return "cup";
  }
  return "?";
}

LogicalCircuit LogicalCircuit::identity(int k, int m) {
  LogicalCircuit c;
  c.k = k;
  c.m = m;
  for (auto [s, w] : slot_list(k, m)) c.gates.push_back(LogicalGate{s, w});
  return c;
}

LogicalCircuit LogicalCircuit::random_clifford(int k, int m, const StreamKey& stream) {
  LogicalCircuit c = identity(k, m);
  Rng rng(stream);
  const auto& group = single_qubit_cliffords();
  auto pick = [&] { return group[rng.below(group.size())]; };
  for (auto& g : c.gates) {
    g.u2 = pick();
    g.v2 = pick();
    g.cnot = rng.bernoulli(0.5);
    g.u1 = pick();
    g.v1 = pick();
  }
  return c;
}

StateVector LogicalCircuit::simulate() const {
  StateVector s = StateVector::zero_state(k);
  for (int layer = 0; layer < m; ++layer) {
    for (const auto& single : singles)
      if (single.layer == layer) apply_single_qubit_gate(s, single.u, single.wire);
    for (const auto& g : gates) {
      if (g.layer != layer) continue;
      const GateMatrix w = g.cnot ? gates::cnot() : gates::identity();
      apply_two_qubit_gate(s, gates::kron(g.u1, g.v1) * w * gates::kron(g.u2, g.v2), g.wire, g.wire + 1);
    }
  }
  return s;
}

MeasurementConfiguration EmbeddingPlan::augmented() const {
  MeasurementConfiguration out = base.with_zero_outcomes();
  for (auto [q, l] : added_sites) out.set(q, l, MeasurementStatus::measured_with(0));
  return out;
}

std::vector<int> EmbeddingPlan::output_qubits() const {
  std::vector<int> out;
  for (const auto& p : paths) out.push_back(p.output_qubit);
  return out;
}

std::string EmbeddingPlan::to_json(const std::vector<GateMatrix>* gates) const {
  using json = nlohmann::ordered_json;
  auto legs = [](const Carrier& c) {
    json arr = json::array();
    for (const auto& s : c.steps) arr.push_back({{"q", s.qubit}, {"tau", s.layer}, {"causal", s.causal}});
    return arr;
  };
  auto uses = [](const Carrier& c) {
    json arr = json::array();
    for (const auto& u : c.uses) arr.push_back({{"vertex", u.vertex}, {"kind", to_string(u.kind)}});
    return arr;
  };
  json doc;
  doc["version"] = 1;
  doc["n"] = base.n();
  doc["t"] = base.t();
  doc["k"] = k;
  doc["m"] = m;
  doc["base"] = json::parse(base.to_json());
  json ps = json::array();
  for (const auto& p : paths) {
    ps.push_back({{"logical", p.logical}, {"output_qubit", p.output_qubit}, {"legs", legs(p.route)},
                  {"vertices", uses(p.route)}});
  }
  doc["paths"] = ps;
  json bs = json::array();
  for (const auto& b : bridges) {
    bs.push_back({{"slot", b.slot},
                  {"upper", b.upper},
                  {"lower", b.lower},
                  {"control_vertex", b.route.vertices.front()},
                  {"target_vertex", b.route.vertices.back()},
                  {"control_backward", b.control_backward},
                  {"target_backward", b.target_backward},
                  {"legs", legs(b.route)},
                  {"vertices", uses(b.route)}});
  }
  doc["bridges"] = bs;
  json added = json::array();
  for (auto [q, l] : added_sites) added.push_back({{"q", q}, {"tau", l}});
  doc["added_measurements"] = added;
  doc["output_qubits"] = output_qubits();
  if (gates) {
    json table = json::object();
    for (std::size_t g = 0; g < gates->size(); ++g) {
      const auto& u = (*gates)[g];
      if ((u - GateMatrix::Identity()).norm() < 1e-14) continue;
      json rows = json::array();
      for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) row.push_back({u(r, c).real(), u(r, c).imag()});
        rows.push_back(row);
      }
      table[std::to_string(g)] = rows;
    }
    doc["gates"] = table;
  }
  return doc.dump();
}

EmbeddingPlan plan_embedding(const MeasurementConfiguration& config, int k, int m) {
  return build_plan(config, k, m, std::vector<bool>(slot_list(k, m).size(), true));
}

EmbeddingPlan plan_embedding(const MeasurementConfiguration& config, const LogicalCircuit& logical) {
  std::vector<bool> needed;
  for (const auto& g : logical.gates) needed.push_back(g.cnot);
  if (needed.size() != slot_list(logical.k, logical.m).size()) {
    throw Error(ErrorKind::InvalidInput, "logical circuit must fill every brick-wall slot");
  }
  return build_plan(config, logical.k, logical.m, needed);
}

std::vector<GateMatrix> assign_gates(const EmbeddingPlan& plan, const LogicalCircuit& logical) {
  if (logical.k != plan.k || logical.m != plan.m) throw Error(ErrorKind::InvalidInput, "plan/logical size mismatch");
  const BondLattice lat = circuit_to_bond_lattice(plan.base);
  const auto layout = BrickwallLayout::build(plan.base.n(), plan.base.t());
  std::vector<GateMatrix> out(layout.gate_count(), gates::identity());

  // Per vertex: single-qubit gate on the carrier input, endpoint role.
  enum class Role { None, Control, TargetForward, TargetBackward };
  std::map<int, Matrix2> local;
  std::map<int, Role> role;
  std::vector<Matrix2> pending(plan.k, Matrix2::Identity());
  auto place = [&](int w, int use_pos) {
    const int v = plan.paths[w].route.uses[use_pos].vertex;
    auto [it, inserted] = local.try_emplace(v, Matrix2::Identity());
    it->second = pending[w] * it->second;
    pending[w] = Matrix2::Identity();
  };

  const auto slots = slot_list(plan.k, plan.m);
  std::map<std::pair<int, int>, int> slot_of;
  for (std::size_t s = 0; s < slots.size(); ++s) slot_of[slots[s]] = static_cast<int>(s);
  for (int layer = 0; layer < logical.m; ++layer) {
    for (const auto& single : logical.singles)
      if (single.layer == layer) pending[single.wire] = single.u * pending[single.wire];
    for (const auto& g : logical.gates) {
      if (g.layer != layer) continue;
      const int w = g.wire;
      pending[w] = g.u2 * pending[w];
      pending[w + 1] = g.v2 * pending[w + 1];
      if (g.cnot) {
        const auto it = slot_of.find({g.layer, g.wire});
        const int b = it == slot_of.end() ? -1 : plan.slot_bridge[it->second];
        if (b < 0) throw Error(ErrorKind::GadgetPreconditionViolated, "plan has no bridge for a CNOT slot");
        const auto& br = plan.bridges[b];
        place(w, br.control_use);
        place(w + 1, br.target_use);
        role[plan.paths[w].route.uses[br.control_use].vertex] = Role::Control;
        role[plan.paths[w + 1].route.uses[br.target_use].vertex] =
            br.target_backward ? Role::TargetBackward : Role::TargetForward;
      }
      pending[w] = g.u1 * pending[w];
      pending[w + 1] = g.v1 * pending[w + 1];
    }
  }
  for (int w = 0; w < plan.k; ++w) {
    if (proportional_to_identity(pending[w])) continue;
    const int pos = plan.flush_positions[w];
    if (pos < 0) throw Error(ErrorKind::NoGateSlot, "no gate left on path " + std::to_string(w) + " for trailing gates");
    place(w, plan.paths[w].forward_gates[pos]);
  }

  const Matrix2 h = gates::hadamard();
  auto gate_of = [&](int v) -> GateMatrix& { return out[lat.vertex_gate[v]]; };
  auto first_qubit = [&](int v) { return layout.placement(lat.vertex_gate[v]).qubit; };
  auto assign_use = [&](const VertexUse& use) {
    if (lat.vertex_gate[use.vertex] < 0) return;  // passthrough: no gate
    const int a = first_qubit(use.vertex);
    const int qi = lat.edges[use.in_edge].qubit;
    const int qo = lat.edges[use.out_edge].qubit;
    const GateMatrix route = qi == qo ? gates::identity() : gates::swap();
    switch (use.kind) {
      case VertexUseKind::Backward: gate_of(use.vertex) = route; break;
      case VertexUseKind::Cap: gate_of(use.vertex) = on_qubit(h, true) * gates::cnot(); break;
      case VertexUseKind::Cup: gate_of(use.vertex) = gates::cnot() * on_qubit(h, true); break;
      case VertexUseKind::Forward: {
        const auto lit = local.find(use.vertex);
        const Matrix2 u = lit == local.end() ? Matrix2::Identity() : lit->second;
        GateMatrix g = route * on_qubit(u, qi == a);
        const auto rit = role.find(use.vertex);
        const Role r = rit == role.end() ? Role::None : rit->second;
        const bool p_first = qo == a;  // carrier output on the pair's first qubit
        const GateMatrix c_po = p_first ? gates::cnot() : gates::cnot_reversed();  // control p, target o
        const GateMatrix c_op = p_first ? gates::cnot_reversed() : gates::cnot();  // control o, target p
        const GateMatrix h_o = on_qubit(h, !p_first);
        if (r == Role::Control) g = c_po * g;
        if (r == Role::TargetForward) g = h_o * c_op * g;
        if (r == Role::TargetBackward) g = c_op * h_o * g;
        gate_of(use.vertex) = g;
        break;
      }
    }
  };
  for (const auto& p : plan.paths)
    for (const auto& use : p.route.uses) assign_use(use);
  for (std::size_t b = 0; b < plan.bridges.size(); ++b) {
    const auto& br = plan.bridges[b];
    // Bridges of slots without a CNOT stay identity.
    bool used = false;
    for (const auto& g : logical.gates)
      if (g.cnot && slot_of.at({g.layer, g.wire}) == br.slot) used = true;
    if (!used) continue;
    for (const auto& use : br.route.uses) assign_use(use);
  }
  return out;
}

StateVector embedding_reference(const EmbeddingPlan& plan, const LogicalCircuit& logical) {
  const StateVector s = logical.simulate();
  const int n = plan.base.n();
  std::vector<Complex> amps(std::size_t{1} << n, Complex(0, 0));
  const auto outs = plan.output_qubits();
  for (std::size_t x = 0; x < s.amplitudes.size(); ++x) {
    std::size_t idx = 0;
    for (int w = 0; w < plan.k; ++w)
      if ((x >> w) & 1) idx |= std::size_t{1} << outs[w];
    amps[idx] = s.amplitudes[x];
  }
  return StateVector::from_amplitudes(n, std::move(amps));
}

EmbeddingCheck verify_embedding(const EmbeddingPlan& plan, const std::vector<GateMatrix>& gates,
                                const LogicalCircuit& logical, double p) {
  const auto layout = BrickwallLayout::build(plan.base.n(), plan.base.t());
  CircuitInstance inst{layout, gates, plan.augmented(), p};
  const auto res = run(inst);
  EmbeddingCheck check;
  check.log_weight = res.log_weight;
  check.weight = res.weight();
  const StateVector out = normalized(res.state);  // throws ZeroWeight
  check.fidelity = fidelity(out, embedding_reference(plan, logical));
  return check;
}

EmbeddedBound embedded_dimension_bound(const MeasurementConfiguration& config, int k, int m, const StreamKey& stream) {
  const LogicalCircuit logical = LogicalCircuit::random_clifford(k, m, stream);
  const EmbeddingPlan plan = plan_embedding(config, logical);
  const auto assigned = assign_gates(plan, logical);
  const BondLattice lat = circuit_to_bond_lattice(config);
  const auto layout = BrickwallLayout::build(config.n(), config.t());
  std::vector<PerturbationIndex> indices;
  for (const auto& path : plan.paths) {
    for (int pos : path.forward_gates) {
      const auto& use = path.route.uses[pos];
      const int g = lat.vertex_gate[use.vertex];
      const bool first = lat.edges[use.out_edge].qubit == layout.placement(g).qubit;
      for (char s : {'X', 'Y', 'Z'}) indices.push_back(first ? PerturbationIndex{g, s, 'I'} : PerturbationIndex{g, 'I', s});
    }
  }
  EmbeddedBound out;
  out.formula = 2 * m / (3 * k);
  out.perturbations = static_cast<int>(indices.size());
  CircuitInstance inst{layout, assigned, plan.augmented(), 0.5};
  out.rank = numerical_rank(perturbed_outputs(inst, indices)).rank;
  return out;
}

}  // namespace mcl
