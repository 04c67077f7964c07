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

#include <vector>

namespace mcl {

// Dinic blocking-flow max-flow. Undirected edges are a pair of opposite arcs
// that share one residual budget.
class MaxFlow {
 public:
  explicit MaxFlow(int vertices);

  // Returns an arc id; flow(id) is the net flow from u to v.
  int add_edge(int u, int v, int capacity, bool undirected = false);
  int solve(int source, int sink);
  int flow(int arc) const;
  int vertex_count() const { return static_cast<int>(head_.size()); }

 private:
  struct Arc {
    int to;
    int cap;
    int next;
  };
  bool bfs(int s, int t);
  int dfs(int v, int t, int pushed);

  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> original_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

// Successive-shortest-path min-cost flow with Bellman-Ford (SPFA) potentials.
// Costs are small non-negative integers on our graphs.
class MinCostFlow {
 public:
  explicit MinCostFlow(int vertices);
  int add_edge(int u, int v, int capacity, int cost);
  // Pushes up to `limit` units; returns the amount pushed.
  int solve(int source, int sink, int limit);
  int flow(int arc) const;

 private:
  struct Arc {
    int to;
    int cap;
    int cost;
  };
  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> original_;
};

}  // namespace mcl
