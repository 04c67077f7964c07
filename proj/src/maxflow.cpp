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


#include "mcl/maxflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>

namespace mcl {

MaxFlow::MaxFlow(int vertices) : head_(vertices, -1) {}

int MaxFlow::add_edge(int u, int v, int capacity, bool undirected) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({v, capacity, head_[u]});
  head_[u] = id;
  arcs_.push_back({u, undirected ? capacity : 0, head_[v]});
  head_[v] = id + 1;
  original_.push_back(capacity);
  original_.push_back(undirected ? capacity : 0);
  return id;
}

int MaxFlow::flow(int arc) const { return original_[arc] - arcs_[arc].cap; }

bool MaxFlow::bfs(int s, int t) {
  level_.assign(head_.size(), -1);
  std::queue<int> queue;
  level_[s] = 0;
  queue.push(s);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int e = head_[v]; e != -1; e = arcs_[e].next) {
      if (arcs_[e].cap > 0 && level_[arcs_[e].to] < 0) {
        level_[arcs_[e].to] = level_[v] + 1;
        queue.push(arcs_[e].to);
      }
    }
  }
  return level_[t] >= 0;
}

int MaxFlow::dfs(int v, int t, int pushed) {
  if (v == t) return pushed;
  for (int& e = iter_[v]; e != -1; e = arcs_[e].next) {
    Arc& arc = arcs_[e];
    if (arc.cap <= 0 || level_[arc.to] != level_[v] + 1) continue;
    const int got = dfs(arc.to, t, std::min(pushed, arc.cap));
    if (got > 0) {
      arc.cap -= got;
      arcs_[e ^ 1].cap += got;
      return got;
    }
  }
  return 0;
}

int MaxFlow::solve(int source, int sink) {
  int total = 0;
  while (bfs(source, sink)) {
    iter_ = head_;
    while (int f = dfs(source, sink, std::numeric_limits<int>::max())) total += f;
  }
  return total;
}

MinCostFlow::MinCostFlow(int vertices) : adj_(vertices) {}

int MinCostFlow::add_edge(int u, int v, int capacity, int cost) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({v, capacity, cost});
  adj_[u].push_back(id);
  arcs_.push_back({u, 0, -cost});
  adj_[v].push_back(id + 1);
  original_.push_back(capacity);
  original_.push_back(0);
  return id;
}

int MinCostFlow::flow(int arc) const { return original_[arc] - arcs_[arc].cap; }

int MinCostFlow::solve(int source, int sink, int limit) {
  const int nv = static_cast<int>(adj_.size());
  const long long inf = std::numeric_limits<long long>::max() / 4;
  int pushed = 0;
  while (pushed < limit) {
    std::vector<long long> dist(nv, inf);
    std::vector<int> via(nv, -1);
    std::vector<char> queued(nv, 0);
    std::deque<int> queue;
    dist[source] = 0;
    queue.push_back(source);
    queued[source] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      queued[v] = 0;
      for (int e : adj_[v]) {
        const Arc& a = arcs_[e];
        if (a.cap > 0 && dist[v] + a.cost < dist[a.to]) {
          dist[a.to] = dist[v] + a.cost;
          via[a.to] = e;
          if (!queued[a.to]) {
            queued[a.to] = 1;
            queue.push_back(a.to);
          }
        }
      }
    }
    if (dist[sink] >= inf) break;
    int amount = limit - pushed;
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) amount = std::min(amount, arcs_[via[v]].cap);
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      arcs_[via[v]].cap -= amount;
      arcs_[via[v] ^ 1].cap += amount;
    }
    pushed += amount;
  }
  return pushed;
}

}  // namespace mcl
