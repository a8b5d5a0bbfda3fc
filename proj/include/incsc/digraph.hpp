#pragma once

// Mutable simple digraph with an append-only edge log, plus the static
// SCC / constrained-reachability primitives used by every other module.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

namespace incsc {

using VertexId = int;

struct Edge {
  VertexId x = -1;
  VertexId y = -1;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct SccPartition {
  std::vector<int> component_id;              // per vertex
  std::vector<std::vector<VertexId>> components;  // sorted members, sorted by min id
  std::vector<int> size;                      // per component

  bool same(VertexId u, VertexId v) const {
    return component_id[u] == component_id[v];
  }
};

class Digraph {
 public:
  explicit Digraph(int n) : n_(n), out_(n), in_(n) {
    if (n < 1) throw std::invalid_argument("Digraph: vertex count must be >= 1");
  }

  int vertex_count() const { return n_; }

  const std::vector<VertexId>& out(VertexId v) const { return out_.at(v); }
  const std::vector<VertexId>& in(VertexId v) const { return in_.at(v); }
  const std::vector<Edge>& edge_log() const { return edge_log_; }
  int edge_count() const { return static_cast<int>(edge_log_.size()); }

  bool has_edge(VertexId x, VertexId y) const {
    check_vertex(x);
    check_vertex(y);
    return present_.count(key(x, y)) != 0;
  }

  // Inserts (x,y); self-loops and duplicates are silently dropped (returns false).
  bool insert_edge(VertexId x, VertexId y) {
    check_vertex(x);
    check_vertex(y);
    if (x == y) return false;
    if (!present_.insert(key(x, y)).second) return false;
    out_[x].push_back(y);
    in_[y].push_back(x);
    edge_log_.push_back(Edge{x, y});
    return true;
  }

 private:
  void check_vertex(VertexId v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("Digraph: vertex id out of range");
  }
  std::int64_t key(VertexId x, VertexId y) const {
    return static_cast<std::int64_t>(x) * n_ + y;
  }

  int n_;
  std::vector<std::vector<VertexId>> out_;
  std::vector<std::vector<VertexId>> in_;
  std::vector<Edge> edge_log_;
  std::unordered_set<std::int64_t> present_;
};

// Tarjan's SCC (iterative).  Component ids are renumbered so that components
// are ordered by their minimum vertex id; members come out sorted.
inline SccPartition scc(const Digraph& g) {
  const int n = g.vertex_count();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<VertexId> stack;
  std::vector<std::pair<VertexId, int>> call;  // (vertex, next out index)
  int next_index = 0, next_comp = 0;
  std::vector<std::vector<VertexId>> raw_components;

  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < static_cast<int>(g.out(v).size())) {
        VertexId w = g.out(v)[i++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          std::vector<VertexId> members;
          VertexId w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = next_comp;
            members.push_back(w);
          } while (w != v);
          raw_components.push_back(std::move(members));
          ++next_comp;
        }
        VertexId done = v;
        call.pop_back();
        if (!call.empty()) {
          VertexId parent = call.back().first;
          low[parent] = std::min(low[parent], low[done]);
        }
      }
    }
  }

  // Renumber components by minimum member id.
  std::vector<int> order(raw_components.size());
  for (size_t i = 0; i < raw_components.size(); ++i) {
    std::sort(raw_components[i].begin(), raw_components[i].end());
    order[i] = static_cast<int>(i);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return raw_components[a][0] < raw_components[b][0];
  });

  SccPartition part;
  part.component_id.assign(n, -1);
  for (size_t rank = 0; rank < order.size(); ++rank) {
    auto& members = raw_components[order[rank]];
    for (VertexId v : members) part.component_id[v] = static_cast<int>(rank);
    part.size.push_back(static_cast<int>(members.size()));
    part.components.push_back(std::move(members));
  }
  return part;
}

// Vertices reachable from s, optionally avoiding one edge and/or one vertex.
inline std::vector<VertexId> reachable(const Digraph& g, VertexId s,
                                       std::optional<Edge> banned_edge = std::nullopt,
                                       std::optional<VertexId> banned_vertex = std::nullopt) {
  if (banned_vertex && *banned_vertex == s)
    throw std::invalid_argument("reachable: start vertex may not be banned");
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexId> queue{s};
  seen[s] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    VertexId v = queue[qi];
    for (VertexId w : g.out(v)) {
      if (banned_vertex && w == *banned_vertex) continue;
      if (banned_edge && banned_edge->x == v && banned_edge->y == w) continue;
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<VertexId> result;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (seen[v]) result.push_back(v);
  return result;
}

}  // namespace incsc
