#pragma once

// Full incremental stack for one strongly connected instance: both flow
// directions plus the overline mirror (auxiliary vertex v̄ = v + n for every
// v) used to reduce vertex failures to failures of the indegree-one edges
// (v̄,v).

#include <memory>
#include <vector>

#include "incsc/digraph.hpp"
#include "incsc/hyperloop.hpp"

namespace incsc {

class Engine {
 public:
  Digraph g;
  VertexId start = -1;
  bool baseline_mode = false;  // rebuild everything per insertion (benchmarks)
  FlowSide fwd, rev;
  std::unique_ptr<Engine> mirror;  // overline graph; no mirror of its own
  long long epoch = 0;             // bumped on every successful insertion

  Engine(int n, VertexId s, const std::vector<Edge>& edges = {},
         bool with_mirror = false)
      : g(n), start(s) {
    for (const Edge& e : edges) g.insert_edge(e.x, e.y);
    if (with_mirror) {
      std::vector<Edge> me;
      me.reserve(2 * n + edges.size());
      for (VertexId v = 0; v < n; ++v) {
        me.push_back(Edge{v + n, v});
        me.push_back(Edge{v, v + n});
      }
      for (const Edge& e : edges) me.push_back(Edge{e.x, e.y + n});
      mirror = std::make_unique<Engine>(2 * n, s + n, me, false);
    }
    fwd.attach(&g, false, s);
    rev.attach(&g, true, s);
  }

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  int vertex_count() const { return g.vertex_count(); }

  // Inserts (x,y); returns false on duplicates/self-loops.
  bool insert(VertexId x, VertexId y) {
    if (!g.insert_edge(x, y)) return false;
    if (baseline_mode) {
      fwd.initialize();
      rev.initialize();
    } else {
      fwd.insert_edge_update(x, y);
      rev.insert_edge_update(y, x);
    }
    if (mirror) {
      mirror->baseline_mode = baseline_mode;
      mirror->insert(x, y + vertex_count());
    }
    ++epoch;
    return true;
  }

  // Size of the dominator subtree D(v) (double-clock Euler intervals).
  static int dom_subtree_size(const DominatorState& dom, VertexId v) {
    return (dom.tout[v] - dom.tin[v] + 1) / 2;
  }
};

}  // namespace incsc
