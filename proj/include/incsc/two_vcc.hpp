#pragma once

// Vertex-resilient components via the refined block forest, 2-edge-connected
// classes via strong-bridge refinement, and their intersection: the
// 2-vertex-connected components, with pair queries and witnesses.
//
// Works on one strongly connected instance (an Engine with its overline
// mirror plus the matching QueryEngine).

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "incsc/engine.hpp"
#include "incsc/queries.hpp"

namespace incsc {

using Blocks = std::vector<std::vector<VertexId>>;

// refine(B, S, x): replace every block by its intersections with S ∪ {x},
// one per class S, keeping only pieces with at least two members.
// Precondition: x does not belong to any class of S.
inline void refine_blocks(Blocks& blocks, const Blocks& classes, VertexId x) {
  std::map<VertexId, int> cls;
  for (size_t i = 0; i < classes.size(); ++i)
    for (VertexId v : classes[i]) {
      assert(v != x);
      cls[v] = static_cast<int>(i);
    }
  Blocks out;
  for (const auto& b : blocks) {
    bool has_x = std::find(b.begin(), b.end(), x) != b.end();
    std::map<int, std::vector<VertexId>> pieces;
    for (VertexId v : b) {
      auto it = cls.find(v);
      if (it != cls.end()) pieces[it->second].push_back(v);
    }
    for (auto& [ci, piece] : pieces) {
      if (has_x) piece.push_back(x);
      if (piece.size() >= 2) {
        std::sort(piece.begin(), piece.end());
        out.push_back(std::move(piece));
      }
    }
  }
  blocks = std::move(out);
}

inline void dedup_blocks(Blocks& blocks) {
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
}

// Bipartite vertex/block incidence stays a forest.
inline bool blocks_are_forest(const Blocks& blocks, int n) {
  std::vector<int> uf(n + blocks.size());
  for (size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
  auto find = [&](int a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
  };
  for (size_t b = 0; b < blocks.size(); ++b)
    for (VertexId v : blocks[b]) {
      int ra = find(v), rb = find(n + static_cast<int>(b));
      if (ra == rb) return false;
      uf[ra] = rb;
    }
  return true;
}

struct PairAnswer {
  bool ok = false;
  enum Kind { none, edge, vertex } kind = none;
  Edge e{-1, -1};
  VertexId v = -1;
};

class TwoVCC {
 public:
  struct Trace {
    Blocks initial, after_forward, after_reverse;
  };

  TwoVCC(Engine& eng, QueryEngine& q) : eng_(eng), q_(q) {}

  // Vertex-resilient components: refine the coarse child/parent blocks by the
  // single-vertex-failure SCC classes gathered from the mirror decomposition,
  // in both flow directions.
  Blocks vertex_resilient(Trace* trace = nullptr) {
    const int n = eng_.vertex_count();
    const auto& D = eng_.fwd.dom;
    const auto& DR = eng_.rev.dom;
    Blocks blocks = initial_blocks();
    if (trace) trace->initial = blocks;
    run_pass(blocks, false);
    if (trace) trace->after_forward = blocks;
    run_pass(blocks, true);
    if (trace) trace->after_reverse = blocks;
    (void)n;
    (void)D;
    (void)DR;
    return blocks;
  }

  // 2-edge-connected classes: start from one class (the instance is strongly
  // connected) and split by the SCC partition under each strong-bridge
  // failure.
  std::vector<int> two_ecc_class() {
    const int n = eng_.vertex_count();
    std::vector<int> cls(n, 0);
    for (Edge e : strong_bridges()) {
      auto comps = q_.edge_list(e);
      std::vector<int> part(n, -1);
      for (size_t i = 0; i < comps.size(); ++i)
        for (VertexId v : comps[i]) part[v] = static_cast<int>(i);
      std::map<std::pair<int, int>, int> remap;
      for (VertexId v = 0; v < n; ++v) {
        auto key = std::pair{cls[v], part[v]};
        auto [it, fresh] = remap.try_emplace(key, static_cast<int>(remap.size()));
        cls[v] = it->second;
      }
    }
    return cls;
  }

  // 2-vertex-connected components: vertex-resilient blocks refined by the
  // 2-edge-connected classes.
  Blocks two_vcc() {
    Blocks blocks = vertex_resilient();
    auto cls = two_ecc_class();
    Blocks out;
    for (const auto& b : blocks) {
      std::map<int, std::vector<VertexId>> pieces;
      for (VertexId v : b) pieces[cls[v]].push_back(v);
      for (auto& [c, piece] : pieces)
        if (piece.size() >= 2) out.push_back(std::move(piece));
    }
    dedup_blocks(out);
    return out;
  }

  // Pair query with witness; separating edges take precedence over vertices,
  // minimal witness by id.
  PairAnswer pair(VertexId u, VertexId v) {
    PairAnswer ans;
    auto se = q_.sep_edges(u, v);
    if (!se.empty()) {
      ans.kind = PairAnswer::edge;
      ans.e = se.front();
      return ans;
    }
    auto sv = q_.sep_verts(u, v);
    if (!sv.empty()) {
      ans.kind = PairAnswer::vertex;
      ans.v = sv.front();
      return ans;
    }
    ans.ok = true;
    return ans;
  }

  std::vector<Edge> strong_bridges() const {
    const auto& D = eng_.fwd.dom;
    const auto& DR = eng_.rev.dom;
    std::set<Edge> out;
    for (VertexId v = 0; v < eng_.vertex_count(); ++v) {
      if (D.in_tree[v] && D.bridge_head[v] && D.parent[v] != -1)
        out.insert(Edge{D.parent[v], v});
      if (DR.in_tree[v] && DR.bridge_head[v] && DR.parent[v] != -1)
        out.insert(Edge{v, DR.parent[v]});
    }
    return {out.begin(), out.end()};
  }

 private:
  Engine& eng_;
  QueryEngine& q_;

  // Coarse blocks: for every vertex pair (u,v), the common children of u in D
  // and v in D^R, plus u when u = v or d^R(u) = v, plus v when d(v) = u.
  Blocks initial_blocks() {
    const int n = eng_.vertex_count();
    const auto& D = eng_.fwd.dom;
    const auto& DR = eng_.rev.dom;
    Blocks out;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = 0; v < n; ++v) {
        std::vector<VertexId> b;
        for (VertexId x : D.children[u])
          if (DR.parent[x] == v) b.push_back(x);
        if (u == v || DR.parent[u] == v) b.push_back(u);
        if (u != v && D.parent[v] == u) b.push_back(v);
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        if (b.size() >= 2) out.push_back(std::move(b));
      }
    dedup_blocks(out);
    return out;
  }

  // One Inc2VCC pass over D (reversed = false) or D^R (reversed = true),
  // bottom-up.
  void run_pass(Blocks& blocks, bool reversed) {
    const auto& dom = reversed ? eng_.rev.dom : eng_.fwd.dom;
    const int n = eng_.vertex_count();
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      return dom.depth[a] > dom.depth[b];
    });
    const auto& mirror_side = reversed ? eng_.mirror->rev : eng_.mirror->fwd;
    for (VertexId u : order) {
      const auto& kids = dom.children[u];
      if (kids.empty()) continue;
      std::vector<char> is_kid(n, 0);
      for (VertexId k : kids) is_kid[k] = 1;
      // Classes: siblings share a class iff they stay strongly connected in
      // G∖u, read off the mirror's bridge-decomposition root and auxiliary
      // component of their auxiliary counterparts.
      std::map<std::pair<VertexId, VertexId>, std::vector<VertexId>> groups;
      for (VertexId k : kids) {
        VertexId bar = reversed ? k : k + n;
        groups[{mirror_side.dec.root[bar], mirror_side.dec.canonical[bar]}]
            .push_back(k);
      }
      Blocks classes;
      for (auto& [key, g] : groups) classes.push_back(g);
      Blocks selected, untouched;
      for (auto& b : blocks) {
        int in = 0;
        for (VertexId x : b) in += is_kid[x] || x == u;
        // A parent/child block {u, y} counts too: u re-joins the pieces as
        // the refine pivot and is then subject to the G∖d(u) pruning test.
        (in >= 2 ? selected : untouched).push_back(std::move(b));
      }
      refine_blocks(selected, classes, u);
      if (dom.parent[u] != -1) {
        Blocks kept;
        for (auto& b : selected) {
          auto it = std::find(b.begin(), b.end(), u);
          if (it != b.end()) {
            VertexId other = b.front() == u ? b[1] : b.front();
            if (!q_.vert_conn(u, other, dom.parent[u])) {
              b.erase(it);
              if (b.size() < 2) continue;
            }
          }
          kept.push_back(std::move(b));
        }
        selected = std::move(kept);
      }
      blocks = std::move(untouched);
      for (auto& b : selected) blocks.push_back(std::move(b));
      dedup_blocks(blocks);
    }
  }
};

}  // namespace incsc
