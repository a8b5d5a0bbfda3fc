#pragma once

// Dominator tree of a flow graph G_s (or of the reverse flow graph), with
// bridge recognition and the incremental affected/scanned update under edge
// insertions.  Contract: after insert_and_update the state always equals a
// from-scratch build on the new graph.

#include <algorithm>
#include <vector>

#include "incsc/digraph.hpp"

namespace incsc {

// A direction-agnostic view: the reverse flow graph swaps adjacency roles.
struct FlowView {
  const Digraph* g = nullptr;
  bool reversed = false;

  const std::vector<VertexId>& succ(VertexId v) const {
    return reversed ? g->in(v) : g->out(v);
  }
  const std::vector<VertexId>& pred(VertexId v) const {
    return reversed ? g->out(v) : g->in(v);
  }
  bool has(VertexId x, VertexId y) const {  // edge x -> y in this orientation
    return reversed ? g->has_edge(y, x) : g->has_edge(x, y);
  }
  int n() const { return g->vertex_count(); }
};

struct UpdateReport {
  std::vector<VertexId> affected;       // parent changed, reattached to nca
  std::vector<VertexId> scanned;        // old-D descendants of affected
  VertexId nca = -1;
  std::vector<Edge> canceled;           // bridges destroyed by this insertion
  std::vector<Edge> locally_canceled;   // canceled while the head kept its parent
};

class DominatorState {
 public:
  VertexId start = -1;
  std::vector<int> parent;       // d(v); -1 for start / unreachable
  std::vector<int> depth;        // -1 if unreachable
  std::vector<char> in_tree;     // reachable from start
  std::vector<char> bridge_head; // (d(v),v) is a bridge of the flow graph
  // Derived tree layout, rebuilt after every change:
  std::vector<std::vector<VertexId>> children;
  std::vector<int> tin, tout;    // Euler intervals over D
  std::vector<VertexId> preorder;  // D-preorder sequence of reachable vertices
  std::vector<int> pos;          // index of each vertex in `preorder` (-1 if absent)

  void build(const FlowView& view, VertexId s) {
    start = s;
    compute_sncadom(view);
    refresh_layout();
    bridge_head.assign(view.n(), 0);
    for (VertexId v : preorder)
      if (v != start) bridge_head[v] = is_bridge_now(view, v);
  }

  bool is_ancestor(VertexId u, VertexId v) const {  // u ancestor-or-self of v in D
    return tin[u] <= tin[v] && tout[v] <= tout[u];
  }

  VertexId nca(VertexId u, VertexId v) const {
    while (u != v) {
      if (depth[u] >= depth[v])
        u = parent[u];
      else
        v = parent[v];
    }
    return u;
  }

  // Bridges on the D-path from s to v, as the ordered list of their heads
  // (shallowest first).  O(depth).
  std::vector<VertexId> bridge_heads_above(VertexId v) const {
    std::vector<VertexId> heads;
    for (VertexId u = v; u != start; u = parent[u])
      if (bridge_head[u]) heads.push_back(u);
    std::reverse(heads.begin(), heads.end());
    return heads;
  }

  // Incremental update for a freshly inserted edge (x,y) of this orientation.
  // Both endpoints must already be reachable from start.
  UpdateReport insert_and_update(const FlowView& view, VertexId x, VertexId y) {
    UpdateReport report;
    report.nca = nca(x, y);
    const int deep = depth[report.nca] + 1;

    if (depth[y] > deep) {
      // Affected vertices: v with a path from y whose every vertex w has
      // depth(w) >= depth(v) > depth(nca)+1 (old depths).  Bottleneck search
      // processed in decreasing best-value order via a bucket queue.
      const int n = view.n();
      std::vector<int> best(n, -1);
      std::vector<std::vector<VertexId>> bucket(depth[y] + 1);
      best[y] = depth[y];
      bucket[depth[y]].push_back(y);
      for (int b = depth[y]; b > deep; --b) {
        for (size_t i = 0; i < bucket[b].size(); ++i) {
          VertexId v = bucket[b][i];
          if (best[v] != b) continue;  // stale entry
          for (VertexId w : view.succ(v)) {
            if (!in_tree[w] || depth[w] <= deep) continue;
            int nb = std::min(b, depth[w]);
            if (nb > best[w]) {
              best[w] = nb;
              bucket[nb].push_back(w);
            }
          }
        }
      }
      for (VertexId v = 0; v < n; ++v)
        if (best[v] >= 0 && best[v] == depth[v]) report.affected.push_back(v);
    }

    std::vector<char> is_affected(view.n(), 0);
    std::vector<int> old_parent_of(view.n(), -1);
    if (!report.affected.empty()) {
      // Scanned = old-D descendants of affected vertices (dedup via marking).
      std::vector<char> mark(view.n(), 0);
      for (VertexId a : report.affected) {
        if (mark[a]) continue;
        std::vector<VertexId> stack{a};
        mark[a] = 1;
        while (!stack.empty()) {
          VertexId v = stack.back();
          stack.pop_back();
          report.scanned.push_back(v);
          for (VertexId c : children[v])
            if (!mark[c]) {
              mark[c] = 1;
              stack.push_back(c);
            }
        }
      }
      for (VertexId a : report.affected) {
        is_affected[a] = 1;
        old_parent_of[a] = parent[a];
        parent[a] = report.nca;
      }
      refresh_layout();
    }

    // Bridge recheck.  Insertions only destroy bridges of a fixed flow graph:
    // candidates are {y} ∪ scanned ∪ successors of scanned vertices (heads
    // whose subtree lost an in-edge tail, or whose parent edge changed).
    std::vector<VertexId> recheck{y};
    for (VertexId v : report.scanned) {
      recheck.push_back(v);
      for (VertexId w : view.succ(v)) recheck.push_back(w);
    }
    std::sort(recheck.begin(), recheck.end());
    recheck.erase(std::unique(recheck.begin(), recheck.end()), recheck.end());
    for (VertexId v : recheck) {
      if (v == start || !in_tree[v]) continue;
      bool was = bridge_head[v];
      bool now = is_bridge_now(view, v);
      bridge_head[v] = now;
      if (!was) continue;
      if (is_affected[v]) {
        // The old bridge edge (old parent, v) is gone regardless of whether
        // the new parent edge qualifies.
        report.canceled.push_back(oriented_edge(view, old_parent_of[v], v));
      } else if (!now) {
        Edge e = oriented_edge(view, parent[v], v);
        report.canceled.push_back(e);
        report.locally_canceled.push_back(e);
      }
    }
    return report;
  }

 private:
  Edge oriented_edge(const FlowView& view, VertexId u, VertexId v) const {
    // Edge u -> v of this orientation, as an edge of the underlying graph.
    return view.reversed ? Edge{v, u} : Edge{u, v};
  }

  bool is_bridge_now(const FlowView& view, VertexId v) const {
    if (!view.has(parent[v], v)) return false;
    for (VertexId w : view.pred(v)) {
      if (w == parent[v] || !in_tree[w]) continue;
      if (!is_ancestor(v, w)) return false;
    }
    return true;
  }

  // Children lists, depths and Euler intervals from the parent array.
  void refresh_layout() {
    const int n = static_cast<int>(parent.size());
    children.assign(n, {});
    for (VertexId v = 0; v < n; ++v)
      if (in_tree[v] && v != start) children[parent[v]].push_back(v);
    tin.assign(n, -1);
    tout.assign(n, -1);
    preorder.clear();
    int clock = 0;
    // Iterative DFS over D from start.
    std::vector<std::pair<VertexId, size_t>> stack{{start, 0}};
    tin[start] = clock++;
    depth[start] = 0;
    preorder.push_back(start);
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < children[v].size()) {
        VertexId c = children[v][i++];
        depth[c] = depth[v] + 1;
        tin[c] = clock++;
        preorder.push_back(c);
        stack.emplace_back(c, 0);
      } else {
        tout[v] = clock++;
        stack.pop_back();
      }
    }
    pos.assign(n, -1);
    for (size_t i = 0; i < preorder.size(); ++i) pos[preorder[i]] = static_cast<int>(i);
  }

  // Semi-NCA dominator computation (Georgiadis–Tarjan style).
  void compute_sncadom(const FlowView& view) {
    const int n = view.n();
    parent.assign(n, -1);
    depth.assign(n, -1);
    in_tree.assign(n, 0);

    std::vector<int> pre(n, -1);       // vertex -> preorder index
    std::vector<VertexId> ord;         // preorder index -> vertex
    std::vector<int> dfs_par;          // preorder index of DFS parent
    ord.reserve(n);
    dfs_par.reserve(n);
    {
      std::vector<std::pair<VertexId, size_t>> stack{{start, 0}};
      pre[start] = 0;
      ord.push_back(start);
      dfs_par.push_back(-1);
      in_tree[start] = 1;
      while (!stack.empty()) {
        auto& [v, i] = stack.back();
        if (i < view.succ(v).size()) {
          VertexId w = view.succ(v)[i++];
          if (pre[w] == -1) {
            pre[w] = static_cast<int>(ord.size());
            ord.push_back(w);
            dfs_par.push_back(pre[v]);
            in_tree[w] = 1;
            stack.emplace_back(w, 0);
          }
        } else {
          stack.pop_back();
        }
      }
    }
    const int nr = static_cast<int>(ord.size());
    if (nr == 1) {
      depth[start] = 0;
      return;
    }

    std::vector<int> semi(nr), label(nr), anc(nr, -1), idom(nr);
    for (int i = 0; i < nr; ++i) semi[i] = label[i] = i;

    // Iterative path compression for the eval forest.
    std::vector<int> path;
    auto eval = [&](int v) {
      if (anc[v] == -1) return v;
      path.clear();
      int u = v;
      while (anc[anc[u]] != -1) {
        path.push_back(u);
        u = anc[u];
      }
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        int w = *it;
        if (semi[label[anc[w]]] < semi[label[w]]) label[w] = label[anc[w]];
        anc[w] = anc[anc[w]];
      }
      return label[v];
    };

    for (int i = nr - 1; i >= 1; --i) {
      VertexId v = ord[i];
      for (VertexId w : view.pred(v)) {
        if (pre[w] == -1) continue;
        int cand = semi[eval(pre[w])];
        if (cand < semi[i]) semi[i] = cand;
      }
      label[i] = semi[i];
      anc[i] = dfs_par[i];
    }
    idom[0] = 0;
    for (int i = 1; i < nr; ++i) {
      int j = dfs_par[i];
      while (j > semi[i]) j = idom[j];
      idom[i] = j;
    }
    for (int i = 1; i < nr; ++i) parent[ord[i]] = ord[idom[i]];
  }
};

}  // namespace incsc
