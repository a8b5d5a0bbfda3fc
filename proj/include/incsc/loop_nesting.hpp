#pragma once

// Loop nesting forest H of a flow graph with respect to a deterministic DFS
// tree.  loop(u) = DFS descendants of u that reach u through descendants of u
// only; h(v) = nearest proper DFS ancestor u with v ∈ loop(u).

#include <algorithm>
#include <map>
#include <vector>

#include "incsc/decomposition.hpp"
#include "incsc/digraph.hpp"
#include "incsc/dominators.hpp"

namespace incsc {

struct LoopForest {
  std::vector<int> h;           // parent in H; -1 if none / not visited
  std::vector<int> pre;         // DFS preorder number; -1 if not visited
  std::vector<int> sub_size;    // DFS subtree size
  std::vector<VertexId> order;  // preorder sequence
  std::vector<int> dfs_parent;  // DFS tree parent; -1 for root

  bool visited(VertexId v) const { return pre[v] != -1; }
  bool dfs_descendant(VertexId anc, VertexId v) const {
    return pre[anc] <= pre[v] && pre[v] < pre[anc] + sub_size[anc];
  }
};

// Union-find contraction builder (Tarjan-style, processed in reverse DFS
// preorder).  `allowed` restricts to an induced subgraph; empty = all.
inline LoopForest build_loop_forest(const FlowView& view, VertexId root,
                                    const std::vector<char>& allowed = {}) {
  const int n = view.n();
  LoopForest lf;
  lf.h.assign(n, -1);
  lf.pre.assign(n, -1);
  lf.sub_size.assign(n, 0);
  lf.dfs_parent.assign(n, -1);
  auto ok = [&](VertexId v) { return allowed.empty() || allowed[v]; };
  if (!ok(root)) return lf;

  // Deterministic DFS (adjacency order).
  {
    std::vector<std::pair<VertexId, size_t>> stack{{root, 0}};
    lf.pre[root] = 0;
    lf.order.push_back(root);
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      const auto& succ = view.succ(v);
      if (i < succ.size()) {
        VertexId w = succ[i++];
        if (!ok(w) || lf.pre[w] != -1) continue;
        lf.pre[w] = static_cast<int>(lf.order.size());
        lf.order.push_back(w);
        lf.dfs_parent[w] = v;
        stack.emplace_back(w, 0);
      } else {
        stack.pop_back();
      }
    }
    for (auto it = lf.order.rbegin(); it != lf.order.rend(); ++it) {
      lf.sub_size[*it] = 1;
      for (VertexId w : view.succ(*it))
        if (ok(w) && lf.dfs_parent[w] == *it) lf.sub_size[*it] += lf.sub_size[w];
    }
  }

  // Union-find over vertices; class root = current loop header candidate.
  std::vector<int> uf(n);
  for (int v = 0; v < n; ++v) uf[v] = v;
  std::vector<int> path;
  auto find = [&](int v) {
    while (uf[v] != v) {
      path.push_back(v);
      v = uf[v];
    }
    for (int w : path) uf[w] = v;
    path.clear();
    return v;
  };
  // bag[v] = unexamined in-edge tails accumulated for v's class.
  std::vector<std::vector<VertexId>> bag(n);
  for (VertexId v : lf.order)
    for (VertexId w : view.pred(v))
      if (ok(w) && lf.visited(w)) bag[v].push_back(w);

  for (auto it = lf.order.rbegin(); it != lf.order.rend(); ++it) {
    VertexId u = *it;
    std::vector<VertexId> queue = std::move(bag[u]);
    bag[u].clear();
    while (!queue.empty()) {
      VertexId w = queue.back();
      queue.pop_back();
      int z = find(w);
      if (z == find(u)) continue;
      if (lf.dfs_descendant(u, w)) {
        // z's class closes a loop headed at u.
        lf.h[z] = u;
        uf[z] = u;
        auto& extra = bag[z];
        queue.insert(queue.end(), extra.begin(), extra.end());
        extra.clear();
      } else {
        bag[find(u)].push_back(w);  // relevant only to shallower headers
      }
    }
  }
  return lf;
}

// Quadratic oracle builder: same DFS tree, loop(u) by backward reachability
// restricted to T(u).
inline LoopForest build_loop_forest_brute(const FlowView& view, VertexId root,
                                          const std::vector<char>& allowed = {}) {
  LoopForest lf = build_loop_forest(view, root, allowed);  // reuse DFS layout
  const int n = view.n();
  std::fill(lf.h.begin(), lf.h.end(), -1);
  auto ok = [&](VertexId v) { return (allowed.empty() || allowed[v]) && lf.visited(v); };
  // For each u in DFS preorder (outermost first is irrelevant; nearest proper
  // ancestor wins, so iterate ancestors from the vertex upward instead).
  for (VertexId v : lf.order) {
    for (VertexId u = lf.dfs_parent[v]; u != -1; u = lf.dfs_parent[u]) {
      // Is v in loop(u)?  Backward search from u inside T(u).
      std::vector<char> seen(n, 0);
      std::vector<VertexId> stack{u};
      seen[u] = 1;
      bool in_loop = false;
      while (!stack.empty() && !in_loop) {
        VertexId a = stack.back();
        stack.pop_back();
        for (VertexId b : view.pred(a)) {
          if (!ok(b) || seen[b] || !lf.dfs_descendant(u, b)) continue;
          seen[b] = 1;
          if (b == v) in_loop = true;
          stack.push_back(b);
        }
      }
      if (in_loop) {
        lf.h[v] = u;
        break;
      }
    }
  }
  return lf;
}

// Auxiliary components derived from the loop nesting forest: two vertices of
// one decomposition tree lie in one component (one SCC of the induced
// dominated subgraph G[D(r)]) iff they share their topmost H-ancestor inside
// D(r).  Near-linear, unlike a per-tree SCC pass, so this is the static
// construction path; `refresh_roots_levels` must already have run.
inline void assign_components_from_forest(const LoopForest& lf,
                                          const DominatorState& st,
                                          Decomposition& dec) {
  const int n = static_cast<int>(st.parent.size());
  dec.canonical.assign(n, -1);
  dec.members.assign(n, {});
  // top[v] = topmost H-ancestor of v within D(r_v).  Processing in DFS
  // preorder lets the climb jump via already-computed tops: for a ∈ D(r),
  // D(r_a) ⊆ D(r), so the chain from a to top[a] never leaves D(r).
  std::vector<VertexId> top(n, -1);
  for (VertexId v : lf.order) {
    const VertexId r = dec.root[v];
    VertexId a = lf.h[v];
    if (a == -1 || !st.is_ancestor(r, a)) {
      top[v] = v;
      continue;
    }
    while (true) {
      a = top[a];
      VertexId p = lf.h[a];
      if (p == -1 || !st.is_ancestor(r, p)) break;
      a = p;
    }
    top[v] = a;
  }
  std::map<std::pair<VertexId, VertexId>, VertexId> canon_of;  // (tree, top)
  for (VertexId v = 0; v < n; ++v) {
    if (!st.in_tree[v]) continue;
    auto [it, fresh] = canon_of.try_emplace({dec.root[v], top[v]}, v);
    dec.canonical[v] = it->second;
    dec.members[it->second].push_back(v);  // ascending v: members stay sorted
  }
}

// h_v: the unique H-ancestor of v inside v's decomposition tree whose own
// H-parent leaves the tree; for root-tree vertices this is the start vertex.
inline VertexId head_in_tree(const LoopForest& lf, const Decomposition& dec,
                             VertexId start, VertexId v) {
  if (dec.root[v] == start) return start;
  VertexId cur = v;
  while (lf.h[cur] != -1 && dec.root[lf.h[cur]] == dec.root[v]) cur = lf.h[cur];
  return cur;
}

}  // namespace incsc
