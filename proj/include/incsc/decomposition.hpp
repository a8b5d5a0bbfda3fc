#pragma once

// Bridge decomposition of the dominator tree: per-vertex tree roots r_v,
// levels, and the auxiliary components (SCCs of each bridge subtree
// intersected with one decomposition tree) with canonical vertices c_v.

#include <algorithm>
#include <vector>

#include "incsc/digraph.hpp"
#include "incsc/dominators.hpp"

namespace incsc {

class Decomposition {
 public:
  std::vector<int> root;       // r_v; -1 if unreachable
  std::vector<int> level;      // -1 if unreachable
  std::vector<int> canonical;  // c_v; -1 if unreachable
  std::vector<std::vector<VertexId>> members;  // valid at canonical vertices

  void rebuild(const FlowView& view, const DominatorState& st) {
    refresh_roots_levels(st);
    recompute_components(view, st, st.start);
  }

  // O(n) top-down pass over the current dominator tree.
  void refresh_roots_levels(const DominatorState& st) {
    const int n = static_cast<int>(st.parent.size());
    root.assign(n, -1);
    level.assign(n, -1);
    for (VertexId v : st.preorder) {
      if (v == st.start) {
        root[v] = v;
        level[v] = 0;
      } else if (st.bridge_head[v]) {
        root[v] = v;
        level[v] = level[st.parent[v]] + 1;
      } else {
        root[v] = root[st.parent[v]];
        level[v] = level[st.parent[v]];
      }
    }
  }

  // Recomputes auxiliary components for every decomposition tree whose root
  // lies in D(scope_root); everything outside is untouched.
  void recompute_components(const FlowView& view, const DominatorState& st,
                            VertexId scope_root) {
    const int n = static_cast<int>(st.parent.size());
    if (static_cast<int>(canonical.size()) != n) canonical.assign(n, -1);
    if (static_cast<int>(members.size()) != n) members.assign(n, {});

    // Subtree slice of scope_root in D-preorder.
    size_t begin = static_cast<size_t>(st.pos[scope_root]);
    std::vector<VertexId> scope;
    for (size_t i = begin; i < st.preorder.size(); ++i) {
      VertexId v = st.preorder[i];
      if (!st.is_ancestor(scope_root, v)) break;
      scope.push_back(v);
    }
    for (VertexId v : scope) {
      if (canonical[v] != -1 && canonical[v] < n) members[canonical[v]].clear();
      canonical[v] = -1;
    }
    // Every decomposition-tree root inside the scope owns one restricted SCC
    // pass over its dominator subtree.
    for (VertexId r : scope) {
      if (root[r] != r) continue;
      scc_within_subtree(view, st, r);
    }
  }

 private:
  // Tarjan over G[D(r)], assigning components for tree-r vertices only.
  void scc_within_subtree(const FlowView& view, const DominatorState& st, VertexId r) {
    // Gather D(r).
    size_t begin = static_cast<size_t>(st.pos[r]);
    std::vector<VertexId> sub;
    for (size_t i = begin; i < st.preorder.size(); ++i) {
      VertexId v = st.preorder[i];
      if (!st.is_ancestor(r, v)) break;
      sub.push_back(v);
    }
    const int n = static_cast<int>(st.parent.size());
    // Persistent scratch: pay O(|sub|) here, not O(n), per call.
    if (static_cast<int>(local_.size()) != n) local_.assign(n, -1);
    std::vector<int>& local = local_;
    for (size_t i = 0; i < sub.size(); ++i) local[sub[i]] = static_cast<int>(i);

    const int k = static_cast<int>(sub.size());
    std::vector<int> index(k, -1), low(k, 0), comp(k, -1);
    std::vector<char> on_stack(k, 0);
    std::vector<int> stack;
    std::vector<std::pair<int, size_t>> call;
    int next_index = 0, next_comp = 0;
    for (int root_i = 0; root_i < k; ++root_i) {
      if (index[root_i] != -1) continue;
      call.emplace_back(root_i, 0);
      index[root_i] = low[root_i] = next_index++;
      stack.push_back(root_i);
      on_stack[root_i] = 1;
      while (!call.empty()) {
        auto& [v, it] = call.back();
        const auto& succ = view.succ(sub[v]);
        if (it < succ.size()) {
          int w = local[succ[it++]];
          if (w == -1) continue;
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
            int w;
            do {
              w = stack.back();
              stack.pop_back();
              on_stack[w] = 0;
              comp[w] = next_comp;
            } while (w != v);
            ++next_comp;
          }
          int done = v;
          call.pop_back();
          if (!call.empty()) {
            int p = call.back().first;
            low[p] = std::min(low[p], low[done]);
          }
        }
      }
    }
    // Intersect SCCs with tree(r): group tree vertices by SCC id.
    std::vector<VertexId> mins(next_comp, -1);
    for (VertexId v : sub) {
      if (root[v] != r) continue;
      int c = comp[local[v]];
      if (mins[c] == -1 || v < mins[c]) mins[c] = v;
    }
    for (VertexId v : sub) {
      if (root[v] != r) continue;
      VertexId c = mins[comp[local[v]]];
      canonical[v] = c;
      members[c].push_back(v);
    }
    for (VertexId v : sub)
      if (root[v] == r && canonical[v] == v) std::sort(members[v].begin(), members[v].end());
    for (VertexId v : sub) local[v] = -1;
  }

  std::vector<int> local_;  // scratch for scc_within_subtree
};

}  // namespace incsc
