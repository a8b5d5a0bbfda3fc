#pragma once

// One flow direction's full incremental stack: dominator tree, bridge
// decomposition, and the hyperloop nesting forest L with its maintenance
// under edge insertions (initialize / scanned updates / affected updates /
// loop covers / restarts on locally canceled bridges).

#include <algorithm>
#include <cassert>
#include <vector>

#include "incsc/decomposition.hpp"
#include "incsc/digraph.hpp"
#include "incsc/dominators.hpp"
#include "incsc/loop_nesting.hpp"

namespace incsc {

struct SideCounters {
  long long restarts = 0;
  long long bridge_cancellations = 0;
  long long scanned_total = 0;
  long long affected_total = 0;
  std::vector<int> scanned_count;     // per vertex, since last initialize
  std::vector<int> initial_depth;     // depth at last initialize
  std::vector<int> l_affected_count;  // per vertex, survives restarts
  bool scanned_budget_ok = true;      // scanned_count[v] <= initial_depth[v]
};

class FlowSide {
 public:
  FlowView view;
  VertexId start = -1;
  DominatorState dom;
  Decomposition dec;
  std::vector<int> ell;     // ℓ(v); meaningful where dec.canonical[v] == v; -1 = none
  std::vector<int> lcover;  // per canonical vertex; -1 = none
  SideCounters ctr;

  void attach(const Digraph* g, bool reversed, VertexId s) {
    view = FlowView{g, reversed};
    start = s;
    ctr.l_affected_count.assign(view.n(), 0);
    initialize();
  }

  // Full static construction (Algorithm `Initialize`); also the restart path.
  void initialize() {
    dom.build(view, start);
    auto lf = build_loop_forest(view, start);
    dec.refresh_roots_levels(dom);
    assign_components_from_forest(lf, dom, dec);
    ell.assign(view.n(), -1);
    for (VertexId u : dom.preorder) {
      if (dec.canonical[u] != u) continue;
      VertexId hu = head_in_tree(lf, dec, start, u);
      if (lf.h[hu] != -1) ell[u] = dec.canonical[lf.h[hu]];
    }
    compute_lcovers(start);
    ctr.scanned_count.assign(view.n(), 0);
    ctr.initial_depth = dom.depth;
  }

  // Loop covers and level-(r+1) bridge heads for the whole subtree of
  // scope_root, driven by the parent forest `parents` (the pre-insertion L
  // during updates, the fresh L at initialize).  q_at[v] = the bridge head at
  // level(scope_root)+1 on v's root path (for every scope vertex).
  std::vector<int> q_at;
  void compute_lcovers(VertexId scope_root,
                       const std::vector<int>* old_ell = nullptr,
                       const std::vector<int>* old_canon = nullptr) {
    const int n = view.n();
    if (static_cast<int>(lcover.size()) != n) lcover.assign(n, -1);
    if (static_cast<int>(q_at.size()) != n) q_at.assign(n, -1);
    const std::vector<int>& parents = old_ell ? *old_ell : ell;
    const std::vector<int>& canon = old_canon ? *old_canon : dec.canonical;
    const int base = dec.level[scope_root];
    std::vector<VertexId> heads;  // bridge heads below scope_root on current path
    // Iterative DFS over D'(scope_root).
    std::vector<std::pair<VertexId, size_t>> stack{{scope_root, 0}};
    auto enter = [&](VertexId v) {
      if (v != scope_root && dom.bridge_head[v]) heads.push_back(v);
      q_at[v] = heads.empty() ? -1 : heads[0];
      if (canon[v] == v) {
        lcover[v] = -1;
        int p = parents[v];
        if (p != -1 && dom.is_ancestor(scope_root, p)) {
          int idx = dec.level[p] + 1 - (base + 1);
          if (idx >= 0 && idx < static_cast<int>(heads.size())) lcover[v] = heads[idx];
        }
      }
    };
    enter(scope_root);
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < dom.children[v].size()) {
        VertexId c = dom.children[v][i++];
        enter(c);
        stack.emplace_back(c, 0);
      } else {
        if (v != scope_root && dom.bridge_head[v]) heads.pop_back();
        stack.pop_back();
      }
    }
  }

  // Incremental update for a freshly inserted edge (x,y) in this orientation.
  // Returns true if a locally canceled bridge forced a restart.
  bool insert_edge_update(VertexId x, VertexId y) {
    UpdateReport rep = dom.insert_and_update(view, x, y);
    ctr.bridge_cancellations += static_cast<long long>(rep.canceled.size());
    ctr.scanned_total += static_cast<long long>(rep.scanned.size());
    ctr.affected_total += static_cast<long long>(rep.affected.size());
    for (VertexId v : rep.scanned) {
      if (++ctr.scanned_count[v] > ctr.initial_depth[v]) ctr.scanned_budget_ok = false;
    }
    if (!rep.locally_canceled.empty()) {
      ++ctr.restarts;
      initialize();
      return true;
    }

    std::vector<int> canon_old = dec.canonical;
    std::vector<int> ell_old = ell;

    dec.refresh_roots_levels(dom);
    // Fast path: nothing structural moved and the edge stays inside one
    // auxiliary component — every maintained structure is unchanged.
    if (rep.affected.empty() && rep.canceled.empty() &&
        canon_old[x] != -1 && canon_old[x] == canon_old[y]) {
      return false;
    }

    const VertexId ry = dec.root[y];
    dec.recompute_components(view, dom, ry);

    // Default migration: a component that merely changed its canonical name
    // keeps its (renamed) parent; the update passes overwrite the L-affected
    // ones.  Records the defaults to drive the charging counter afterwards.
    const int n = view.n();
    auto map_new = [&](int u) { return u == -1 ? -1 : dec.canonical[u]; };
    std::vector<int> default_ell(n, -1);
    std::vector<char> in_scope(n, 0);
    {
      size_t begin = static_cast<size_t>(dom.pos[ry]);
      for (size_t i = begin; i < dom.preorder.size(); ++i) {
        VertexId v = dom.preorder[i];
        if (!dom.is_ancestor(ry, v)) break;
        in_scope[v] = 1;
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      if (!in_scope[v] || dec.canonical[v] != v) continue;
      default_ell[v] = map_new(ell_old[canon_old[v]]);
      ell[v] = default_ell[v];
    }

    std::vector<char> in_s(n, 0);
    for (VertexId v : rep.scanned) in_s[v] = 1;

    update_d_scanned(x, y, rep, canon_old, ell_old, in_s, in_scope);
    compute_lcovers(ry, &ell_old, &canon_old);
    update_l_affected(x, y, rep, canon_old, ell_old, in_s, in_scope);

    // Charging: canonical vertices that are L-affected but not scanned.
    for (VertexId v = 0; v < n; ++v) {
      if (!in_scope[v] || dec.canonical[v] != v || in_s[v]) continue;
      if (ell[v] != default_ell[v]) ++ctr.l_affected_count[v];
    }
    return false;
  }

 private:
  // Walks the pre-insertion ℓ-chain of v's old component upward, returning
  // the first element accepted by `pred` (-1 if none).
  template <typename Pred>
  int nearest_old_l(VertexId v, const std::vector<int>& canon_old,
                    const std::vector<int>& ell_old, Pred&& pred,
                    int banned_new_canonical = -1) const {
    int u = canon_old[v];
    while (u != -1 &&
           (!pred(u) || (banned_new_canonical != -1 &&
                         dec.canonical[u] == banned_new_canonical)))
      u = ell_old[u];
    return u;
  }

  int level_of(int v) const { return v == -1 ? 0 : dec.level[v]; }

  // Algorithm `Update-D-scanned`: new ℓ entries for canonical scanned
  // vertices (and for y's component).
  void update_d_scanned(VertexId x, VertexId y, const UpdateReport& rep,
                        const std::vector<int>& canon_old,
                        const std::vector<int>& ell_old,
                        const std::vector<char>& in_s,
                        const std::vector<char>& in_scope) {
    (void)x;
    const VertexId ry = dec.root[y];
    const VertexId yc = dec.canonical[y];
    auto outside_scope = [&](int u) { return !dom.is_ancestor(ry, u); };
    auto map_new = [&](int u) { return u == -1 ? -1 : dec.canonical[u]; };

    ell[yc] = map_new(nearest_old_l(y, canon_old, ell_old, outside_scope));
    if (rep.scanned.empty()) return;

    // Loop nesting forest of the scanned subgraph (plus y), rooted at y.
    std::vector<char> allowed(view.n(), 0);
    for (VertexId v : rep.scanned) allowed[v] = 1;
    allowed[y] = 1;
    LoopForest lf = build_loop_forest(view, y, allowed);

    // Reaches-y: scanned vertices with an edge into y's component are marked;
    // propagate backwards inside the scanned subgraph.
    std::vector<char> reaches(view.n(), 0);
    {
      std::vector<VertexId> queue;
      for (VertexId v : rep.scanned) {
        for (VertexId w : view.succ(v))
          if (in_scope[w] && dec.canonical[w] == yc) {
            reaches[v] = 1;
            queue.push_back(v);
            break;
          }
      }
      for (size_t qi = 0; qi < queue.size(); ++qi)
        for (VertexId w : view.pred(queue[qi]))
          if (allowed[w] && w != y && !reaches[w]) {
            reaches[w] = 1;
            queue.push_back(w);
          }
    }

    for (VertexId v : rep.scanned) {
      if (dec.canonical[v] != v || v == yc) continue;
      if (dec.root[v] == ry) {
        // Same tree as y, different component.
        ell[v] = map_new(nearest_old_l(v, canon_old, ell_old, outside_scope));
        continue;
      }
      // Contracted parent h̃(v): first H_scanned ancestor in another
      // component, by new canonical ids.
      int ht = -1;
      for (int a = lf.visited(v) ? lf.h[v] : -1; a != -1; a = lf.h[a]) {
        if (dec.canonical[a] != v) {
          ht = dec.canonical[a];
          break;
        }
      }
      if (ht != -1 && in_s[ht] && dec.root[ht] != ry) {
        ell[v] = ht;
      } else if (reaches[v]) {
        // v and y are strongly connected inside D'(r'_y), so y's component
        // becomes the parent.
        ell[v] = yc;
      } else {
        int w = nearest_old_l(
            v, canon_old, ell_old,
            [&](int u) { return dec.level[u] <= dec.level[ry]; }, v);
        ell[v] = map_new(w);
      }
    }
  }

  // Algorithm `Update-L-affected`: backward traversal from x over
  // G'[D'(r'_y)] with loop-cover jumps, rewiring non-scanned canonical
  // vertices that reach x.
  void update_l_affected(VertexId x, VertexId y, const UpdateReport& rep,
                         const std::vector<int>& canon_old,
                         const std::vector<int>& ell_old,
                         const std::vector<char>& in_s,
                         const std::vector<char>& in_scope) {
    (void)rep;
    const VertexId ry = dec.root[y];
    const VertexId yc = dec.canonical[y];
    const int ly = ell[yc];

    std::vector<char> visited(view.n(), 0);
    std::vector<VertexId> stack{x};
    auto push = [&](VertexId v) {
      if (in_scope[v] && !visited[v]) {
        visited[v] = 1;
        stack.push_back(v);
      }
    };
    visited[x] = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      bool expand;
      if (in_s[v] || v == y || dec.canonical[v] == yc) {
        // Scanned vertices and members of y's (possibly freshly merged)
        // component are traversed without testing.
        expand = true;
      } else {
        const int old_l = ell_old[canon_old[v]];
        const VertexId vc = dec.canonical[v];
        if (dec.root[v] == ry) {
          // Case: v in y's decomposition tree.
          bool affected = (old_l == -1) || (dec.level[old_l] < level_of(ly));
          if (affected && vc != yc) ell[vc] = ly;
          expand = affected;
        } else {
          // Case: v below the bridge (p,q) hanging off y's tree.
          const VertexId q = q_at[v];
          const VertexId p = dom.parent[q];
          const VertexId pc = dec.canonical[p];
          bool affected;
          int cand;
          if (pc == yc) {
            affected = (old_l == -1) || (dec.level[old_l] < dec.level[pc]);
            cand = pc;
          } else {
            affected = (old_l == -1) || (dec.level[old_l] < level_of(ly));
            cand = ly;
          }
          if (affected) {
            ell[vc] = cand;
            expand = true;
          } else {
            expand = false;
            // Skip everything dominated by the loop cover: continue from the
            // tail of the covering bridge instead.
            const int lc = lcover[canon_old[v]];
            if (lc != -1) push(dom.parent[lc]);
          }
        }
      }
      if (expand)
        for (VertexId w : view.pred(v)) push(w);
    }
  }
};

}  // namespace incsc
