#pragma once

// Failure queries: SCCs of G minus one edge or one vertex, connectivity under
// failures, and separating edges/vertices.  Edge answers come from the Ĥ/Ĥ^R
// family machinery over the hyperloop forests; vertex answers go through the
// overline mirror against the failure edge (v̄,v).

#include <algorithm>
#include <memory>
#include <vector>

#include "incsc/engine.hpp"

namespace incsc {

// Per-epoch query structures for one flow direction: the forest Ĥ
// (ĥ(u) = c_u for non-canonical u, ℓ(u) for canonical u) with preorder
// intervals and subtree sizes, plus memoized canonical ℓ-chains for
// representative binary searches.
struct SideIndex {
  long long epoch = -1;
  std::vector<int> hat;
  std::vector<int> tin, sub_size;  // Ĥ preorder index and subtree size
  std::vector<VertexId> by_tin;
  std::vector<std::vector<int>> chain;  // canonical -> [self, ℓ, ℓℓ, ...]

  void ensure(const FlowSide& side, long long ep) {
    if (epoch == ep) return;
    epoch = ep;
    const int n = side.view.n();
    hat.assign(n, -1);
    tin.assign(n, -1);
    sub_size.assign(n, 0);
    by_tin.clear();
    chain.assign(n, {});
    std::vector<std::vector<VertexId>> kids(n);
    std::vector<VertexId> roots;
    for (VertexId v : side.dom.preorder) {
      hat[v] = side.dec.canonical[v] != v ? side.dec.canonical[v] : side.ell[v];
      if (hat[v] == -1)
        roots.push_back(v);
      else
        kids[hat[v]].push_back(v);
    }
    int clock = 0;
    for (VertexId r : roots) {
      std::vector<std::pair<VertexId, size_t>> stack{{r, 0}};
      tin[r] = clock++;
      by_tin.push_back(r);
      while (!stack.empty()) {
        auto& [v, i] = stack.back();
        if (i < kids[v].size()) {
          VertexId c = kids[v][i++];
          tin[c] = clock++;
          by_tin.push_back(c);
          stack.emplace_back(c, 0);
        } else {
          stack.pop_back();
        }
      }
    }
    for (auto it = by_tin.rbegin(); it != by_tin.rend(); ++it) {
      sub_size[*it] += 1;
      if (hat[*it] != -1) sub_size[hat[*it]] += sub_size[*it];
    }
  }

  bool hat_ancestor(VertexId a, VertexId t) const {
    return tin[a] <= tin[t] && tin[t] < tin[a] + sub_size[a];
  }

  const std::vector<int>& chain_of(const FlowSide& side, int w) {
    if (!chain[w].empty()) return chain[w];
    std::vector<int> path;
    int u = w;
    while (u != -1 && chain[u].empty()) {
      path.push_back(u);
      u = side.ell[u];
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      std::vector<int> c;
      int p = side.ell[*it];
      if (p != -1) c = chain[p];
      c.insert(c.begin(), *it);
      chain[*it] = std::move(c);
    }
    return chain[w];
  }

  // Deepest ℓ-chain ancestor of t's component with level >= lv: the root of
  // t's Ĥ family inside D(q) for the bridge head q at level lv.  Binary
  // search over the level-sorted chain; each comparison counts as one probe.
  int representative(const FlowSide& side, VertexId t, int lv, int& probes) {
    const std::vector<int>& ch = chain_of(side, side.dec.canonical[t]);
    size_t lo = 0, hi = ch.size() - 1;
    while (lo < hi) {
      size_t mid = (lo + hi + 1) / 2;
      ++probes;
      if (side.dec.level[ch[mid]] >= lv)
        lo = mid;
      else
        hi = mid - 1;
    }
    return ch[lo];
  }
};

class QueryEngine {
 public:
  explicit QueryEngine(Engine& eng) : eng_(eng) {
    if (eng_.mirror) mirror_ = std::make_unique<QueryEngine>(*eng_.mirror);
  }

  long long total_probes = 0;  // cumulative over connectivity queries
  int last_probes = 0;         // of the most recent connectivity query

  // ---- edge failure queries -------------------------------------------

  int edge_scc_count(Edge e) {
    ensure();
    Cut c = cut_of(e);
    if (!c.fwd && !c.rev) return 1;
    long long a = c.fwd ? static_cast<long long>(fwd_roots(e.y).size()) : 0;
    long long b = c.rev ? static_cast<long long>(rev_roots(e.x).size()) : 0;
    long long ab = 0;
    if (c.fwd && c.rev)
      for (VertexId w : fwd_roots(e.y))
        if (eng_.rev.dom.is_ancestor(e.x, w)) ++ab;
    return static_cast<int>(a + b - ab + (outside_size(c, e) > 0 ? 1 : 0));
  }

  int edge_max(Edge e) { return agg_size(e, false, true); }
  int edge_min(Edge e) { return agg_size(e, false, false); }

  std::vector<std::vector<VertexId>> edge_list(Edge e) {
    ensure();
    Cut c = cut_of(e);
    std::vector<std::vector<VertexId>> out;
    const auto& reach = eng_.fwd.dom.preorder;
    if (!c.fwd && !c.rev) {
      std::vector<VertexId> all(reach.begin(), reach.end());
      std::sort(all.begin(), all.end());
      out.push_back(std::move(all));
      return out;
    }
    if (c.fwd)
      for (VertexId w : fwd_roots(e.y)) out.push_back(family_members(fx_, w));
    if (c.rev)
      for (VertexId z : rev_roots(e.x)) {
        if (c.fwd && eng_.fwd.dom.is_ancestor(e.y, z)) continue;  // listed already
        out.push_back(family_members(rx_, z));
      }
    std::vector<VertexId> rest;
    for (VertexId t : reach)
      if (!(c.fwd && eng_.fwd.dom.is_ancestor(e.y, t)) &&
          !(c.rev && eng_.rev.dom.is_ancestor(e.x, t)))
        rest.push_back(t);
    if (!rest.empty()) {
      std::sort(rest.begin(), rest.end());
      out.push_back(std::move(rest));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& p, const auto& q) { return p.front() < q.front(); });
    return out;
  }

  bool edge_conn(VertexId a, VertexId b, Edge e) {
    ensure();
    last_probes = 0;
    bool res = edge_conn_impl(a, b, e);
    total_probes += last_probes;
    return res;
  }

  std::vector<Edge> sep_edges(VertexId a, VertexId b) {
    ensure();
    std::vector<Edge> res;
    side_sep(eng_.fwd, fx_, a, b, /*reverse=*/false, res);
    side_sep(eng_.rev, rx_, a, b, /*reverse=*/true, res);
    std::sort(res.begin(), res.end());
    res.erase(std::unique(res.begin(), res.end()), res.end());
    return res;
  }

  // ---- vertex failure queries (overline mirror) -----------------------

  int vert_scc_count(VertexId v) { return mirror_->edge_scc_count(bar_edge(v)) - 2; }
  int vert_max(VertexId v) { return mirror_->agg_size(bar_edge(v), true, true) / 2; }
  int vert_min(VertexId v) { return mirror_->agg_size(bar_edge(v), true, false) / 2; }

  std::vector<std::vector<VertexId>> vert_list(VertexId v) {
    const int n = eng_.vertex_count();
    auto comps = mirror_->edge_list(bar_edge(v));
    std::vector<std::vector<VertexId>> out;
    for (auto& comp : comps) {
      std::vector<VertexId> keep;
      for (VertexId t : comp)
        if (t < n && t != v) keep.push_back(t);
      if (!keep.empty()) out.push_back(std::move(keep));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& p, const auto& q) { return p.front() < q.front(); });
    return out;
  }

  bool vert_conn(VertexId a, VertexId b, VertexId v) {
    bool res = mirror_->edge_conn(a, b, bar_edge(v));
    last_probes = mirror_->last_probes;
    total_probes += last_probes;
    return res;
  }

  std::vector<VertexId> sep_verts(VertexId a, VertexId b) {
    const int n = eng_.vertex_count();
    std::vector<VertexId> res;
    for (const Edge& e : mirror_->sep_edges(a, b))
      if (e.x == e.y + n && e.y != a && e.y != b) res.push_back(e.y);
    std::sort(res.begin(), res.end());
    return res;
  }

 private:
  Engine& eng_;
  SideIndex fx_, rx_;
  std::unique_ptr<QueryEngine> mirror_;

  struct Cut {
    bool fwd = false, rev = false;
  };

  Edge bar_edge(VertexId v) const { return Edge{v + eng_.vertex_count(), v}; }

  void ensure() {
    fx_.ensure(eng_.fwd, eng_.epoch);
    rx_.ensure(eng_.rev, eng_.epoch);
  }

  Cut cut_of(Edge e) const {
    Cut c;
    const auto& fd = eng_.fwd.dom;
    const auto& rd = eng_.rev.dom;
    if (fd.in_tree[e.y] && fd.parent[e.y] == e.x && fd.bridge_head[e.y]) c.fwd = true;
    if (rd.in_tree[e.x] && rd.parent[e.x] == e.y && rd.bridge_head[e.x]) c.rev = true;
    return c;
  }

  // Canonical family roots inside D(head): ĥ leaves the subtree.
  std::vector<VertexId> roots_in(const FlowSide& side, VertexId head) const {
    std::vector<VertexId> roots;
    const auto& dom = side.dom;
    size_t begin = static_cast<size_t>(dom.pos[head]);
    for (size_t i = begin; i < dom.preorder.size(); ++i) {
      VertexId w = dom.preorder[i];
      if (!dom.is_ancestor(head, w)) break;
      if (side.dec.canonical[w] != w) continue;
      int p = side.ell[w];
      if (p == -1 || side.dec.level[p] < side.dec.level[head]) roots.push_back(w);
    }
    return roots;
  }
  std::vector<VertexId> fwd_roots(VertexId head) const { return roots_in(eng_.fwd, head); }
  std::vector<VertexId> rev_roots(VertexId head) const { return roots_in(eng_.rev, head); }

  std::vector<VertexId> family_members(const SideIndex& ix, VertexId root) const {
    std::vector<VertexId> mem(ix.by_tin.begin() + ix.tin[root],
                              ix.by_tin.begin() + ix.tin[root] + ix.sub_size[root]);
    std::sort(mem.begin(), mem.end());
    return mem;
  }

  long long outside_size(const Cut& c, Edge e) const {
    long long total = static_cast<long long>(eng_.fwd.dom.preorder.size());
    long long dv = c.fwd ? Engine::dom_subtree_size(eng_.fwd.dom, e.y) : 0;
    long long du = c.rev ? Engine::dom_subtree_size(eng_.rev.dom, e.x) : 0;
    long long both = 0;
    if (c.fwd && c.rev) {
      // Iterate the smaller subtree.
      const bool use_fwd = dv <= du;
      const FlowSide& it_side = use_fwd ? eng_.fwd : eng_.rev;
      const FlowSide& other = use_fwd ? eng_.rev : eng_.fwd;
      VertexId it_head = use_fwd ? e.y : e.x;
      VertexId other_head = use_fwd ? e.x : e.y;
      size_t begin = static_cast<size_t>(it_side.dom.pos[it_head]);
      for (size_t i = begin; i < it_side.dom.preorder.size(); ++i) {
        VertexId w = it_side.dom.preorder[i];
        if (!it_side.dom.is_ancestor(it_head, w)) break;
        if (other.dom.is_ancestor(other_head, w)) ++both;
      }
    }
    return total - dv - du + both;
  }

  // max/min over all SCC sizes of G∖e; skip_singletons drops size-1 families
  // (the mirror's {v},{v̄} blocks for vertex queries).
  int agg_size(Edge e, bool skip_singletons, bool want_max) {
    ensure();
    Cut c = cut_of(e);
    if (!c.fwd && !c.rev) return static_cast<int>(eng_.fwd.dom.preorder.size());
    std::vector<long long> sizes;
    if (c.fwd)
      for (VertexId w : fwd_roots(e.y)) sizes.push_back(fx_.sub_size[w]);
    if (c.rev)
      for (VertexId z : rev_roots(e.x)) sizes.push_back(rx_.sub_size[z]);
    long long outs = outside_size(c, e);
    if (outs > 0) sizes.push_back(outs);
    long long best = want_max ? 0 : static_cast<long long>(1) << 60;
    for (long long s : sizes) {
      if (skip_singletons && s == 1) continue;
      best = want_max ? std::max(best, s) : std::min(best, s);
    }
    if (best == (static_cast<long long>(1) << 60)) best = 0;
    return static_cast<int>(best);
  }

  bool edge_conn_impl(VertexId a, VertexId b, Edge e) {
    if (a == b) return true;
    Cut c = cut_of(e);
    if (!c.fwd && !c.rev) return true;
    auto in_dv = [&](VertexId t) {
      ++last_probes;
      return c.fwd && eng_.fwd.dom.is_ancestor(e.y, t);
    };
    auto in_dru = [&](VertexId t) {
      ++last_probes;
      return c.rev && eng_.rev.dom.is_ancestor(e.x, t);
    };
    bool av = c.fwd && in_dv(a), bv = c.fwd && in_dv(b);
    if (av != bv) return false;
    if (av) {
      int rep = fx_.representative(eng_.fwd, a, eng_.fwd.dec.level[e.y], last_probes);
      ++last_probes;
      return fx_.hat_ancestor(rep, b);
    }
    bool ar = c.rev && in_dru(a), br = c.rev && in_dru(b);
    if (ar != br) return false;
    if (ar) {
      int rep = rx_.representative(eng_.rev, a, eng_.rev.dec.level[e.x], last_probes);
      ++last_probes;
      return rx_.hat_ancestor(rep, b);
    }
    return true;
  }

  // Deepest common Ĥ-chain ancestor of a and b on one side; -1 if none.
  int hat_nca(const FlowSide& side, SideIndex& ix, VertexId a, VertexId b) {
    const auto& ca = ix.chain_of(side, side.dec.canonical[a]);
    const auto& cb = ix.chain_of(side, side.dec.canonical[b]);
    int z = -1;
    auto ia = ca.rbegin();
    auto ib = cb.rbegin();
    while (ia != ca.rend() && ib != cb.rend() && *ia == *ib) {
      z = *ia;
      ++ia;
      ++ib;
    }
    return z;
  }

  // Bridges of one orientation separating a from b.
  void side_sep(const FlowSide& side, SideIndex& ix, VertexId a, VertexId b,
                bool reverse, std::vector<Edge>& res) {
    const auto& dom = side.dom;
    auto emit = [&](VertexId q) {
      res.push_back(reverse ? Edge{q, dom.parent[q]} : Edge{dom.parent[q], q});
    };
    int z = hat_nca(side, ix, a, b);
    int zl = z == -1 ? -1 : side.dec.level[z];
    for (VertexId q : dom.bridge_heads_above(a)) {
      if (dom.is_ancestor(q, b)) {
        // Common head: separates unless both fall into one family of D(q).
        if (side.dec.level[q] > zl) emit(q);
      } else {
        emit(q);
      }
    }
    for (VertexId q : dom.bridge_heads_above(b))
      if (!dom.is_ancestor(q, a)) emit(q);
  }
};

}  // namespace incsc
