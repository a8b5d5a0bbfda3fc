#pragma once

// Extends the strongly connected machinery to general digraphs: maintains the
// exact SCC partition under insertions, runs one full engine stack per
// nontrivial SCC, and composes global failure answers from per-component ones.
// Merges trigger top-level restarts with the principal-component start rule:
// the new instance keeps the start vertex of the largest merged predecessor
// (ties by minimum start id).

#include <algorithm>
#include <memory>
#include <set>
#include <vector>

#include "incsc/digraph.hpp"
#include "incsc/engine.hpp"
#include "incsc/queries.hpp"
#include "incsc/two_vcc.hpp"

namespace incsc {

struct ComponentInstance {
  std::vector<VertexId> members;  // sorted global ids
  VertexId start = -1;            // global id
  std::unique_ptr<Engine> engine;       // null for singletons
  std::unique_ptr<QueryEngine> queries;  // null for singletons
};

enum class TopEvent { intra_component, merge, inter_component_no_merge, duplicate };

class TopManager {
 public:
  Digraph g;
  bool baseline_mode = false;

  // Instrumentation.
  std::vector<long long> effective_depth;    // per vertex, summed over merges
  std::set<Edge> strong_bridges_ever;        // global ids, both orientations' bridges
  long long top_restarts = 0;

  explicit TopManager(int n) : g(n), comp_of_(n), effective_depth(n, 0) {
    comps_.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
      ComponentInstance ci;
      ci.members = {v};
      ci.start = v;
      comps_.push_back(std::move(ci));
      comp_of_[v] = v;
    }
  }

  int vertex_count() const { return g.vertex_count(); }
  int component_count() const {
    int k = 0;
    for (const auto& ci : comps_) k += !ci.members.empty();
    return k;
  }
  int component_of(VertexId v) const { return comp_of_[v]; }
  const ComponentInstance& component(int idx) const { return comps_[idx]; }

  TopEvent top_insert(VertexId x, VertexId y) {
    if (!g.insert_edge(x, y)) return TopEvent::duplicate;
    if (comp_of_[x] == comp_of_[y]) {
      ComponentInstance& ci = comps_[comp_of_[x]];
      ci.engine->baseline_mode = baseline_mode;
      ci.engine->insert(local_id(ci, x), local_id(ci, y));
      record_bridges(ci);
      return TopEvent::intra_component;
    }
    if (!reaches(y, x)) return TopEvent::inter_component_no_merge;
    rebuild_partition();
    return TopEvent::merge;
  }

  // ---- Global failure queries (composition over components) ----

  int edge_scc_count(Edge e) const {
    const ComponentInstance* ci = edge_component(e);
    if (!ci) return component_count();
    return component_count() - 1 + ci->queries->edge_scc_count(local_edge(*ci, e));
  }

  int edge_max(Edge e) const { return edge_agg(e, true); }
  int edge_min(Edge e) const { return edge_agg(e, false); }

  std::vector<std::vector<VertexId>> edge_list(Edge e) const {
    const ComponentInstance* ci = edge_component(e);
    std::vector<std::vector<VertexId>> out;
    for (const auto& other : comps_) {
      if (other.members.empty() || &other == ci) continue;
      out.push_back(other.members);
    }
    if (ci)
      for (auto comp : ci->queries->edge_list(local_edge(*ci, e)))
        out.push_back(to_global(*ci, comp));
    sort_components(out);
    return out;
  }

  bool edge_conn(VertexId a, VertexId b, Edge e) const {
    if (a == b) return true;
    if (comp_of_[a] != comp_of_[b]) return false;
    const ComponentInstance* ci = edge_component(e);
    if (!ci || comp_of_[a] != comp_of_[ci->start])
      return true;  // the failing edge lies outside a,b's SCC
    return ci->queries->edge_conn(local_id(*ci, a), local_id(*ci, b),
                                  local_edge(*ci, e));
  }

  std::vector<Edge> sep_edges(VertexId a, VertexId b) const {
    if (a == b) return {};
    if (comp_of_[a] != comp_of_[b]) {
      auto all = g.edge_log();  // already separated: every edge qualifies
      std::sort(all.begin(), all.end());
      return all;
    }
    const ComponentInstance& ci = comps_[comp_of_[a]];
    if (!ci.engine) return {};
    std::vector<Edge> out;
    for (Edge le : ci.queries->sep_edges(local_id(ci, a), local_id(ci, b)))
      out.push_back(Edge{ci.members[le.x], ci.members[le.y]});
    std::sort(out.begin(), out.end());
    return out;
  }

  int vert_scc_count(VertexId v) const {
    const ComponentInstance& ci = comps_[comp_of_[v]];
    int inner = ci.engine ? ci.queries->vert_scc_count(local_id(ci, v)) : 0;
    return component_count() - 1 + inner;
  }

  int vert_max(VertexId v) const { return vert_agg(v, true); }
  int vert_min(VertexId v) const { return vert_agg(v, false); }

  std::vector<std::vector<VertexId>> vert_list(VertexId v) const {
    const ComponentInstance& ci = comps_[comp_of_[v]];
    std::vector<std::vector<VertexId>> out;
    for (const auto& other : comps_) {
      if (other.members.empty() || &other == &ci) continue;
      out.push_back(other.members);
    }
    if (ci.engine)
      for (auto comp : ci.queries->vert_list(local_id(ci, v)))
        out.push_back(to_global(ci, comp));
    sort_components(out);
    return out;
  }

  bool vert_conn(VertexId a, VertexId b, VertexId v) const {
    if (a == b) return true;
    if (a == v || b == v) return false;
    if (comp_of_[a] != comp_of_[b]) return false;
    if (comp_of_[v] != comp_of_[a]) return true;
    const ComponentInstance& ci = comps_[comp_of_[a]];
    return ci.queries->vert_conn(local_id(ci, a), local_id(ci, b),
                                 local_id(ci, v));
  }

  std::vector<VertexId> sep_verts(VertexId a, VertexId b) const {
    if (a == b) return {};
    if (comp_of_[a] != comp_of_[b]) {
      std::vector<VertexId> out;
      for (VertexId v = 0; v < vertex_count(); ++v)
        if (v != a && v != b) out.push_back(v);
      return out;
    }
    const ComponentInstance& ci = comps_[comp_of_[a]];
    if (!ci.engine) return {};
    std::vector<VertexId> out;
    for (VertexId lv : ci.queries->sep_verts(local_id(ci, a), local_id(ci, b)))
      out.push_back(ci.members[lv]);
    std::sort(out.begin(), out.end());
    return out;
  }

  // 2-vertex-connected components of the whole graph: union over components.
  Blocks two_vcc_blocks() const {
    Blocks out;
    for (const auto& ci : comps_) {
      if (!ci.engine) continue;
      TwoVCC t(*ci.engine, *ci.queries);
      for (auto block : t.two_vcc()) {
        for (auto& v : block) v = ci.members[v];
        out.push_back(std::move(block));
      }
    }
    for (auto& b : out) std::sort(b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  PairAnswer two_vcc_pair(VertexId u, VertexId v) const {
    PairAnswer ans;  // (false, none) for pairs that are not strongly connected
    if (comp_of_[u] != comp_of_[v]) return ans;
    const ComponentInstance& ci = comps_[comp_of_[u]];
    if (!ci.engine) return ans;
    TwoVCC t(*ci.engine, *ci.queries);
    ans = t.pair(local_id(ci, u), local_id(ci, v));
    if (ans.kind == PairAnswer::edge)
      ans.e = Edge{ci.members[ans.e.x], ci.members[ans.e.y]};
    else if (ans.kind == PairAnswer::vertex)
      ans.v = ci.members[ans.v];
    return ans;
  }

 private:
  std::vector<int> comp_of_;
  std::vector<ComponentInstance> comps_;  // empty member lists = retired slots

  static VertexId local_id(const ComponentInstance& ci, VertexId global) {
    auto it = std::lower_bound(ci.members.begin(), ci.members.end(), global);
    return static_cast<VertexId>(it - ci.members.begin());
  }

  static Edge local_edge(const ComponentInstance& ci, Edge e) {
    return Edge{local_id(ci, e.x), local_id(ci, e.y)};
  }

  std::vector<VertexId> to_global(const ComponentInstance& ci,
                                  std::vector<VertexId> comp) const {
    for (auto& v : comp) v = ci.members[v];
    return comp;
  }

  static void sort_components(std::vector<std::vector<VertexId>>& comps) {
    for (auto& c : comps) std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end());
  }

  // Component containing edge e, or null when e crosses components or lies in
  // a singleton (then it is never a strong bridge of any SCC).
  const ComponentInstance* edge_component(Edge e) const {
    if (comp_of_[e.x] != comp_of_[e.y]) return nullptr;
    const ComponentInstance& ci = comps_[comp_of_[e.x]];
    return ci.engine ? &ci : nullptr;
  }

  int edge_agg(Edge e, bool want_max) const {
    const ComponentInstance* ci = edge_component(e);
    int best = -1;
    auto acc = [&](int sz) {
      if (best < 0)
        best = sz;
      else
        best = want_max ? std::max(best, sz) : std::min(best, sz);
    };
    for (const auto& other : comps_) {
      if (other.members.empty() || &other == ci) continue;
      acc(static_cast<int>(other.members.size()));
    }
    if (ci)
      acc(want_max ? ci->queries->edge_max(local_edge(*ci, e))
                   : ci->queries->edge_min(local_edge(*ci, e)));
    return best;
  }

  int vert_agg(VertexId v, bool want_max) const {
    const ComponentInstance& ci = comps_[comp_of_[v]];
    int best = -1;
    auto acc = [&](int sz) {
      if (best < 0)
        best = sz;
      else
        best = want_max ? std::max(best, sz) : std::min(best, sz);
    };
    for (const auto& other : comps_) {
      if (other.members.empty() || &other == &ci) continue;
      acc(static_cast<int>(other.members.size()));
    }
    if (ci.engine) {
      int inner = want_max ? ci.queries->vert_max(local_id(ci, v))
                           : ci.queries->vert_min(local_id(ci, v));
      if (inner > 0) acc(inner);
    }
    return best < 0 ? 0 : best;
  }

  bool reaches(VertexId from, VertexId to) const {
    std::vector<char> seen(vertex_count(), 0);
    std::vector<VertexId> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      if (u == to) return true;
      for (VertexId w : g.out(u))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    return false;
  }

  void rebuild_partition() {
    auto scc = incsc::scc(g).component_id;
    const int n = vertex_count();
    // Group vertices by new SCC id.
    std::vector<std::vector<VertexId>> groups(n);
    for (VertexId v = 0; v < n; ++v) groups[scc[v]].push_back(v);
    for (auto& members : groups) {
      if (members.empty()) continue;
      std::sort(members.begin(), members.end());
      int old = comp_of_[members.front()];
      if (comps_[old].members == members) continue;  // unchanged component
      // Merged: pick the principal predecessor (largest, ties by min start).
      std::set<int> preds;
      for (VertexId v : members) preds.insert(comp_of_[v]);
      int principal = -1;
      for (int p : preds) {
        if (principal == -1 ||
            comps_[p].members.size() > comps_[principal].members.size() ||
            (comps_[p].members.size() == comps_[principal].members.size() &&
             comps_[p].start < comps_[principal].start))
          principal = p;
      }
      ComponentInstance ci;
      ci.members = members;
      ci.start = comps_[principal].start;
      std::vector<Edge> local_edges;
      for (const Edge& e : g.edge_log())
        if (std::binary_search(members.begin(), members.end(), e.x) &&
            std::binary_search(members.begin(), members.end(), e.y))
          local_edges.push_back(local_edge(ci, e));
      ci.engine = std::make_unique<Engine>(static_cast<int>(members.size()),
                                           local_id(ci, ci.start), local_edges,
                                           true);
      ci.engine->baseline_mode = baseline_mode;
      ci.queries = std::make_unique<QueryEngine>(*ci.engine);
      // Effective depth: zero for principal-component vertices, new dominator
      // depth for everyone else.
      const auto& dom = ci.engine->fwd.dom;
      for (VertexId v : members)
        if (comp_of_[v] != principal)
          effective_depth[v] += std::max(0, dom.depth[local_id(ci, v)]);
      // Retire predecessors, install the new instance in the principal slot.
      for (int p : preds) comps_[p] = ComponentInstance{};
      record_bridges(ci);
      int slot = principal;
      comps_[slot] = std::move(ci);
      for (VertexId v : members) comp_of_[v] = slot;
      ++top_restarts;
    }
  }

  void record_bridges(const ComponentInstance& ci) {
    if (!ci.engine) return;
    const auto& fd = ci.engine->fwd.dom;
    const auto& rd = ci.engine->rev.dom;
    for (size_t v = 0; v < ci.members.size(); ++v) {
      if (fd.in_tree[v] && fd.bridge_head[v] && fd.parent[v] != -1)
        strong_bridges_ever.insert(
            Edge{ci.members[fd.parent[v]], ci.members[v]});
      if (rd.in_tree[v] && rd.bridge_head[v] && rd.parent[v] != -1)
        strong_bridges_ever.insert(
            Edge{ci.members[v], ci.members[rd.parent[v]]});
    }
  }
};

}  // namespace incsc
