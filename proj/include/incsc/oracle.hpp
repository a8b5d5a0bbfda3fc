#pragma once

// Brute-force, definition-level reference implementations.  Used only by
// tests and `--oracle` runs; deliberately independent of the production
// algorithms (they carry their own traversal / SCC code).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "incsc/digraph.hpp"

namespace incsc {
namespace oracle_detail {

// Reachability by plain BFS, avoiding at most one edge and one vertex.
inline std::vector<char> reach_mask(const Digraph& g, VertexId s,
                                    std::optional<Edge> banned_edge = std::nullopt,
                                    std::optional<VertexId> banned_vertex = std::nullopt) {
  std::vector<char> seen(g.vertex_count(), 0);
  if (banned_vertex && *banned_vertex == s) return seen;
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
  return seen;
}

inline std::vector<char> reach_mask_reverse(const Digraph& g, VertexId s,
                                            std::optional<Edge> banned_edge = std::nullopt,
                                            std::optional<VertexId> banned_vertex = std::nullopt) {
  std::vector<char> seen(g.vertex_count(), 0);
  if (banned_vertex && *banned_vertex == s) return seen;
  std::vector<VertexId> queue{s};
  seen[s] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    VertexId v = queue[qi];
    for (VertexId w : g.in(v)) {
      if (banned_vertex && w == *banned_vertex) continue;
      if (banned_edge && banned_edge->x == w && banned_edge->y == v) continue;
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

// SCCs by pairwise mutual reachability, optionally with one failed element.
// Vertices excluded by the failure (the banned vertex) belong to no set.
inline std::vector<std::vector<VertexId>> scc_sets(
    const Digraph& g, std::optional<Edge> banned_edge = std::nullopt,
    std::optional<VertexId> banned_vertex = std::nullopt) {
  const int n = g.vertex_count();
  std::vector<std::vector<char>> fwd(n);
  for (VertexId v = 0; v < n; ++v) {
    if (banned_vertex && *banned_vertex == v) continue;
    fwd[v] = reach_mask(g, v, banned_edge, banned_vertex);
  }
  std::vector<char> assigned(n, 0);
  std::vector<std::vector<VertexId>> sets;
  for (VertexId v = 0; v < n; ++v) {
    if (assigned[v] || (banned_vertex && *banned_vertex == v)) continue;
    std::vector<VertexId> members;
    for (VertexId w = v; w < n; ++w) {
      if (assigned[w] || (banned_vertex && *banned_vertex == w)) continue;
      if (fwd[v][w] && fwd[w][v]) {
        members.push_back(w);
        assigned[w] = 1;
      }
    }
    sets.push_back(std::move(members));
  }
  return sets;
}

inline bool same_scc(const std::vector<std::vector<VertexId>>& sets, VertexId u, VertexId v) {
  for (const auto& s : sets)
    if (std::binary_search(s.begin(), s.end(), u))
      return std::binary_search(s.begin(), s.end(), v);
  return false;
}

}  // namespace oracle_detail

struct OracleDominators {
  std::vector<int> parent;      // d(v); -1 for s and unreachable vertices
  std::vector<char> in_tree;    // reachable from s
  std::vector<int> depth;       // -1 if unreachable
};

// u dominates w iff w is unreachable from s when u is banned.
inline OracleDominators oracle_dominators(const Digraph& g, VertexId s) {
  const int n = g.vertex_count();
  OracleDominators res;
  res.parent.assign(n, -1);
  res.depth.assign(n, -1);
  res.in_tree = oracle_detail::reach_mask(g, s);
  // dom_sets[w] = proper dominators of w (excluding w itself).
  std::vector<std::vector<VertexId>> dom_sets(n);
  for (VertexId w = 0; w < n; ++w) {
    if (!res.in_tree[w] || w == s) continue;
    dom_sets[w].push_back(s);
  }
  for (VertexId u = 0; u < n; ++u) {
    if (!res.in_tree[u] || u == s) continue;
    auto mask = oracle_detail::reach_mask(g, s, std::nullopt, u);
    for (VertexId w = 0; w < n; ++w)
      if (res.in_tree[w] && !mask[w] && w != u) dom_sets[w].push_back(u);
  }
  // Immediate dominator = the proper dominator dominated by all others,
  // i.e. the one with the largest dominator set.
  for (VertexId w = 0; w < n; ++w) {
    if (!res.in_tree[w] || w == s) continue;
    VertexId best = s;
    size_t best_size = 0;
    for (VertexId u : dom_sets[w]) {
      size_t sz = (u == s) ? 1 : dom_sets[u].size() + 1;
      if (sz > best_size) {
        best_size = sz;
        best = u;
      }
    }
    res.parent[w] = best;
  }
  res.depth[s] = 0;
  // Depths by repeated relaxation (n is tiny in oracle usage).
  for (int round = 0; round < n; ++round)
    for (VertexId w = 0; w < n; ++w)
      if (res.in_tree[w] && w != s && res.depth[res.parent[w]] >= 0)
        res.depth[w] = res.depth[res.parent[w]] + 1;
  return res;
}

// (u,v) is a bridge of G_s iff v becomes unreachable from s without it.
inline std::set<Edge> oracle_bridges(const Digraph& g, VertexId s) {
  std::set<Edge> bridges;
  auto base = oracle_detail::reach_mask(g, s);
  for (const Edge& e : g.edge_log()) {
    if (!base[e.y]) continue;
    auto mask = oracle_detail::reach_mask(g, s, e);
    if (!mask[e.y]) bridges.insert(e);
  }
  return bridges;
}

struct OracleDecomposition {
  std::vector<int> root;       // r_v; -1 if unreachable
  std::vector<int> level;      // -1 if unreachable
  std::vector<int> canonical;  // c_v; -1 if unreachable
  std::map<VertexId, std::vector<VertexId>> components;  // canonical -> members
};

inline OracleDecomposition oracle_decomposition(const Digraph& g, VertexId s) {
  const int n = g.vertex_count();
  auto dom = oracle_dominators(g, s);
  auto bridges = oracle_bridges(g, s);
  OracleDecomposition dec;
  dec.root.assign(n, -1);
  dec.level.assign(n, -1);
  dec.canonical.assign(n, -1);
  // Top-down passes (order by depth).
  std::vector<VertexId> by_depth;
  for (VertexId v = 0; v < n; ++v)
    if (dom.in_tree[v]) by_depth.push_back(v);
  std::sort(by_depth.begin(), by_depth.end(),
            [&](VertexId a, VertexId b) { return dom.depth[a] < dom.depth[b]; });
  for (VertexId v : by_depth) {
    if (v == s) {
      dec.root[v] = s;
      dec.level[v] = 0;
    } else if (bridges.count(Edge{dom.parent[v], v})) {
      dec.root[v] = v;
      dec.level[v] = dec.level[dom.parent[v]] + 1;
    } else {
      dec.root[v] = dec.root[dom.parent[v]];
      dec.level[v] = dec.level[dom.parent[v]];
    }
  }
  // D(r) membership: u ∈ D(r) iff r dominates u (r on every s→u path).
  auto dominated_by = [&](VertexId r) {
    std::vector<char> in(n, 0);
    if (r == s) {
      in = dom.in_tree;
    } else {
      auto mask = oracle_detail::reach_mask(g, s, std::nullopt, r);
      for (VertexId u = 0; u < n; ++u)
        if (dom.in_tree[u] && !mask[u]) in[u] = 1;
      in[r] = 1;
    }
    return in;
  };
  // Auxiliary components per decomposition tree: SCCs of G[D(r)] ∩ tree(r).
  std::set<VertexId> roots;
  for (VertexId v : by_depth) roots.insert(dec.root[v]);
  for (VertexId r : roots) {
    auto in_sub = dominated_by(r);
    // SCCs of the induced subgraph by pairwise reachability inside it.
    std::vector<std::vector<char>> fwd(n);
    for (VertexId v = 0; v < n; ++v) {
      if (!in_sub[v]) continue;
      // BFS restricted to the subgraph.
      std::vector<char> seen(n, 0);
      std::vector<VertexId> queue{v};
      seen[v] = 1;
      for (size_t qi = 0; qi < queue.size(); ++qi)
        for (VertexId w : g.out(queue[qi]))
          if (in_sub[w] && !seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
      fwd[v] = std::move(seen);
    }
    for (VertexId v = 0; v < n; ++v) {
      if (!in_sub[v] || dec.root[v] != r || dec.canonical[v] != -1) continue;
      std::vector<VertexId> members;
      for (VertexId w = v; w < n; ++w)
        if (in_sub[w] && dec.root[w] == r && fwd[v][w] && fwd[w][v]) members.push_back(w);
      for (VertexId w : members) dec.canonical[w] = v;
      dec.components[v] = std::move(members);
    }
  }
  return dec;
}

// Hyperloop parents: ℓ(v) for canonical v is the deepest-in-D canonical
// u ∉ D(r_v) such that u and v lie in one SCC of G[D(r_u)] (for u in the
// root tree this means one plain SCC of the reachable graph).
inline std::map<VertexId, VertexId> oracle_hyperloop(const Digraph& g, VertexId s) {
  const int n = g.vertex_count();
  auto dom = oracle_dominators(g, s);
  auto dec = oracle_decomposition(g, s);
  auto in_subtree = [&](VertexId r, VertexId u) {
    // u ∈ D(r): walk parent chain.
    while (u != -1) {
      if (u == r) return true;
      u = dom.parent[u];
    }
    return false;
  };
  std::map<VertexId, VertexId> ell;
  for (const auto& [v, members] : dec.components) {
    VertexId best = -1;
    int best_size = 0;
    for (const auto& [u, umembers] : dec.components) {
      if (u == v || in_subtree(dec.root[v], u)) continue;
      // Same (virtual) component test inside G[D(r_u)].
      VertexId ru = dec.root[u];
      std::vector<char> in_sub(n, 0);
      if (ru == s) {
        in_sub = dom.in_tree;
      } else {
        auto mask = oracle_detail::reach_mask(g, s, std::nullopt, ru);
        for (VertexId w = 0; w < n; ++w)
          if (dom.in_tree[w] && !mask[w]) in_sub[w] = 1;
        in_sub[ru] = 1;
      }
      if (!in_sub[v]) continue;
      // v and u mutually reachable within in_sub?
      auto limited_reach = [&](VertexId from, VertexId to) {
        std::vector<char> seen(n, 0);
        std::vector<VertexId> queue{from};
        seen[from] = 1;
        for (size_t qi = 0; qi < queue.size(); ++qi)
          for (VertexId w : g.out(queue[qi]))
            if (in_sub[w] && !seen[w]) {
              seen[w] = 1;
              queue.push_back(w);
            }
        return static_cast<bool>(seen[to]);
      };
      if (limited_reach(v, u) && limited_reach(u, v)) {
        // Size of the hyperloop headed by u (its SCC inside G[D(r_u)]).
        // Hyperloops containing v are nested, so the innermost one — the
        // parent in L — is the one of minimum size.  (Dominator depth alone
        // cannot break ties: distinct candidate heads may share a depth.)
        int size = 0;
        for (VertexId w = 0; w < n; ++w)
          if (in_sub[w] && limited_reach(u, w) && limited_reach(w, u)) ++size;
        if (best == -1 || size < best_size ||
            (size == best_size && dom.depth[u] > dom.depth[best])) {
          best = u;
          best_size = size;
        }
      }
    }
    if (best != -1) ell[v] = best;
  }
  return ell;
}

// SCCs of G minus one edge or one vertex.
inline std::vector<std::vector<VertexId>> oracle_failure_edge(const Digraph& g, Edge e) {
  return oracle_detail::scc_sets(g, e, std::nullopt);
}
inline std::vector<std::vector<VertexId>> oracle_failure_vertex(const Digraph& g, VertexId v) {
  return oracle_detail::scc_sets(g, std::nullopt, v);
}

namespace oracle_detail {

// Unit-capacity max flow (value capped at `need`) via BFS augmentation on an
// explicit arc list.  Used only for the vertex-disjoint-path oracle.
struct FlowNet {
  struct Arc {
    int to, cap;
    size_t rev;
  };
  std::vector<std::vector<Arc>> arcs;
  explicit FlowNet(int n) : arcs(n) {}
  void add(int a, int b, int cap) {
    arcs[a].push_back({b, cap, arcs[b].size()});
    arcs[b].push_back({a, 0, arcs[a].size() - 1});
  }
  int max_flow(int s, int t, int need) {
    int flow = 0;
    while (flow < need) {
      std::vector<int> prev_node(arcs.size(), -1);
      std::vector<size_t> prev_arc(arcs.size());
      std::vector<int> queue{s};
      prev_node[s] = s;
      for (size_t qi = 0; qi < queue.size() && prev_node[t] == -1; ++qi) {
        int v = queue[qi];
        for (size_t i = 0; i < arcs[v].size(); ++i) {
          const Arc& a = arcs[v][i];
          if (a.cap > 0 && prev_node[a.to] == -1) {
            prev_node[a.to] = v;
            prev_arc[a.to] = i;
            queue.push_back(a.to);
          }
        }
      }
      if (prev_node[t] == -1) break;
      for (int v = t; v != s; v = prev_node[v]) {
        Arc& a = arcs[prev_node[v]][prev_arc[v]];
        a.cap -= 1;
        arcs[v][a.rev].cap += 1;
      }
      ++flow;
    }
    return flow;
  }
};

// Number of internally vertex-disjoint u→v paths, capped at 2.
inline int disjoint_paths(const Digraph& g, VertexId u, VertexId v) {
  const int n = g.vertex_count();
  // Split w into w_in = w, w_out = w + n; internal capacity 1 except endpoints.
  FlowNet net(2 * n);
  for (VertexId w = 0; w < n; ++w) net.add(w, w + n, (w == u || w == v) ? 4 : 1);
  for (const Edge& e : g.edge_log()) net.add(e.x + n, e.y, 1);
  return net.max_flow(u + n, v, 2);
}

}  // namespace oracle_detail

// u,v are 2-vertex-connected: two internally vertex-disjoint paths u→v and v→u.
inline bool oracle_2vcc_pair(const Digraph& g, VertexId u, VertexId v) {
  if (u == v) throw std::invalid_argument("oracle_2vcc_pair: u == v");
  return oracle_detail::disjoint_paths(g, u, v) >= 2 &&
         oracle_detail::disjoint_paths(g, v, u) >= 2;
}

// u,v are vertex-resilient: same SCC of G∖w for every third vertex w.
inline bool oracle_vertex_resilient(const Digraph& g, VertexId u, VertexId v) {
  if (u == v) throw std::invalid_argument("oracle_vertex_resilient: u == v");
  for (VertexId w = 0; w < g.vertex_count(); ++w) {
    if (w == u || w == v) continue;
    auto sets = oracle_detail::scc_sets(g, std::nullopt, w);
    if (!oracle_detail::same_scc(sets, u, v)) return false;
  }
  return true;
}

// u,v are 2-edge-connected: same SCC of G∖e for every edge e.
inline bool oracle_2ecc_pair(const Digraph& g, VertexId u, VertexId v) {
  {
    auto sets = oracle_detail::scc_sets(g);
    if (!oracle_detail::same_scc(sets, u, v)) return false;
  }
  for (const Edge& e : g.edge_log()) {
    auto sets = oracle_detail::scc_sets(g, e, std::nullopt);
    if (!oracle_detail::same_scc(sets, u, v)) return false;
  }
  return true;
}

}  // namespace incsc
