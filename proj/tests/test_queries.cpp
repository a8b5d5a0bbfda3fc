#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "incsc/loop_nesting.hpp"
#include "incsc/oracle.hpp"
#include "incsc/queries.hpp"
#include "test_util.hpp"

using namespace incsc;
namespace tu = incsc::testutil;

namespace {

using Comps = std::vector<std::vector<VertexId>>;

Comps normalize(Comps comps) {
  for (auto& c : comps) std::sort(c.begin(), c.end());
  std::sort(comps.begin(), comps.end());
  return comps;
}

int probe_budget(int n) {
  return static_cast<int>(std::ceil(std::log2(std::max(2, n)))) + 8;
}

void check_edge_queries(const Digraph& g, QueryEngine& q) {
  const int n = g.vertex_count();
  for (const Edge& e : g.edge_log()) {
    auto ref = normalize(oracle_failure_edge(g, e));
    INFO("edge " << e.x << "->" << e.y);
    REQUIRE(normalize(q.edge_list(e)) == ref);
    REQUIRE(q.edge_scc_count(e) == static_cast<int>(ref.size()));
    size_t mx = 0, mn = n + 1;
    for (const auto& c : ref) {
      mx = std::max(mx, c.size());
      mn = std::min(mn, c.size());
    }
    REQUIRE(q.edge_max(e) == static_cast<int>(mx));
    REQUIRE(q.edge_min(e) == static_cast<int>(mn));
    // Connectivity for all pairs, with probe budget.
    std::vector<int> comp_of(n, -1);
    for (size_t i = 0; i < ref.size(); ++i)
      for (VertexId v : ref[i]) comp_of[v] = static_cast<int>(i);
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = 0; b < n; ++b) {
        INFO("conn " << a << "," << b);
        bool want = a == b || (comp_of[a] != -1 && comp_of[a] == comp_of[b]);
        REQUIRE(q.edge_conn(a, b, e) == want);
        REQUIRE(q.last_probes <= probe_budget(n));
      }
  }
}

void check_vertex_queries(const Digraph& g, QueryEngine& q) {
  const int n = g.vertex_count();
  for (VertexId v = 0; v < n; ++v) {
    auto ref = normalize(oracle_failure_vertex(g, v));
    INFO("vertex " << v);
    REQUIRE(normalize(q.vert_list(v)) == ref);
    REQUIRE(q.vert_scc_count(v) == static_cast<int>(ref.size()));
    size_t mx = 0, mn = n + 1;
    for (const auto& c : ref) {
      mx = std::max(mx, c.size());
      mn = std::min(mn, c.size());
    }
    REQUIRE(q.vert_max(v) == static_cast<int>(mx));
    REQUIRE(q.vert_min(v) == static_cast<int>(mn));
    std::vector<int> comp_of(n, -1);
    for (size_t i = 0; i < ref.size(); ++i)
      for (VertexId w : ref[i]) comp_of[w] = static_cast<int>(i);
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = 0; b < n; ++b) {
        INFO("conn " << a << "," << b);
        bool want = a == b || (comp_of[a] != -1 && comp_of[a] == comp_of[b] &&
                               a != v && b != v);
        REQUIRE(q.vert_conn(a, b, v) == want);
        REQUIRE(q.last_probes <= probe_budget(n));
      }
  }
}

void check_separators(const Digraph& g, QueryEngine& q) {
  const int n = g.vertex_count();
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) {
      std::vector<Edge> want_e;
      for (const Edge& e : g.edge_log()) {
        auto sets = oracle_detail::scc_sets(g, e, std::nullopt);
        if (!oracle_detail::same_scc(sets, a, b)) want_e.push_back(e);
      }
      std::sort(want_e.begin(), want_e.end());
      INFO("pair " << a << "," << b);
      REQUIRE(q.sep_edges(a, b) == want_e);
      std::vector<VertexId> want_v;
      for (VertexId x = 0; x < n; ++x) {
        if (x == a || x == b) continue;
        auto sets = oracle_detail::scc_sets(g, std::nullopt, x);
        if (!oracle_detail::same_scc(sets, a, b)) want_v.push_back(x);
      }
      REQUIRE(q.sep_verts(a, b) == want_v);
    }
}

}  // namespace

TEST_CASE("edge failure queries on fixed graphs") {
  auto g = tu::g3();
  Engine eng(5, 0, g.edge_log(), true);
  QueryEngine q(eng);
  Edge e{1, 3};
  CHECK(q.edge_scc_count(e) == 3);
  CHECK(q.edge_max(e) == 3);
  CHECK(q.edge_min(e) == 1);
  CHECK(q.edge_list(e) == Comps{{0, 1, 2}, {3}, {4}});
  CHECK(q.edge_conn(0, 2, e));
  CHECK_FALSE(q.edge_conn(3, 4, e));
  CHECK(q.edge_conn(4, 4, e));
  CHECK(q.sep_edges(0, 2) == std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
}

TEST_CASE("vertex failure queries on fixed graphs") {
  {
    auto g = tu::g3();
    Engine eng(5, 0, g.edge_log(), true);
    QueryEngine q(eng);
    CHECK(q.vert_scc_count(1) == 4);
    CHECK(q.vert_max(1) == 1);
    CHECK(q.vert_min(1) == 1);
    CHECK(q.vert_list(1) == Comps{{0}, {2}, {3}, {4}});
    CHECK(q.sep_verts(0, 2) == std::vector<VertexId>{1});
  }
  {
    auto g = tu::bidi_triangle();
    Engine eng(3, 0, g.edge_log(), true);
    QueryEngine q(eng);
    for (VertexId v = 0; v < 3; ++v) CHECK(q.vert_scc_count(v) == 1);
  }
}

TEST_CASE("non-strong-bridge edge behaves as intact graph") {
  auto g = tu::bidi_triangle();
  Engine eng(3, 0, g.edge_log(), true);
  QueryEngine q(eng);
  Edge e{0, 1};  // not a strong bridge of the bidirected triangle
  CHECK(q.edge_scc_count(e) == 1);
  CHECK(q.edge_max(e) == 3);
  CHECK(q.edge_conn(0, 2, e));
  CHECK(q.edge_list(e) == Comps{{0, 1, 2}});
}

TEST_CASE("all failure queries match the oracle over random runs") {
  for (unsigned long long seed = 0; seed < 25; ++seed) {
    int n = 3 + static_cast<int>(seed % 8);
    auto g = tu::seeded_cycle(n);
    Engine eng(n, 0, g.edge_log(), true);
    QueryEngine q(eng);
    tu::RandomEdges edges(n, seed * 41 + 9);
    for (int step = 0; step < 10; ++step) {
      INFO("seed " << seed << " step " << step);
      check_edge_queries(g, q);
      check_vertex_queries(g, q);
      check_separators(g, q);
      Edge e = edges.next();
      if (g.insert_edge(e.x, e.y)) eng.insert(e.x, e.y);
    }
  }
}

TEST_CASE("hat families coincide with static loop nesting families") {
  // At each strong bridge (u,v) of the forward flow graph, the Ĥ families of
  // D(v) equal the H families of a statically rebuilt loop nesting forest.
  for (unsigned long long seed = 700; seed < 720; ++seed) {
    int n = 4 + static_cast<int>(seed % 7);
    auto g = tu::seeded_cycle(n);
    tu::RandomEdges edges(n, seed);
    for (int i = 0; i < static_cast<int>(seed % 10); ++i) {
      Edge e = edges.next();
      g.insert_edge(e.x, e.y);
    }
    Engine eng(n, 0, g.edge_log(), false);
    QueryEngine q(eng);
    auto lf = build_loop_forest(FlowView{&g, false}, 0);
    const auto& dom = eng.fwd.dom;
    for (VertexId v = 0; v < n; ++v) {
      if (!dom.bridge_head[v]) continue;
      // H families: group members of D(v) by the highest H-ancestor in D(v).
      std::map<VertexId, std::set<VertexId>> h_fam;
      for (VertexId t = 0; t < n; ++t) {
        if (!dom.is_ancestor(v, t)) continue;
        VertexId w = t;
        while (lf.h[w] != -1 && dom.is_ancestor(v, lf.h[w])) w = lf.h[w];
        h_fam[w].insert(t);
      }
      std::set<std::set<VertexId>> want;
      for (auto& [w, s] : h_fam) want.insert(s);
      std::set<std::set<VertexId>> got;
      Edge e{dom.parent[v], v};
      for (auto& comp : q.edge_list(e)) {
        if (!dom.is_ancestor(v, comp.front())) continue;
        got.insert(std::set<VertexId>(comp.begin(), comp.end()));
      }
      INFO("bridge head " << v);
      REQUIRE(got == want);
    }
  }
}
