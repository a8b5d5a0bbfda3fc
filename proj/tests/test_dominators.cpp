#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "incsc/dominators.hpp"
#include "incsc/oracle.hpp"
#include "test_util.hpp"

using namespace incsc;
namespace tu = incsc::testutil;

namespace {

std::set<Edge> bridge_set(const DominatorState& st, const FlowView& view) {
  std::set<Edge> out;
  for (VertexId v : st.preorder)
    if (v != st.start && st.bridge_head[v]) {
      if (view.reversed)
        out.insert(Edge{v, st.parent[v]});
      else
        out.insert(Edge{st.parent[v], v});
    }
  return out;
}

// Oracle comparison for the forward flow graph.
void check_against_oracle(const Digraph& g, const DominatorState& st, VertexId s) {
  auto dom = oracle_dominators(g, s);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    REQUIRE(static_cast<bool>(st.in_tree[v]) == static_cast<bool>(dom.in_tree[v]));
    if (dom.in_tree[v]) {
      REQUIRE(st.parent[v] == dom.parent[v]);
      REQUIRE(st.depth[v] == dom.depth[v]);
    }
  }
  FlowView view{&g, false};
  REQUIRE(bridge_set(st, view) == oracle_bridges(g, s));
}

}  // namespace

TEST_CASE("build_dominators on fixed graphs") {
  {
    auto g = tu::cycle3();
    DominatorState st;
    st.build(FlowView{&g, false}, 0);
    CHECK(st.parent[1] == 0);
    CHECK(st.parent[2] == 1);
    CHECK(bridge_set(st, FlowView{&g, false}) == std::set<Edge>{{0, 1}, {1, 2}});
  }
  {
    auto g = tu::g3();
    DominatorState st;
    st.build(FlowView{&g, false}, 0);
    CHECK(st.parent[1] == 0);
    CHECK(st.parent[2] == 1);
    CHECK(st.parent[3] == 1);
    CHECK(st.parent[4] == 3);
    CHECK(bridge_set(st, FlowView{&g, false}) ==
          std::set<Edge>{{0, 1}, {1, 2}, {1, 3}, {3, 4}});
    CHECK(st.nca(2, 4) == 1);
    CHECK(st.nca(4, 4) == 4);
    CHECK(st.nca(0, 3) == 0);
  }
  {
    Digraph g(1);
    DominatorState st;
    st.build(FlowView{&g, false}, 0);
    CHECK(st.in_tree[0]);
    CHECK(st.depth[0] == 0);
  }
}

TEST_CASE("reverse flow graph dominators") {
  auto g = tu::g3();
  DominatorState st;
  st.build(FlowView{&g, true}, 0);
  // In G3 reversed from 0: paths follow reversed edges 1→0, 2→1, ...
  auto dom_sets = bridge_set(st, FlowView{&g, true});
  // Verify against the oracle on an explicitly reversed graph.
  Digraph rev(g.vertex_count());
  for (const Edge& e : g.edge_log()) rev.insert_edge(e.y, e.x);
  auto expect = oracle_bridges(rev, 0);
  std::set<Edge> expect_orig;
  for (const Edge& e : expect) expect_orig.insert(Edge{e.y, e.x});
  CHECK(dom_sets == expect_orig);
  auto dom = oracle_dominators(rev, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (dom.in_tree[v]) CHECK(st.parent[v] == dom.parent[v]);
}

TEST_CASE("insert_and_update fixed examples") {
  {
    // G4 + (1,3): affected={3}, scanned={3}, nca=1.
    auto g = tu::g4();
    DominatorState st;
    st.build(FlowView{&g, false}, 0);
    REQUIRE(g.insert_edge(1, 3));
    auto rep = st.insert_and_update(FlowView{&g, false}, 1, 3);
    CHECK(rep.affected == std::vector<VertexId>{3});
    CHECK(rep.scanned == std::vector<VertexId>{3});
    CHECK(rep.nca == 1);
    CHECK(st.parent[3] == 1);
    CHECK(rep.locally_canceled.empty());
    check_against_oracle(g, st, 0);
  }
  {
    // G3 + (0,3): affected={3}, scanned={3,4}, (0,1) locally canceled.
    auto g = tu::g3();
    DominatorState st;
    st.build(FlowView{&g, false}, 0);
    REQUIRE(g.insert_edge(0, 3));
    auto rep = st.insert_and_update(FlowView{&g, false}, 0, 3);
    CHECK(rep.affected == std::vector<VertexId>{3});
    std::set<VertexId> scanned(rep.scanned.begin(), rep.scanned.end());
    CHECK(scanned == std::set<VertexId>{3, 4});
    CHECK(rep.locally_canceled == std::vector<Edge>{{0, 1}});
    check_against_oracle(g, st, 0);
  }
  {
    // G5 + (3,2): (1,2) locally canceled, no affected vertices.
    auto g = tu::g5();
    DominatorState st;
    st.build(FlowView{&g, false}, 0);
    REQUIRE(g.insert_edge(3, 2));
    auto rep = st.insert_and_update(FlowView{&g, false}, 3, 2);
    CHECK(rep.affected.empty());
    CHECK(rep.locally_canceled == std::vector<Edge>{{1, 2}});
    check_against_oracle(g, st, 0);
  }
}

TEST_CASE("incremental dominators match oracle on random strongly connected runs") {
  for (unsigned long long seed = 1; seed <= 30; ++seed) {
    int n = 3 + static_cast<int>(seed % 8);
    auto g = tu::seeded_cycle(n);
    DominatorState fwd, rev;
    fwd.build(FlowView{&g, false}, 0);
    rev.build(FlowView{&g, true}, 0);
    tu::RandomEdges edges(n, seed * 77);
    std::vector<int> prev_depth_fwd = fwd.depth;
    for (int step = 0; step < 25; ++step) {
      Edge e = edges.next();
      if (!g.insert_edge(e.x, e.y)) continue;
      auto rep = fwd.insert_and_update(FlowView{&g, false}, e.x, e.y);
      rev.insert_and_update(FlowView{&g, true}, e.y, e.x);
      check_against_oracle(g, fwd, 0);
      // Reverse side against explicitly reversed graph.
      Digraph rg(n);
      for (const Edge& le : g.edge_log()) rg.insert_edge(le.y, le.x);
      auto dom = oracle_dominators(rg, 0);
      for (VertexId v = 0; v < n; ++v)
        if (dom.in_tree[v]) REQUIRE(rev.parent[v] == dom.parent[v]);
      // Report invariants: affected ⊆ scanned, reattached to nca, depths monotone.
      std::set<VertexId> scanned(rep.scanned.begin(), rep.scanned.end());
      for (VertexId a : rep.affected) {
        CHECK(scanned.count(a) == 1);
        CHECK(fwd.parent[a] == rep.nca);
        CHECK(fwd.depth[a] < prev_depth_fwd[a]);
      }
      for (VertexId v = 0; v < n; ++v) CHECK(fwd.depth[v] <= prev_depth_fwd[v]);
      prev_depth_fwd = fwd.depth;
    }
  }
}

TEST_CASE("lemma: outside nca subtree nothing changes") {
  for (unsigned long long seed = 100; seed < 112; ++seed) {
    int n = 4 + static_cast<int>(seed % 6);
    auto g = tu::seeded_cycle(n);
    DominatorState st;
    st.build(FlowView{&g, false}, 0);
    tu::RandomEdges edges(n, seed);
    for (int step = 0; step < 15; ++step) {
      Edge e = edges.next();
      DominatorState before = st;
      if (!g.insert_edge(e.x, e.y)) continue;
      auto rep = st.insert_and_update(FlowView{&g, false}, e.x, e.y);
      for (VertexId u = 0; u < n; ++u) {
        if (st.is_ancestor(rep.nca, u) && u != rep.nca) continue;
        CHECK(st.parent[u] == before.parent[u]);
        CHECK(st.depth[u] == before.depth[u]);
        // Old subtree membership is preserved outside the nca subtree.
        for (VertexId w = 0; w < n; ++w)
          CHECK(st.is_ancestor(u, w) == before.is_ancestor(u, w));
        if (u != 0) CHECK(st.bridge_head[u] == before.bridge_head[u]);
      }
    }
  }
}

TEST_CASE("incremental equals from-scratch at moderate scale") {
  const int n = 100;
  auto g = tu::seeded_cycle(n);
  DominatorState fwd, rev;
  fwd.build(FlowView{&g, false}, 0);
  rev.build(FlowView{&g, true}, 0);
  tu::RandomEdges edges(n, 4242);
  for (int step = 0; step < 400; ++step) {
    Edge e = edges.next();
    if (!g.insert_edge(e.x, e.y)) continue;
    fwd.insert_and_update(FlowView{&g, false}, e.x, e.y);
    rev.insert_and_update(FlowView{&g, true}, e.y, e.x);
    DominatorState ref_f, ref_r;
    ref_f.build(FlowView{&g, false}, 0);
    ref_r.build(FlowView{&g, true}, 0);
    REQUIRE(fwd.parent == ref_f.parent);
    REQUIRE(fwd.bridge_head == ref_f.bridge_head);
    REQUIRE(rev.parent == ref_r.parent);
    REQUIRE(rev.bridge_head == ref_r.bridge_head);
  }
}
