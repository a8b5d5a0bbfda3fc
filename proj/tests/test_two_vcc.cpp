#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "incsc/oracle.hpp"
#include "incsc/two_vcc.hpp"
#include "test_util.hpp"

using namespace incsc;
namespace tu = incsc::testutil;

namespace {

Blocks norm(Blocks b) {
  for (auto& x : b) std::sort(x.begin(), x.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

// Maximal subsets (size >= 2) whose members are pairwise related.
template <typename Rel>
Blocks oracle_components(int n, Rel rel) {
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = 0; b < n; ++b) r[a][b] = a == b || rel(a, b);
  Blocks out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<VertexId> mem;
    for (VertexId v = 0; v < n; ++v)
      if (mask & (1u << v)) mem.push_back(v);
    if (mem.size() < 2) continue;
    bool clique = true;
    for (size_t i = 0; i < mem.size() && clique; ++i)
      for (size_t j = i + 1; j < mem.size(); ++j)
        if (!r[mem[i]][mem[j]]) {
          clique = false;
          break;
        }
    if (!clique) continue;
    bool maximal = true;
    for (VertexId v = 0; v < n && maximal; ++v) {
      if (mask & (1u << v)) continue;
      bool joins = true;
      for (VertexId m : mem)
        if (!r[v][m]) {
          joins = false;
          break;
        }
      if (joins) maximal = false;
    }
    if (maximal) out.push_back(mem);
  }
  return norm(out);
}

Digraph bidirected(int n, std::initializer_list<std::pair<int, int>> edges) {
  Digraph g(n);
  for (auto [a, b] : edges) {
    g.insert_edge(a, b);
    g.insert_edge(b, a);
  }
  return g;
}

}  // namespace

TEST_CASE("refine operation on explicit blocks") {
  {
    Blocks b{{0, 1, 2}};
    refine_blocks(b, {{0, 1}, {2}}, 3);
    CHECK(b == Blocks{{0, 1}});
  }
  {
    Blocks b{{0, 1, 2}};
    refine_blocks(b, {{1, 2}}, 0);
    CHECK(b == Blocks{{0, 1, 2}});
  }
}

TEST_CASE("two-vertex connectivity on fixed graphs") {
  {
    auto g = bidirected(3, {{0, 1}, {1, 2}, {2, 0}});
    Engine eng(3, 0, g.edge_log(), true);
    QueryEngine q(eng);
    TwoVCC t(eng, q);
    CHECK(norm(t.vertex_resilient()) == Blocks{{0, 1, 2}});
    CHECK(t.strong_bridges().empty());
    CHECK(norm(t.two_vcc()) == Blocks{{0, 1, 2}});
    auto ans = t.pair(0, 1);
    CHECK(ans.ok);
    CHECK(ans.kind == PairAnswer::none);
  }
  {
    auto g = tu::cycle3();
    Engine eng(3, 0, g.edge_log(), true);
    QueryEngine q(eng);
    TwoVCC t(eng, q);
    CHECK(t.two_vcc().empty());
    auto ans = t.pair(0, 2);
    CHECK_FALSE(ans.ok);
    CHECK(ans.kind == PairAnswer::edge);
    CHECK(ans.e == Edge{0, 1});
  }
  {
    // Two bidirected triangles sharing vertex 2.
    auto g = bidirected(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
    Engine eng(5, 0, g.edge_log(), true);
    QueryEngine q(eng);
    TwoVCC t(eng, q);
    CHECK(norm(t.two_vcc()) == Blocks{{0, 1, 2}, {2, 3, 4}});
    auto ans = t.pair(0, 3);
    CHECK_FALSE(ans.ok);
    CHECK(ans.kind == PairAnswer::vertex);
    CHECK(ans.v == 2);
  }
  {
    // Bidirected path: no nontrivial 2VCC, but {0,1} and {1,2} are resilient.
    auto g = bidirected(3, {{0, 1}, {1, 2}});
    Engine eng(3, 0, g.edge_log(), true);
    QueryEngine q(eng);
    TwoVCC t(eng, q);
    CHECK(norm(t.vertex_resilient()) == Blocks{{0, 1}, {1, 2}});
    CHECK(t.two_vcc().empty());
  }
}

TEST_CASE("two-vertex connectivity matches the oracle over random runs") {
  for (unsigned long long seed = 0; seed < 30; ++seed) {
    int n = 3 + static_cast<int>(seed % 7);
    auto g = tu::seeded_cycle(n);
    Engine eng(n, 0, g.edge_log(), true);
    QueryEngine q(eng);
    tu::RandomEdges edges(n, seed * 71 + 5);
    for (int step = 0; step < 8; ++step) {
      INFO("seed " << seed << " step " << step);
      TwoVCC t(eng, q);
      TwoVCC::Trace trace;
      auto vr = norm(t.vertex_resilient(&trace));
      CHECK(blocks_are_forest(trace.initial, n));
      CHECK(blocks_are_forest(trace.after_forward, n));
      CHECK(blocks_are_forest(trace.after_reverse, n));
      REQUIRE(vr == oracle_components(n, [&](VertexId a, VertexId b) {
                return oracle_vertex_resilient(g, a, b);
              }));
      auto cls = t.two_ecc_class();
      for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b) {
          INFO("2ecc pair " << a << "," << b);
          REQUIRE((cls[a] == cls[b]) == oracle_2ecc_pair(g, a, b));
        }
      REQUIRE(norm(t.two_vcc()) ==
              oracle_components(n, [&](VertexId a, VertexId b) {
                return oracle_2vcc_pair(g, a, b);
              }));
      for (VertexId a = 0; a < n; ++a)
        for (VertexId b = 0; b < n; ++b) {
          if (a == b) continue;
          auto ans = t.pair(a, b);
          INFO("pair " << a << "," << b);
          REQUIRE(ans.ok == oracle_2vcc_pair(g, a, b));
          if (ans.kind == PairAnswer::edge) {
            REQUIRE_FALSE(oracle_2ecc_pair(g, a, b));
            auto sets = oracle_detail::scc_sets(g, ans.e, std::nullopt);
            REQUIRE_FALSE(oracle_detail::same_scc(sets, a, b));
          } else if (ans.kind == PairAnswer::vertex) {
            REQUIRE(oracle_2ecc_pair(g, a, b));
            auto sets = oracle_detail::scc_sets(g, std::nullopt, ans.v);
            REQUIRE_FALSE(oracle_detail::same_scc(sets, a, b));
          }
        }
      Edge e = edges.next();
      if (g.insert_edge(e.x, e.y)) eng.insert(e.x, e.y);
    }
  }
}

TEST_CASE("separating vertices lie on the dominator paths of the endpoints") {
  for (unsigned long long seed = 100; seed < 115; ++seed) {
    int n = 4 + static_cast<int>(seed % 6);
    auto g = tu::seeded_cycle(n);
    tu::RandomEdges edges(n, seed);
    for (int i = 0; i < static_cast<int>(seed % 9); ++i) {
      Edge e = edges.next();
      g.insert_edge(e.x, e.y);
    }
    Engine eng(n, 0, g.edge_log(), false);
    const auto& D = eng.fwd.dom;
    const auto& DR = eng.rev.dom;
    auto on_path = [](const DominatorState& dom, VertexId u, VertexId x) {
      for (VertexId w = x; w != -1; w = dom.parent[w])
        if (w == u) return true;
      return false;
    };
    for (VertexId x = 0; x < n; ++x)
      for (VertexId y = x + 1; y < n; ++y)
        for (VertexId u = 0; u < n; ++u) {
          if (u == x || u == y) continue;
          auto sets = oracle_detail::scc_sets(g, std::nullopt, u);
          if (oracle_detail::same_scc(sets, x, y)) continue;
          INFO("sep " << u << " for " << x << "," << y);
          CHECK((on_path(D, u, x) || on_path(D, u, y) || on_path(DR, u, x) ||
                 on_path(DR, u, y)));
        }
  }
}
