#pragma once

// Shared fixtures for the test suite: the small named graphs used throughout
// and seeded random workload helpers.

#include <random>
#include <vector>

#include "incsc/digraph.hpp"

namespace incsc::testutil {

inline Digraph cycle3() {
  Digraph g(3);
  g.insert_edge(0, 1);
  g.insert_edge(1, 2);
  g.insert_edge(2, 0);
  return g;
}

inline Digraph g3() {  // {0→1,1→2,2→0,1→3,3→4,4→1}
  Digraph g(5);
  g.insert_edge(0, 1);
  g.insert_edge(1, 2);
  g.insert_edge(2, 0);
  g.insert_edge(1, 3);
  g.insert_edge(3, 4);
  g.insert_edge(4, 1);
  return g;
}

inline Digraph g4() {  // {0→1,1→2,2→3,3→0,3→1}
  Digraph g(4);
  g.insert_edge(0, 1);
  g.insert_edge(1, 2);
  g.insert_edge(2, 3);
  g.insert_edge(3, 0);
  g.insert_edge(3, 1);
  return g;
}

inline Digraph g5() {  // {0→1,1→2,1→3,2→0,3→0}
  Digraph g(4);
  g.insert_edge(0, 1);
  g.insert_edge(1, 2);
  g.insert_edge(1, 3);
  g.insert_edge(2, 0);
  g.insert_edge(3, 0);
  return g;
}

inline Digraph bidi_triangle() {
  Digraph g(3);
  for (VertexId a = 0; a < 3; ++a)
    for (VertexId b = 0; b < 3; ++b)
      if (a != b) g.insert_edge(a, b);
  return g;
}

// Seeds a Hamiltonian cycle 0→1→…→n-1→0 so every vertex is strongly
// connected from the start, then yields random extra edges.
inline Digraph seeded_cycle(int n) {
  Digraph g(n);
  for (VertexId v = 0; v < n; ++v) g.insert_edge(v, (v + 1) % n);
  return g;
}

struct RandomEdges {
  std::mt19937_64 rng;
  int n;
  explicit RandomEdges(int n_, unsigned long long seed) : rng(seed), n(n_) {}
  Edge next() {
    while (true) {
      VertexId x = static_cast<VertexId>(rng() % n);
      VertexId y = static_cast<VertexId>(rng() % n);
      if (x != y) return Edge{x, y};
    }
  }
};

}  // namespace incsc::testutil
