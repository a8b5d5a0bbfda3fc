#pragma once

// Script runner and workload generator behind the command-line tool.
// Plain-text line protocol: one answer line per query, deterministic output,
// optional per-answer diffing against the brute-force oracles.

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "incsc/manager.hpp"
#include "incsc/oracle.hpp"
#include "incsc/two_vcc.hpp"

namespace incsc::cli {

struct RunOptions {
  bool oracle = false;
  bool stats = false;
  bool bench = false;
};

struct RunResult {
  int exit_code = 0;          // 0 ok, 1 oracle divergence, 2 usage/parse error
  std::string output;         // one line per query
  std::string diagnostics;    // errors, stats, bench summary
};

namespace detail {

inline std::string fmt_comps(const std::vector<std::vector<VertexId>>& comps) {
  if (comps.empty()) return "none";
  std::ostringstream os;
  for (size_t i = 0; i < comps.size(); ++i) {
    os << (i ? ";{" : "{");
    for (size_t j = 0; j < comps[i].size(); ++j)
      os << (j ? "," : "") << comps[i][j];
    os << '}';
  }
  return os.str();
}

inline std::string fmt_edges(const std::vector<Edge>& edges) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < edges.size(); ++i)
    os << (i ? ",(" : "(") << edges[i].x << ',' << edges[i].y << ')';
  os << '}';
  return os.str();
}

inline std::string fmt_verts(const std::vector<VertexId>& vs) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
  os << '}';
  return os.str();
}

inline std::string fmt_bool(bool b) { return b ? "true" : "false"; }

inline std::string fmt_pair(const PairAnswer& a) {
  if (a.ok) return "(true, none)";
  std::ostringstream os;
  os << "(false, ";
  if (a.kind == PairAnswer::edge)
    os << "edge (" << a.e.x << ',' << a.e.y << ')';
  else if (a.kind == PairAnswer::vertex)
    os << "vertex " << a.v;
  else
    os << "none";
  os << ')';
  return os.str();
}

// Maximal subsets of size >= 2 whose members are pairwise related; usable only
// at small n (subset enumeration).
template <typename Rel>
std::vector<std::vector<VertexId>> pairwise_components(int n, Rel rel) {
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = 0; b < n; ++b) r[a][b] = a == b || rel(a, b);
  std::vector<std::vector<VertexId>> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
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
  std::sort(out.begin(), out.end());
  return out;
}

struct OracleAnswers {
  const Digraph& g;

  std::vector<std::vector<VertexId>> norm(
      std::vector<std::vector<VertexId>> comps) const {
    for (auto& c : comps) std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end());
    return comps;
  }

  std::string edge_count(Edge e) const {
    return std::to_string(oracle_failure_edge(g, e).size());
  }
  std::string edge_agg(Edge e, bool mx) const {
    auto sets = oracle_failure_edge(g, e);
    size_t best = mx ? 0 : g.vertex_count() + 1;
    for (auto& s : sets) best = mx ? std::max(best, s.size()) : std::min(best, s.size());
    return std::to_string(best);
  }
  std::string edge_list(Edge e) const {
    return fmt_comps(norm(oracle_failure_edge(g, e)));
  }
  std::string edge_conn(VertexId a, VertexId b, Edge e) const {
    auto sets = oracle_failure_edge(g, e);
    return fmt_bool(a == b || oracle_detail::same_scc(sets, a, b));
  }
  std::string sep_edges(VertexId a, VertexId b) const {
    std::vector<Edge> out;
    if (a != b)
      for (const Edge& e : g.edge_log()) {
        auto sets = oracle_detail::scc_sets(g, e, std::nullopt);
        if (!oracle_detail::same_scc(sets, a, b)) out.push_back(e);
      }
    std::sort(out.begin(), out.end());
    return fmt_edges(out);
  }
  std::string vert_count(VertexId v) const {
    return std::to_string(oracle_failure_vertex(g, v).size());
  }
  std::string vert_agg(VertexId v, bool mx) const {
    auto sets = oracle_failure_vertex(g, v);
    size_t best = mx ? 0 : g.vertex_count() + 1;
    for (auto& s : sets) best = mx ? std::max(best, s.size()) : std::min(best, s.size());
    if (sets.empty()) best = 0;  // single-vertex graph
    return std::to_string(best);
  }
  std::string vert_list(VertexId v) const {
    return fmt_comps(norm(oracle_failure_vertex(g, v)));
  }
  std::string vert_conn(VertexId a, VertexId b, VertexId v) const {
    if (a == b) return fmt_bool(true);
    if (a == v || b == v) return fmt_bool(false);
    auto sets = oracle_failure_vertex(g, v);
    return fmt_bool(oracle_detail::same_scc(sets, a, b));
  }
  std::string sep_verts(VertexId a, VertexId b) const {
    std::vector<VertexId> out;
    if (a != b)
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (v == a || v == b) continue;
        auto sets = oracle_detail::scc_sets(g, std::nullopt, v);
        if (!oracle_detail::same_scc(sets, a, b)) out.push_back(v);
      }
    return fmt_verts(out);
  }
  // Returns empty optional when n is too large for subset enumeration.
  std::optional<std::string> two_vcc() const {
    if (g.vertex_count() > 16) return std::nullopt;
    return fmt_comps(pairwise_components(
        g.vertex_count(),
        [&](VertexId a, VertexId b) { return oracle_2vcc_pair(g, a, b); }));
  }
  // Semantic witness check; returns empty string if consistent, else a
  // description of the problem.
  std::string check_pair(VertexId u, VertexId v, const PairAnswer& a) const {
    bool want = oracle_2vcc_pair(g, u, v);
    if (a.ok != want) return "flag mismatch";
    if (a.ok) return a.kind == PairAnswer::none ? "" : "witness on true";
    if (a.kind == PairAnswer::edge) {
      if (!g.has_edge(a.e.x, a.e.y)) return "witness edge not in graph";
      auto sets = oracle_detail::scc_sets(g, a.e, std::nullopt);
      if (oracle_detail::same_scc(sets, u, v)) return "witness edge does not separate";
    } else if (a.kind == PairAnswer::vertex) {
      if (a.v == u || a.v == v) return "witness vertex is an endpoint";
      auto sets = oracle_detail::scc_sets(g, std::nullopt, a.v);
      if (oracle_detail::same_scc(sets, u, v)) return "witness vertex does not separate";
    } else {
      auto base = oracle_detail::scc_sets(g);
      if (oracle_detail::same_scc(base, u, v))
        return "missing witness for strongly connected pair";
    }
    return "";
  }
};

}  // namespace detail

inline RunResult run_script(std::istream& in, const RunOptions& opts) {
  using namespace detail;
  RunResult res;
  std::ostringstream out, diag;
  auto fail = [&](int code, int line, const std::string& msg) {
    diag << "line " << line << ": " << msg << '\n';
    res.exit_code = code;
    res.output = out.str();
    res.diagnostics = diag.str();
    return res;
  };

  std::string line;
  int lineno = 0;
  int n = -1;
  std::unique_ptr<TopManager> mgr, baseline;
  std::chrono::nanoseconds inc_time{0}, base_time{0};
  long long insertions = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      size_t a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      size_t b = line.find_last_not_of(" \t\r");
      line = line.substr(a, b - a + 1);
      if (line[0] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_line()) return fail(2, lineno, "empty script");
  {
    std::istringstream hs(line);
    std::string kw;
    hs >> kw;
    if (kw != "graph") return fail(2, lineno, "expected 'graph n=<N>' header");
    std::string spec;
    hs >> spec;
    if (spec.rfind("n=", 0) != 0) return fail(2, lineno, "expected 'graph n=<N>' header");
    try {
      n = std::stoi(spec.substr(2));
    } catch (...) {
      return fail(2, lineno, "bad vertex count");
    }
    if (n < 1) return fail(2, lineno, "vertex count must be >= 1");
  }
  mgr = std::make_unique<TopManager>(n);
  if (opts.bench) {
    baseline = std::make_unique<TopManager>(n);
    baseline->baseline_mode = true;
  }

  auto vid = [&](const std::string& tok, VertexId& v) {
    try {
      v = std::stoi(tok);
    } catch (...) {
      return false;
    }
    return v >= 0 && v < n;
  };

  while (next_line()) {
    std::istringstream ls(line);
    std::string cmd;
    ls >> cmd;
    if (cmd == "insert") {
      std::string xs, ys, extra;
      if (!(ls >> xs >> ys) || (ls >> extra))
        return fail(2, lineno, "usage: insert X Y");
      VertexId x, y;
      if (!vid(xs, x) || !vid(ys, y)) return fail(2, lineno, "vertex id out of range");
      auto t0 = std::chrono::steady_clock::now();
      mgr->top_insert(x, y);
      auto t1 = std::chrono::steady_clock::now();
      inc_time += t1 - t0;
      ++insertions;
      if (baseline) {
        auto b0 = std::chrono::steady_clock::now();
        baseline->top_insert(x, y);
        auto b1 = std::chrono::steady_clock::now();
        base_time += b1 - b0;
      }
      continue;
    }
    if (cmd != "q") return fail(2, lineno, "unknown command '" + cmd + "'");
    std::string kind;
    ls >> kind;
    std::vector<VertexId> args;
    std::string tok;
    while (ls >> tok) {
      VertexId v;
      if (!vid(tok, v)) return fail(2, lineno, "vertex id out of range");
      args.push_back(v);
    }
    const Digraph& g = mgr->g;
    std::string ans, want;
    bool have_want = true;
    OracleAnswers orc{g};
    auto need = [&](size_t k) { return args.size() == k; };
    auto edge_ok = [&](Edge e) { return g.has_edge(e.x, e.y); };

    if (kind == "edge-scc-count" || kind == "edge-max" || kind == "edge-min" ||
        kind == "edge-list") {
      if (!need(2)) return fail(2, lineno, "usage: q " + kind + " X Y");
      Edge e{args[0], args[1]};
      if (!edge_ok(e)) return fail(2, lineno, "edge not in graph");
      if (kind == "edge-scc-count") {
        ans = std::to_string(mgr->edge_scc_count(e));
        if (opts.oracle) want = orc.edge_count(e);
      } else if (kind == "edge-max") {
        ans = std::to_string(mgr->edge_max(e));
        if (opts.oracle) want = orc.edge_agg(e, true);
      } else if (kind == "edge-min") {
        ans = std::to_string(mgr->edge_min(e));
        if (opts.oracle) want = orc.edge_agg(e, false);
      } else {
        ans = fmt_comps(mgr->edge_list(e));
        if (opts.oracle) want = orc.edge_list(e);
      }
    } else if (kind == "edge-conn") {
      if (!need(4)) return fail(2, lineno, "usage: q edge-conn U V X Y");
      Edge e{args[2], args[3]};
      if (!edge_ok(e)) return fail(2, lineno, "edge not in graph");
      ans = fmt_bool(mgr->edge_conn(args[0], args[1], e));
      if (opts.oracle) want = orc.edge_conn(args[0], args[1], e);
    } else if (kind == "sep-edges") {
      if (!need(2)) return fail(2, lineno, "usage: q sep-edges U V");
      ans = fmt_edges(mgr->sep_edges(args[0], args[1]));
      if (opts.oracle) want = orc.sep_edges(args[0], args[1]);
    } else if (kind == "vert-scc-count" || kind == "vert-max" ||
               kind == "vert-min" || kind == "vert-list") {
      if (!need(1)) return fail(2, lineno, "usage: q " + kind + " V");
      VertexId v = args[0];
      if (kind == "vert-scc-count") {
        ans = std::to_string(mgr->vert_scc_count(v));
        if (opts.oracle) want = orc.vert_count(v);
      } else if (kind == "vert-max") {
        ans = std::to_string(mgr->vert_max(v));
        if (opts.oracle) want = orc.vert_agg(v, true);
      } else if (kind == "vert-min") {
        ans = std::to_string(mgr->vert_min(v));
        if (opts.oracle) want = orc.vert_agg(v, false);
      } else {
        ans = fmt_comps(mgr->vert_list(v));
        if (opts.oracle) want = orc.vert_list(v);
      }
    } else if (kind == "vert-conn") {
      if (!need(3)) return fail(2, lineno, "usage: q vert-conn U W V");
      ans = fmt_bool(mgr->vert_conn(args[0], args[1], args[2]));
      if (opts.oracle) want = orc.vert_conn(args[0], args[1], args[2]);
    } else if (kind == "sep-verts") {
      if (!need(2)) return fail(2, lineno, "usage: q sep-verts U W");
      ans = fmt_verts(mgr->sep_verts(args[0], args[1]));
      if (opts.oracle) want = orc.sep_verts(args[0], args[1]);
    } else if (kind == "2vcc") {
      if (!need(0)) return fail(2, lineno, "usage: q 2vcc");
      ans = fmt_comps(mgr->two_vcc_blocks());
      have_want = false;
      if (opts.oracle) {
        if (auto w = orc.two_vcc()) {
          want = *w;
          have_want = true;
        }
      }
    } else if (kind == "2vcc-pair") {
      if (!need(2)) return fail(2, lineno, "usage: q 2vcc-pair U V");
      if (args[0] == args[1]) return fail(2, lineno, "2vcc-pair requires distinct vertices");
      auto pa = mgr->two_vcc_pair(args[0], args[1]);
      ans = fmt_pair(pa);
      if (opts.oracle) {
        std::string problem = orc.check_pair(args[0], args[1], pa);
        if (!problem.empty())
          return fail(1, lineno, "divergence: " + problem + " (got " + ans + ")");
      }
      have_want = false;
    } else {
      return fail(2, lineno, "unknown query '" + kind + "'");
    }

    out << ans << '\n';
    if (opts.oracle && have_want && ans != want)
      return fail(1, lineno, "divergence: got " + ans + " want " + want);
  }

  if (opts.stats) {
    long long restarts = 0, cancels = 0, scanned = 0, affected = 0, probes = 0;
    for (VertexId v = 0; v < n; ++v) {
      int c = mgr->component_of(v);
      const auto& ci = mgr->component(c);
      if (!ci.engine || ci.members.front() != v) continue;
      for (const FlowSide* s : {&ci.engine->fwd, &ci.engine->rev}) {
        restarts += s->ctr.restarts;
        cancels += s->ctr.bridge_cancellations;
        scanned += s->ctr.scanned_total;
        affected += s->ctr.affected_total;
      }
      probes += ci.queries->total_probes;
    }
    diag << "stats: insertions=" << insertions
         << " top-restarts=" << mgr->top_restarts << " local-restarts=" << restarts
         << " bridge-cancellations=" << cancels << " scanned=" << scanned
         << " l-affected=" << affected << " probes=" << probes
         << " strong-bridges-ever=" << mgr->strong_bridges_ever.size() << '\n';
  }
  if (opts.bench) {
    auto ms = [](std::chrono::nanoseconds t) {
      return std::chrono::duration<double, std::milli>(t).count();
    };
    diag << "bench: incremental=" << ms(inc_time)
         << "ms full-recompute=" << ms(base_time) << "ms\n";
  }
  res.output = out.str();
  res.diagnostics = diag.str();
  return res;
}

// Reproducible workload generator.  Models: "uniform" (random simple edges)
// and "cycle-first" (Hamiltonian cycle 0→1→…→n-1→0 first, then uniform).
// query_rate in [0,1] interleaves one random query after an insertion with
// that probability.  Uses raw mt19937_64 draws (modulo) so the byte stream is
// platform-stable.
inline std::string generate_script(int n, long long m, std::uint64_t seed,
                                   const std::string& model, double query_rate,
                                   std::string* error) {
  auto err = [&](const std::string& msg) {
    if (error) *error = msg;
    return std::string();
  };
  if (n < 1) return err("n must be >= 1");
  if (model != "uniform" && model != "cycle-first") return err("unknown model '" + model + "'");
  if (m < 0 || m > static_cast<long long>(n) * (n - 1))
    return err("m exceeds the n(n-1) possible edges");
  if (query_rate < 0.0 || query_rate > 1.0) return err("query rate must be in [0,1]");

  std::mt19937_64 rng(seed);
  auto pick = [&](long long k) { return static_cast<long long>(rng() % k); };
  std::ostringstream os;
  os << "graph n=" << n << '\n';
  std::vector<Edge> inserted;
  std::set<std::pair<int, int>> used;
  auto emit_query = [&]() {
    int kind = static_cast<int>(pick(6));
    VertexId a = static_cast<VertexId>(pick(n));
    VertexId b = static_cast<VertexId>(pick(n));
    if (inserted.empty() && kind <= 1) kind = 2;
    switch (kind) {
      case 0: {
        Edge e = inserted[pick(inserted.size())];
        os << "q edge-scc-count " << e.x << ' ' << e.y << '\n';
        break;
      }
      case 1: {
        Edge e = inserted[pick(inserted.size())];
        os << "q edge-conn " << a << ' ' << b << ' ' << e.x << ' ' << e.y << '\n';
        break;
      }
      case 2:
        os << "q vert-scc-count " << a << '\n';
        break;
      case 3:
        os << "q vert-conn " << a << ' ' << b << ' ' << pick(n) << '\n';
        break;
      case 4:
        os << "q sep-edges " << a << ' ' << b << '\n';
        break;
      default:
        os << "q sep-verts " << a << ' ' << b << '\n';
        break;
    }
  };
  auto emit_insert = [&](int x, int y) {
    used.insert({x, y});
    inserted.push_back(Edge{x, y});
    os << "insert " << x << ' ' << y << '\n';
    if (query_rate > 0.0) {
      double roll = static_cast<double>(rng() >> 11) / 9007199254740992.0;
      if (roll < query_rate) emit_query();
    }
  };
  long long left = m;
  if (model == "cycle-first")
    for (int i = 0; i < n && left > 0; ++i, --left)
      emit_insert(i, (i + 1) % n);
  while (left > 0) {
    int x = static_cast<int>(pick(n));
    int y = static_cast<int>(pick(n));
    if (x == y || used.count({x, y})) continue;
    emit_insert(x, y);
    --left;
  }
  return os.str();
}

}  // namespace incsc::cli
