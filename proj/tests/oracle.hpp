#pragma once

// Independent reference implementations for the tests. Nothing here calls
// the SAT encoder or solver: coloring questions are answered by exhaustive
// search and unit distances by floating point.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "udg/graph.hpp"

namespace oracle {

struct Graph {
  int n = 0;
  std::vector<std::vector<char>> adj;

  explicit Graph(int vertices = 0) : n(vertices), adj(static_cast<std::size_t>(vertices), std::vector<char>(static_cast<std::size_t>(vertices), 0)) {}
  void add_edge(int u, int v) {
    adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
  }
  bool has(int u, int v) const { return adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] != 0; }
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (has(u, v)) out.emplace_back(u, v);
    return out;
  }
  Graph induced(const std::vector<int>& keep) const {
    Graph g(static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = i + 1; j < keep.size(); ++j)
        if (has(keep[i], keep[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
  }
};

/// Unit-distance pairs by double arithmetic, tolerance 1e-9.
inline Graph float_graph(const std::vector<udg::ExactPoint>& pts) {
  Graph g(static_cast<int>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[i].re.to_double() - pts[j].re.to_double();
      const double dy = pts[i].im.to_double() - pts[j].im.to_double();
      if (std::abs(dx * dx + dy * dy - 1.0) < 1e-9) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

inline Graph of(const udg::UnitGraph& g) {
  Graph out(static_cast<int>(g.size()));
  for (const auto& [u, v] : g.edges()) out.add_edge(u, v);
  return out;
}

/// Visits every proper k-coloring (colors 0..k-1) by depth-first search.
/// The callback returns false to stop early.
inline void for_each_coloring(const Graph& g, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> col(static_cast<std::size_t>(g.n), -1);
  bool stop = false;
  std::function<void(int)> go = [&](int v) {
    if (stop) return;
    if (v == g.n) {
      if (!fn(col)) stop = true;
      return;
    }
    for (int c = 0; c < k && !stop; ++c) {
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = !(g.has(u, v) && col[static_cast<std::size_t>(u)] == c);
      if (!ok) continue;
      col[static_cast<std::size_t>(v)] = c;
      go(v + 1);
    }
    col[static_cast<std::size_t>(v)] = -1;
  };
  go(0);
}

inline bool colorable(const Graph& g, int k) {
  if (g.n == 0) return true;
  bool found = false;
  for_each_coloring(g, k, [&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

inline int chromatic(const Graph& g) {
  int k = 0;
  while (!colorable(g, k)) ++k;
  return k;
}

/// Equal colors in every proper k-coloring, and at least one exists.
inline bool mono(const Graph& g, int u, int v, int k) {
  bool any = false, split = false;
  for_each_coloring(g, k, [&](const std::vector<int>& c) {
    any = true;
    split = c[static_cast<std::size_t>(u)] != c[static_cast<std::size_t>(v)];
    return !split;
  });
  return any && !split;
}

/// No proper k-coloring gives every vertex of `set` one color.
inline bool non_mono(const Graph& g, const std::vector<int>& set, int k) {
  bool found = false;
  for_each_coloring(g, k, [&](const std::vector<int>& c) {
    bool same = true;
    for (int v : set) same = same && c[static_cast<std::size_t>(v)] == c[static_cast<std::size_t>(set.front())];
    found = same;
    return !same;
  });
  return !found;
}

/// Brute-force satisfiability of a CNF over variables 1..num_vars.
template <class Clauses>
bool cnf_satisfiable(int num_vars, const Clauses& clauses) {
  std::vector<int> val(static_cast<std::size_t>(num_vars) + 1, 0);
  std::function<bool(int)> go = [&](int var) -> bool {
    for (const auto& cl : clauses) {
      bool sat = false, open = false;
      for (int lit : cl) {
        const int v = val[static_cast<std::size_t>(std::abs(lit))];
        if (v == 0) open = true;
        else if ((v > 0) == (lit > 0)) sat = true;
      }
      if (!sat && !open) return false;
    }
    if (var > num_vars) return true;
    for (int s : {1, -1}) {
      val[static_cast<std::size_t>(var)] = s;
      if (go(var + 1)) return true;
    }
    val[static_cast<std::size_t>(var)] = 0;
    return false;
  };
  return go(1);
}

inline Graph random_graph(std::mt19937& rng, int n, double p) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

/// Minimal vertex sets of size <= max_size whose deletion makes `holds`
/// false, found by testing every subset.
inline std::vector<std::vector<int>> critical_sets(int n, int max_size,
                                                  const std::function<bool(const std::vector<int>&)>& holds_without) {
  std::vector<std::vector<int>> out;
  std::function<void(std::vector<int>&, int, int)> rec = [&](std::vector<int>& cur, int start, int size) {
    if (static_cast<int>(cur.size()) == size) {
      for (const auto& e : out) {
        bool sub = true;
        for (int v : e) sub = sub && std::find(cur.begin(), cur.end(), v) != cur.end();
        if (sub) return;
      }
      if (!holds_without(cur)) out.push_back(cur);
      return;
    }
    for (int v = start; v < n; ++v) {
      cur.push_back(v);
      rec(cur, v + 1, size);
      cur.pop_back();
    }
  };
  for (int s = 1; s <= max_size; ++s) {
    std::vector<int> cur;
    rec(cur, 0, s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
