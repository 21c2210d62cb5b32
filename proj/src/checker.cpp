#include "udg/checker.hpp"

#include <algorithm>
#include <set>

namespace udg {

namespace {

void normalize(ColoringGraph& g) {
  for (auto& [u, v] : g.edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
}

int require_vertex(const UnitGraph& w, const ExactPoint& p) {
  auto i = w.index_of(p);
  if (!i) throw std::invalid_argument("companion point " + p.to_string() + " is not a vertex of W");
  return *i;
}

std::vector<std::vector<int>> adjacency_of(const ColoringGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertices));
  for (const auto& [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

bool sat(const CnfFormula& f, const SolverBackend* backend) { return solve(f, backend).verdict == Verdict::sat; }

// Adds a (k-1)-clique of fresh vertices joined to every member of `set`.
void add_forcing_clique(ColoringGraph& g, std::span<const int> set, int k) {
  const int first = g.vertices;
  g.vertices += k - 1;
  for (int a = first; a < g.vertices; ++a) {
    for (int b = a + 1; b < g.vertices; ++b) g.edges.emplace_back(a, b);
    for (int s : set) g.edges.emplace_back(std::min(a, s), std::max(a, s));
  }
  normalize(g);
}

void require_colorable(const ColoringGraph& g, int k, std::span<const int> clique, const SolverBackend* backend) {
  if (!is_k_colorable(g, k, clique, backend)) {
    throw VacuousError("vacuous: graph is not " + std::to_string(k) + "-colorable");
  }
}

}  // namespace

Companion Companion::subgraph(UnitGraph g, Transform t) {
  Companion c;
  c.kind = Kind::subgraph;
  c.graph = std::move(g);
  c.transform = std::move(t);
  return c;
}

Companion Companion::mono_edge(ExactPoint a, ExactPoint b) {
  if (a == b) throw std::invalid_argument("mono pair needs two distinct points");
  Companion c;
  c.kind = Kind::mono_edge;
  c.points = {std::move(a), std::move(b)};
  return c;
}

Companion Companion::nonmono_clique(std::vector<ExactPoint> set) {
  if (set.size() < 2) throw std::invalid_argument("non-mono set needs at least two points");
  Companion c;
  c.kind = Kind::nonmono_clique;
  c.points = std::move(set);
  return c;
}

std::string Companion::describe() const {
  switch (kind) {
    case Kind::none:
      return "none";
    case Kind::subgraph:
      return "subgraph(" + std::to_string(graph.size()) + " vertices)";
    case Kind::mono_edge:
      return "mono_edge(" + points[0].to_string() + ", " + points[1].to_string() + ")";
    case Kind::nonmono_clique:
      return "nonmono_clique(" + std::to_string(points.size()) + " points)";
  }
  return "?";
}

std::vector<int> default_break_clique(const ColoringGraph& g, const std::vector<ExactPoint>* coords, int k) {
  if (k < 3) return {};
  if (coords) {
    const ExactPoint want[3] = {ExactPoint(0, 0), ExactPoint(1, 0),
                                ExactPoint(Rational(1, 2), ExactReal::sqrt_of(3, Rational(1, 2)))};
    std::vector<int> found;
    for (const auto& p : want) {
      auto it = std::find(coords->begin(), coords->end(), p);
      if (it == coords->end()) break;
      found.push_back(static_cast<int>(it - coords->begin()));
    }
    if (found.size() == 3 && g.adjacent(found[0], found[1]) && g.adjacent(found[0], found[2]) &&
        g.adjacent(found[1], found[2])) {
      return found;
    }
  }
  const auto adj = adjacency_of(g);
  for (const auto& [u, v] : g.edges) {
    const auto& au = adj[static_cast<std::size_t>(u)];
    const auto& av = adj[static_cast<std::size_t>(v)];
    for (int w : au) {
      if (w > v && std::binary_search(av.begin(), av.end(), w)) return {u, v, w};
    }
  }
  return {};
}

RealizedInstance realize(const UnitGraph& w, const Companion& c, int k) {
  RealizedInstance out;
  out.w_count = static_cast<int>(w.size());
  out.pinned.assign(w.size(), 0);
  out.graph.vertices = out.w_count;
  out.graph.edges = w.edges();
  std::vector<ExactPoint> coords = w.vertices();
  switch (c.kind) {
    case Companion::Kind::none:
      break;
    case Companion::Kind::subgraph: {
      const UnitGraph cg = c.graph.transformed(c.transform);
      const UnitGraph u = graph_union(w, cg);
      std::vector<int> to_inst(u.size(), -1);
      for (std::size_t i = 0; i < w.size(); ++i) to_inst[static_cast<std::size_t>(*u.index_of(w.vertex(static_cast<int>(i))))] = static_cast<int>(i);
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (to_inst[j] >= 0) {
          if (cg.contains(u.vertex(static_cast<int>(j)))) out.pinned[static_cast<std::size_t>(to_inst[j])] = 1;
          continue;
        }
        to_inst[j] = out.graph.vertices++;
        coords.push_back(u.vertex(static_cast<int>(j)));
      }
      out.graph.edges.clear();
      for (const auto& [a, b] : u.edges()) out.graph.edges.emplace_back(to_inst[static_cast<std::size_t>(a)], to_inst[static_cast<std::size_t>(b)]);
      break;
    }
    case Companion::Kind::mono_edge: {
      const int a = require_vertex(w, c.points[0]);
      const int b = require_vertex(w, c.points[1]);
      if (w.adjacent(a, b)) throw std::invalid_argument("mono pair endpoints are adjacent");
      out.graph.edges.emplace_back(a, b);
      out.pinned[static_cast<std::size_t>(a)] = out.pinned[static_cast<std::size_t>(b)] = 1;
      break;
    }
    case Companion::Kind::nonmono_clique: {
      std::vector<int> set;
      for (const auto& p : c.points) {
        set.push_back(require_vertex(w, p));
        out.pinned[static_cast<std::size_t>(set.back())] = 1;
      }
      add_forcing_clique(out.graph, set, k);
      break;
    }
  }
  normalize(out.graph);
  out.clique = default_break_clique(out.graph, &coords, k);
  return out;
}

bool is_k_colorable(const ColoringGraph& g, int k, std::span<const int> break_clique, const SolverBackend* backend) {
  if (k < 1) throw std::invalid_argument("color count must be >= 1");
  CnfFormula f = encode_k_coloring(g, k);
  if (!break_clique.empty()) f = add_clique_break(std::move(f), g, break_clique);
  return sat(f, backend);
}

bool is_k_colorable(const UnitGraph& g, int k, const SolverBackend* backend) {
  const ColoringGraph cg = ColoringGraph::of(g);
  const auto clique = default_break_clique(cg, &g.vertices(), k);
  return is_k_colorable(cg, k, clique, backend);
}

int chromatic_number(const UnitGraph& g, int k_max, const SolverBackend* backend) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  for (int k = 1; k <= k_max; ++k) {
    if (is_k_colorable(g, k, backend)) return k;
  }
  throw std::out_of_range("chromatic number exceeds " + std::to_string(k_max));
}

bool is_mono_pair(const UnitGraph& g, int u, int v, int k, const SolverBackend* backend) {
  const int n = static_cast<int>(g.size());
  if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw std::invalid_argument("mono pair needs two distinct vertices");
  if (g.adjacent(u, v)) throw std::invalid_argument("mono pair endpoints are adjacent");
  ColoringGraph cg = ColoringGraph::of(g);
  const auto clique = default_break_clique(cg, &g.vertices(), k);
  require_colorable(cg, k, clique, backend);
  cg.edges.emplace_back(std::min(u, v), std::max(u, v));
  normalize(cg);
  return !is_k_colorable(cg, k, clique, backend);
}

namespace {

// Triple + common neighbour + one neighbour of both c and a triple member.
std::optional<std::vector<int>> five_vertex_pattern(const UnitGraph& g, std::span<const int> set, int k) {
  if (set.size() != 3 || k < 3) return std::nullopt;
  const ExactReal three(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (dist_sq(g.vertex(set[i]), g.vertex(set[j])) != three) return std::nullopt;
    }
  }
  for (int c : g.adjacency()[static_cast<std::size_t>(set[0])]) {
    if (!g.adjacent(c, set[1]) || !g.adjacent(c, set[2])) continue;
    for (int x : g.adjacency()[static_cast<std::size_t>(c)]) {
      if (std::find(set.begin(), set.end(), x) != set.end()) continue;
      for (int s : set) {
        if (g.adjacent(x, s)) return std::vector<int>{set[0], set[1], set[2], c, x};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool is_non_mono_set(const UnitGraph& g, std::span<const int> set, int k, NonMonoMethod method,
                     const SolverBackend* backend, bool five_vertex_break) {
  if (set.size() < 2) throw std::invalid_argument("non-mono set needs at least two vertices");
  std::set<int> distinct(set.begin(), set.end());
  if (distinct.size() != set.size()) throw std::invalid_argument("non-mono set has repeated vertices");
  for (int s : set) {
    if (s < 0 || s >= static_cast<int>(g.size())) throw std::invalid_argument("non-mono set vertex out of range");
  }
  ColoringGraph cg = ColoringGraph::of(g);
  const auto clique = default_break_clique(cg, &g.vertices(), k);
  require_colorable(cg, k, clique, backend);
  if (method == NonMonoMethod::clique_companion) {
    add_forcing_clique(cg, set, k);
    const auto c2 = default_break_clique(cg, nullptr, k);
    return !is_k_colorable(cg, k, c2, backend);
  }
  CnfFormula f = add_equal_chain(encode_k_coloring(cg, k), set);
  if (five_vertex_break) {
    if (auto five = five_vertex_pattern(g, set, k)) {
      // WLOG the triple takes color 0, its common neighbour color 1 and the
      // extra vertex (adjacent to both) color 2.
      const auto& p = *five;
      for (int j = 0; j < 3; ++j) f.clauses.push_back({f.var(p[static_cast<std::size_t>(j)], 0)});
      f.clauses.push_back({f.var(p[3], 1)});
      f.clauses.push_back({f.var(p[4], 2)});
      return !sat(f, backend);
    }
  }
  // A break clique may not contain two set members (they share a color).
  int members = 0;
  for (int v : clique) members += distinct.count(v) ? 1 : 0;
  if (members <= 1) f = add_clique_break(std::move(f), cg, clique);
  return !sat(f, backend);
}

bool verify_spindle(const UnitGraph& g, std::pair<int, int> pair_a, std::pair<int, int> pair_b, int k,
                    const SolverBackend* backend) {
  int p = -1, q = -1, r = -1;
  if (pair_a.first == pair_b.first) {
    p = pair_a.first, q = pair_a.second, r = pair_b.second;
  } else if (pair_a.first == pair_b.second) {
    p = pair_a.first, q = pair_a.second, r = pair_b.first;
  } else if (pair_a.second == pair_b.first) {
    p = pair_a.second, q = pair_a.first, r = pair_b.second;
  } else if (pair_a.second == pair_b.second) {
    p = pair_a.second, q = pair_a.first, r = pair_b.first;
  } else {
    throw std::invalid_argument("spindle pairs must share exactly one vertex");
  }
  if (q == r || p == q || p == r) throw std::invalid_argument("spindle pairs must share exactly one vertex");
  if (!g.adjacent(q, r)) throw std::invalid_argument("spindle far endpoints are not unit distance apart");
  if (g.adjacent(p, q) || g.adjacent(p, r)) return false;

  ColoringGraph open = ColoringGraph::of(g);
  const Edge closing{std::min(q, r), std::max(q, r)};
  std::erase(open.edges, closing);
  if (!is_k_colorable(open, k, {}, backend)) return false;  // nothing is mono in a non-colorable graph
  for (int far : {q, r}) {
    ColoringGraph probe = open;
    probe.edges.emplace_back(std::min(p, far), std::max(p, far));
    normalize(probe);
    if (is_k_colorable(probe, k, {}, backend)) return false;
  }
  return true;
}

bool key_property(const UnitGraph& w, const KeyProperty& kp, const SolverBackend* backend) {
  const RealizedInstance inst = realize(w, kp.companion, kp.k);
  return !is_k_colorable(inst.graph, kp.k, inst.clique, backend);
}

PropertyOracle::PropertyOracle(const UnitGraph& w, const KeyProperty& kp, const SolverBackend* backend)
    : inst_(realize(w, kp.companion, kp.k)), backend_(backend) {
  std::vector<char> deletable(static_cast<std::size_t>(inst_.graph.vertices), 0);
  for (int i = 0; i < inst_.w_count; ++i) deletable[static_cast<std::size_t>(i)] = inst_.pinned[static_cast<std::size_t>(i)] ? 0 : 1;
  split_ = split_common(inst_.graph, kp.k, std::move(deletable), inst_.clique);
}

bool PropertyOracle::holds(std::span<const char> surviving) const {
  if (surviving.size() != w_size()) throw std::invalid_argument("surviving flags size mismatch");
  ++queries_;
  std::string key(surviving.size(), '0');
  for (std::size_t i = 0; i < surviving.size(); ++i) key[i] = (surviving[i] || inst_.pinned[i]) ? '1' : '0';
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  std::vector<char> full(static_cast<std::size_t>(inst_.graph.vertices), 1);
  for (std::size_t i = 0; i < surviving.size(); ++i) full[i] = key[i] == '1';
  ++calls_;
  const bool result = !sat(split_.assemble(full), backend_);
  std::lock_guard lock(mu_);
  memo_.emplace(std::move(key), result);
  return result;
}

bool PropertyOracle::holds_without(std::span<const int> removed) const {
  std::vector<char> surviving(w_size(), 1);
  for (int v : removed) surviving[static_cast<std::size_t>(v)] = 0;
  return holds(surviving);
}

}  // namespace udg
