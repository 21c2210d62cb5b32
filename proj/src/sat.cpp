#include "udg/sat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace udg {

ColoringGraph ColoringGraph::of(const UnitGraph& g) { return {static_cast<int>(g.size()), g.edges()}; }

bool ColoringGraph::adjacent(int u, int v) const {
  const Edge e = u < v ? Edge{u, v} : Edge{v, u};
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

CnfFormula encode_k_coloring(const ColoringGraph& g, int k) {
  if (k < 1) throw std::invalid_argument("color count must be >= 1");
  CnfFormula f;
  f.colors = k;
  f.num_vars = g.vertices * k;
  f.clauses.reserve(static_cast<std::size_t>(g.vertices) + static_cast<std::size_t>(k) * g.edges.size());
  for (int i = 0; i < g.vertices; ++i) {
    Clause c;
    for (int col = 0; col < k; ++col) c.push_back(f.var(i, col));
    f.clauses.push_back(std::move(c));
  }
  for (const auto& [u, v] : g.edges) {
    for (int col = 0; col < k; ++col) f.clauses.push_back({-f.var(u, col), -f.var(v, col)});
  }
  return f;
}

CnfFormula add_clique_break(CnfFormula f, const ColoringGraph& g, std::span<const int> clique) {
  if (static_cast<int>(clique.size()) > f.colors) throw std::invalid_argument("clique larger than color count");
  for (std::size_t i = 0; i < clique.size(); ++i) {
    for (std::size_t j = i + 1; j < clique.size(); ++j) {
      if (!g.adjacent(clique[i], clique[j])) throw std::invalid_argument("symmetry-breaking set is not a clique");
    }
  }
  for (std::size_t j = 0; j < clique.size(); ++j) f.clauses.push_back({f.var(clique[j], static_cast<int>(j))});
  return f;
}

CnfFormula add_equal_chain(CnfFormula f, std::span<const int> set) {
  if (set.size() < 2) throw std::invalid_argument("equal chain needs at least two vertices");
  for (int col = 0; col < f.colors; ++col) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      const int from = set[i];
      const int to = set[(i + 1) % set.size()];
      f.clauses.push_back({-f.var(from, col), f.var(to, col)});
    }
  }
  return f;
}

SplitFormula split_common(const ColoringGraph& g, int k, std::vector<char> deletable, std::vector<int> break_clique,
                          const std::vector<std::vector<int>>& equal_sets) {
  if (deletable.size() != static_cast<std::size_t>(g.vertices)) throw std::invalid_argument("deletable flags size mismatch");
  SplitFormula s;
  ColoringGraph no_vertices{0, {}};
  s.common.colors = k;
  s.common.num_vars = g.vertices * k;
  for (const auto& [u, v] : g.edges) {
    for (int col = 0; col < k; ++col) s.common.clauses.push_back({-s.common.var(u, col), -s.common.var(v, col)});
  }
  for (const auto& set : equal_sets) s.common = add_equal_chain(std::move(s.common), set);
  if (!break_clique.empty()) {
    // Validate once against the full graph.
    CnfFormula probe;
    probe.colors = k;
    (void)add_clique_break(probe, g, break_clique);
  }
  s.deletable = std::move(deletable);
  s.break_clique = std::move(break_clique);
  return s;
}

CnfFormula SplitFormula::assemble(std::span<const char> surviving) const {
  CnfFormula f = common;
  const int k = common.colors;
  const int n = static_cast<int>(deletable.size());
  for (int i = 0; i < n; ++i) {
    if (deletable[static_cast<std::size_t>(i)] && !surviving[static_cast<std::size_t>(i)]) continue;
    Clause c;
    for (int col = 0; col < k; ++col) c.push_back(f.var(i, col));
    f.clauses.push_back(std::move(c));
  }
  const bool all_alive = std::all_of(break_clique.begin(), break_clique.end(), [&](int v) {
    return !deletable[static_cast<std::size_t>(v)] || surviving[static_cast<std::size_t>(v)];
  });
  if (all_alive) {
    for (std::size_t j = 0; j < break_clique.size(); ++j) {
      f.clauses.push_back({f.var(break_clique[j], static_cast<int>(j))});
    }
  }
  return f;
}

std::size_t SplitFormula::delta_size(std::span<const char> surviving) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < deletable.size(); ++i) n += !deletable[i] || surviving[i];
  return n;
}

std::string to_dimacs(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.num_vars) + " " + std::to_string(f.clauses.size()) + "\n";
  for (const auto& c : f.clauses) {
    for (Lit l : c) {
      out += std::to_string(l);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

CnfFormula from_dimacs(std::string_view text) {
  CnfFormula f;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  std::size_t expected = 0;
  Clause current;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      long vars = 0, clauses = 0;
      if (!(ls >> p >> cnf >> vars >> clauses) || cnf != "cnf" || vars < 0 || clauses < 0) {
        throw std::invalid_argument("DIMACS line " + std::to_string(line_no) + ": bad header");
      }
      f.num_vars = static_cast<int>(vars);
      expected = static_cast<std::size_t>(clauses);
      header = true;
      continue;
    }
    if (!header) throw std::invalid_argument("DIMACS line " + std::to_string(line_no) + ": clause before header");
    long lit = 0;
    while (ls >> lit) {
      if (lit == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (std::abs(lit) > f.num_vars) throw std::invalid_argument("DIMACS line " + std::to_string(line_no) + ": variable out of range");
        current.push_back(static_cast<Lit>(lit));
      }
    }
    if (!ls.eof()) throw std::invalid_argument("DIMACS line " + std::to_string(line_no) + ": bad literal");
  }
  if (!current.empty()) f.clauses.push_back(std::move(current));
  if (!header) throw std::invalid_argument("DIMACS: missing header");
  if (f.clauses.size() != expected) throw std::invalid_argument("DIMACS: clause count does not match header");
  return f;
}

bool satisfies(const CnfFormula& f, const std::vector<bool>& model) {
  if (model.size() < static_cast<std::size_t>(f.num_vars) + 1) return false;
  for (const auto& c : f.clauses) {
    bool ok = false;
    for (Lit l : c) {
      const bool v = model[static_cast<std::size_t>(std::abs(l))];
      if ((l > 0) == v) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace udg
