#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "udg/graph.hpp"

namespace udg {

/// DIMACS literal: +v or -v for variable v >= 1.
using Lit = int;
using Clause = std::vector<Lit>;

/// Plain vertex/edge structure handed to the encoder. Unlike UnitGraph it
/// may carry edges that are not unit segments (companion cliques, forced
/// mono-pair edges).
struct ColoringGraph {
  int vertices = 0;
  std::vector<Edge> edges;

  static ColoringGraph of(const UnitGraph& g);
  bool adjacent(int u, int v) const;
};

/// k-coloring formula. Variable for (vertex i, color c) is i*k + c + 1 with
/// 0-based colors, so vertices listed first (closest to the center in a
/// UnitGraph) get the lowest variable numbers.
struct CnfFormula {
  int num_vars = 0;
  int colors = 0;
  std::vector<Clause> clauses;

  int var(int vertex, int color) const { return vertex * colors + color + 1; }
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// n vertex clauses of width k followed by k binary clauses per edge.
CnfFormula encode_k_coloring(const ColoringGraph& g, int k);

/// Unit clause fixing clique member j to color j. Rejects non-cliques and
/// cliques larger than k.
CnfFormula add_clique_break(CnfFormula f, const ColoringGraph& g, std::span<const int> clique);

/// Cyclic implication chain v1 ⇒ v2 ⇒ … ⇒ v1 for every color: k·|set|
/// clauses forcing the set monochromatic.
CnfFormula add_equal_chain(CnfFormula f, std::span<const int> set);

/// Clauses shared by every subgraph of one working graph, plus the per-
/// subgraph vertex clauses. Deleted vertices keep their variables but lose
/// their vertex clause, which leaves them free to take no color at all.
struct SplitFormula {
  CnfFormula common;                    // edge clauses and chains
  std::vector<char> deletable;          // per vertex
  std::vector<int> break_clique;        // applied only when all members survive

  /// Formula for the subgraph keeping `surviving` (per-vertex flags).
  /// Non-deletable vertices always get their vertex clause.
  CnfFormula assemble(std::span<const char> surviving) const;
  std::size_t delta_size(std::span<const char> surviving) const;
};

SplitFormula split_common(const ColoringGraph& g, int k, std::vector<char> deletable,
                          std::vector<int> break_clique = {},
                          const std::vector<std::vector<int>>& equal_sets = {});

std::string to_dimacs(const CnfFormula& f);
/// Parses DIMACS CNF. The k of a coloring formula is not stored in DIMACS,
/// so `colors` is left 0.
CnfFormula from_dimacs(std::string_view text);

/// True iff `model` (index = variable, entry 0 unused) satisfies every clause.
bool satisfies(const CnfFormula& f, const std::vector<bool>& model);

}  // namespace udg
