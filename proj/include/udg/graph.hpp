#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "udg/exact.hpp"

namespace udg {

using Edge = std::pair<int, int>;

enum class EdgeMode {
  shortlist,   // spatial hash on double approximations, then exact confirmation
  exhaustive,  // exact test of every pair; audit only
};

/// A strict unit-distance graph: the vertex list determines the edge set.
/// Vertices are distinct and sorted by |v|^2, ties broken by their text form,
/// so equal point sets always produce identical structures.
class UnitGraph {
 public:
  UnitGraph() = default;

  static UnitGraph from_points(std::vector<ExactPoint> points, EdgeMode mode = EdgeMode::shortlist,
                               unsigned jobs = 1);

  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const std::vector<ExactPoint>& vertices() const { return vertices_; }
  const ExactPoint& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
  int degree(int i) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(i)].size()); }
  bool adjacent(int u, int v) const;

  std::optional<int> index_of(const ExactPoint& p) const;
  bool contains(const ExactPoint& p) const { return index_of(p).has_value(); }

  /// Subgraph induced by `keep` (indices in any order). Edges are inherited,
  /// which is exact because induced subgraphs of strict graphs are strict.
  UnitGraph induced(std::span<const int> keep) const;
  UnitGraph without(std::span<const int> removed) const;
  UnitGraph transformed(const Transform& t) const;

  /// Re-tests every vertex pair exactly and compares with the stored edges.
  bool audit_strictness() const;

 private:
  std::vector<ExactPoint> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::unordered_map<ExactPoint, int, ExactPointHash> index_;
};

/// Unit-distance pairs (i < j) among `points`, sorted.
std::vector<Edge> unit_edges(const std::vector<ExactPoint>& points, EdgeMode mode = EdgeMode::shortlist,
                             unsigned jobs = 1);

UnitGraph from_points(std::vector<ExactPoint> points);
UnitGraph minkowski(const UnitGraph& g1, const UnitGraph& g2, unsigned jobs = 1);
UnitGraph minkowski_power(const UnitGraph& g, int n, unsigned jobs = 1);
UnitGraph graph_union(const UnitGraph& g1, const UnitGraph& g2, unsigned jobs = 1);
/// Union of eta^a * g for a in `exponents`.
UnitGraph rotation_set(const UnitGraph& g, std::span<const int> exponents, unsigned jobs = 1);
/// rotation_set over {-m..m}.
UnitGraph rotation_power(const UnitGraph& g, int m, unsigned jobs = 1);
/// Keeps vertices with |v|^2 <= r_sq.
UnitGraph trim(const UnitGraph& g, const ExactReal& r_sq);

/// The 7-vertex hexagonal wheel H.
UnitGraph wheel();
/// Unit rhombus {0, a, b, a+b} with a = 1/2 + i√3/2, b = -1/2 + i√3/2, so the
/// tips 0 and i√3 are at distance √3.
UnitGraph rhombus();
/// Moser spindle, rhombus ∪ η²·rhombus.
UnitGraph moser();

/// Named atoms: H, D, MOSER, V25, V31 (= H^2), V31S, V37, V37T, V49.
std::optional<UnitGraph> named_graph(const std::string& name);

}  // namespace udg
