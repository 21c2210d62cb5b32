#pragma once

#include <string>
#include <vector>

#include "udg/graph.hpp"

namespace udg {

enum class CrossEdgeKind { reference, auxiliary, other };

struct CrossEdge {
  int l_vertex = 0;  // index in L
  int s_vertex = 0;  // index in S (the endpoint is ρ·S[s_vertex])
  CrossEdgeKind kind = CrossEdgeKind::other;
};

/// Unit edges between L and ρS that neither subgraph has on its own.
/// Reference edges join points at distance 2 from the shared center;
/// auxiliary edges join points at distances √11/2 ± √3/6.
struct ConnectionReport {
  std::vector<CrossEdge> cross_edges;
  int reference = 0;
  int auxiliary = 0;
  int other = 0;
  /// Positions of the L-side auxiliary endpoints within the 12-point orbit
  /// (0,0,2,6), in orbit_members order. Empty slots are absent endpoints.
  std::vector<int> auxiliary_slots;
};

struct TypeMAssembly {
  UnitGraph graph;
  ConnectionReport report;
};

/// L ∪ ρS. Both inputs must contain the origin.
TypeMAssembly assemble_type_m(const UnitGraph& l, const UnitGraph& s);

/// M3, M6A, M6B, M6C, M10, M12, or other(n) from the auxiliary edge count
/// and, for six edges, the occupied auxiliary pattern up to the order-24
/// base symmetry group.
std::string classify_m_subtype(const ConnectionReport& report);

/// The registered six-edge patterns as canonical slot sets, A, B, C order.
std::vector<std::vector<int>> m6_patterns();

}  // namespace udg
