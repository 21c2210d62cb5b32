#include "udg/typem.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "udg/symmetry.hpp"

namespace udg {

namespace {

const std::vector<BaseCoord>& auxiliary_orbit() {
  static const std::vector<BaseCoord> members = orbit_members(BaseCoord{{0, 0, 2, 6}, 1});
  return members;
}

// The order-24 group acting on the 12 auxiliary slots.
const PermGroup& auxiliary_group() {
  static const PermGroup group = [] {
    const auto& orbit = auxiliary_orbit();
    auto slot = [&](const BaseCoord& v) {
      return static_cast<int>(std::find(orbit.begin(), orbit.end(), v) - orbit.begin());
    };
    std::vector<Permutation> gens;
    for (int k : {1, 3, 4, 5}) {
      Permutation p;
      for (const auto& v : orbit) p.push_back(slot(tau_apply(k, v)));
      gens.push_back(std::move(p));
    }
    return PermGroup::generated_by(std::move(gens), orbit.size());
  }();
  return group;
}

}  // namespace

TypeMAssembly assemble_type_m(const UnitGraph& l, const UnitGraph& s) {
  const ExactPoint origin{0, 0};
  if (!l.contains(origin) || !s.contains(origin)) {
    throw std::invalid_argument("type-M assembly needs the origin in both L and S");
  }
  const Transform rho = rotor(RotorName::rho);
  const UnitGraph rs = s.transformed(rho);
  TypeMAssembly out;
  out.graph = graph_union(l, rs);

  const ExactReal two_sq(4);
  const ExactReal aux_inner = ExactReal(Rational(17, 6)) - ExactReal::sqrt_of(33, Rational(1, 6));
  const ExactReal aux_outer = ExactReal(Rational(17, 6)) + ExactReal::sqrt_of(33, Rational(1, 6));
  auto is_aux_radius = [&](const ExactReal& r) { return r == aux_inner || r == aux_outer; };

  // Map ρS vertices back to S indices.
  std::vector<int> s_index(rs.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    s_index[static_cast<std::size_t>(*rs.index_of(rho.apply(s.vertices()[i])))] = static_cast<int>(i);
  }
  const auto& orbit = auxiliary_orbit();
  for (const auto& [u, v] : out.graph.edges()) {
    const ExactPoint& pu = out.graph.vertex(u);
    const ExactPoint& pv = out.graph.vertex(v);
    const auto lu = l.index_of(pu), lv = l.index_of(pv);
    const auto su = rs.index_of(pu), sv = rs.index_of(pv);
    // Both inputs are strict, so an edge with both ends in L (or in ρS) is
    // internal; a cross edge joins L∖ρS to ρS∖L.
    std::optional<std::pair<int, int>> ends;
    if (lu && !su && sv && !lv) ends = {{*lu, *sv}};
    if (lv && !sv && su && !lu) ends = {{*lv, *su}};
    if (!ends) continue;
    CrossEdge e;
    e.l_vertex = ends->first;
    e.s_vertex = s_index[static_cast<std::size_t>(ends->second)];
    const ExactReal rl = l.vertex(e.l_vertex).norm_sq();
    const ExactReal rsq = rs.vertex(ends->second).norm_sq();
    if (rl == two_sq && rsq == two_sq) {
      e.kind = CrossEdgeKind::reference;
      ++out.report.reference;
    } else if (is_aux_radius(rl) && is_aux_radius(rsq)) {
      e.kind = CrossEdgeKind::auxiliary;
      ++out.report.auxiliary;
      if (auto bc = to_base_coord(l.vertex(e.l_vertex), 1)) {
        auto it = std::find(orbit.begin(), orbit.end(), *bc);
        if (it != orbit.end()) out.report.auxiliary_slots.push_back(static_cast<int>(it - orbit.begin()));
      }
    } else {
      ++out.report.other;
    }
    out.report.cross_edges.push_back(e);
  }
  std::sort(out.report.auxiliary_slots.begin(), out.report.auxiliary_slots.end());
  out.report.auxiliary_slots.erase(
      std::unique(out.report.auxiliary_slots.begin(), out.report.auxiliary_slots.end()),
      out.report.auxiliary_slots.end());
  return out;
}

std::vector<std::vector<int>> m6_patterns() {
  static const std::vector<std::vector<int>> patterns = [] {
    const auto& orbit = auxiliary_orbit();
    const PermGroup& group = auxiliary_group();
    Permutation rot;
    for (const auto& v : orbit) {
      rot.push_back(static_cast<int>(std::find(orbit.begin(), orbit.end(), tau_apply(1, v)) - orbit.begin()));
    }
    std::vector<std::vector<int>> found;
    for (int mask = 0; mask < (1 << 12); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) != 6) continue;
      bool invariant = true;
      std::vector<int> subset;
      for (int i = 0; i < 12; ++i) {
        if (!(mask & (1 << i))) continue;
        subset.push_back(i);
        if (!(mask & (1 << rot[static_cast<std::size_t>(i)]))) invariant = false;
      }
      if (invariant) found.push_back(canonical_subset(subset, group));
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
  }();
  return patterns;
}

std::string classify_m_subtype(const ConnectionReport& report) {
  const int n = report.auxiliary;
  if (n == 12 && report.auxiliary_slots.size() == 12) return "M12";
  if (n == 10) return "M10";
  if (n == 3) return "M3";
  if (n == 6 && report.auxiliary_slots.size() == 6) {
    const auto canon = canonical_subset(report.auxiliary_slots, auxiliary_group());
    const auto& pats = m6_patterns();
    static const char* names[] = {"M6A", "M6B", "M6C"};
    for (std::size_t i = 0; i < pats.size() && i < 3; ++i) {
      if (pats[i] == canon) return names[i];
    }
  }
  return "other(" + std::to_string(n) + ")";
}

}  // namespace udg
