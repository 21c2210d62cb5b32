#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "udg/graph.hpp"

namespace udg {

/// Integer label of a base-graph point (a + b√33 + ic√3 + id√11) / (4·3^h).
struct BaseCoord {
  std::array<long, 4> abcd{0, 0, 0, 0};
  int h = 1;

  long a() const { return abcd[0]; }
  long b() const { return abcd[1]; }
  long c() const { return abcd[2]; }
  long d() const { return abcd[3]; }

  /// a − b + c + d ≡ 0 (mod 4); only meaningful for h = 1.
  bool satisfies_parity() const;
  ExactPoint to_point() const;
  /// "(a,b,c,d)"
  std::string to_string() const;

  friend auto operator<=>(const BaseCoord&, const BaseCoord&) = default;
  friend bool operator==(const BaseCoord&, const BaseCoord&) = default;
};

/// Recovers (a,b,c,d,h). With `h` unset, tries h = 1 first and then 0..6;
/// returns nullopt when the point has no such form (e.g. √5 terms).
std::optional<BaseCoord> to_base_coord(const ExactPoint& p, std::optional<int> h = std::nullopt);

/// τ0 identity, τ1/τ2 rotation by ±2π/3, τ3/τ4 reflection in the vertical /
/// horizontal axis, τ5 conjugation √33 → −√33. Throws std::domain_error if
/// the rotation leaves the integer lattice (input was not a base point).
BaseCoord tau_apply(int k, const BaseCoord& v);

/// Closure of v under τ1..τ5, in orbit order: fewest nonzero entries, then
/// fewest negative entries, then lexicographic. The first member labels the orbit.
std::vector<BaseCoord> orbit_members(const BaseCoord& v);
BaseCoord orbit_representative(const BaseCoord& v);

struct Orbit {
  BaseCoord representative;
  std::vector<BaseCoord> members;  // input points lying on this orbit
  std::size_t full_size = 0;       // size of the complete orbit: 1, 6, 12 or 24
  ExactReal min_radius_sq;         // smaller of |v|^2 and |τ5 v|^2

  bool filled() const { return members.size() == full_size; }
};

/// Partitions points into base orbits, sorted by full orbit size, then by
/// the smaller radius, then by representative (descending).
std::vector<Orbit> orbit_decompose(std::span<const BaseCoord> points);

/// Vertices of the base graph ⊕^n H^m as integer labels (h = 1, so m <= 2).
std::vector<BaseCoord> base_graph_coords(int n, int m);

/// Orbits of ⊕^n H^m whose smaller radius is at most r, i.e. the orbit
/// representatives satisfying (a − b√33)² + (c√3 − d√11)² <= (12r)².
std::vector<Orbit> enumerate_disk_orbits(const Rational& r, int n = 4, int m = 2);

struct DiskOrbitReport {
  std::size_t orbits = 0;
  std::size_t selected = 0;
  std::size_t selected_with_zero_product = 0;  // abcd = 0 among selected
};
DiskOrbitReport abcd_report(const std::vector<Orbit>& orbits, std::span<const BaseCoord> selected_reps);

using Permutation = std::vector<int>;

/// Permutation group on {0..degree-1}, stored as its full element list.
class PermGroup {
 public:
  static PermGroup trivial(std::size_t degree);
  static PermGroup generated_by(std::vector<Permutation> generators, std::size_t degree);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }

  /// Images of `point` under the group (sorted, distinct).
  std::vector<int> orbit_of(int point) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

/// Point maps drawn from the τ group composed with η^k (|k| <= 4).
struct PlaneSymmetry {
  int rotation = 0;  // powers of τ1
  bool reflect_vertical = false;
  bool reflect_horizontal = false;
  bool conjugate = false;
  int eta_power = 0;

  ExactPoint apply(const ExactPoint& p) const;
};
std::vector<PlaneSymmetry> candidate_symmetries(bool with_eta = true);

/// Vertex permutations induced by candidate isometries that map the vertex
/// set onto itself. A subgroup of Aut(g).
PermGroup geometric_auts(const UnitGraph& g);

/// Group restricted to elements that fix `fixed` setwise.
PermGroup setwise_stabilizer(const PermGroup& group, std::span<const int> fixed);

/// Lexicographically least image of a sorted subset under the group.
std::vector<int> canonical_subset(std::span<const int> subset, const PermGroup& group);
/// Every subset replaced by its canonical image; duplicates removed; sorted.
std::vector<std::vector<int>> canonicalize_subsets(std::vector<std::vector<int>> subsets,
                                                   const PermGroup& group);

struct OrbitRow {
  BaseCoord orbit;
  std::size_t full_size = 0;
  int max_degree = 0;
  std::size_t in_m = 0;
  std::size_t setm_min = 0;
  std::size_t setm_max = 0;
  std::size_t in_a = 0;
  bool filled = false;  // M fills the orbit
};

/// One row per base orbit meeting A. Throws if a vertex has no base form.
std::vector<OrbitRow> orbit_table(const UnitGraph& a, const UnitGraph& m, const std::vector<UnitGraph>& set_m);
/// Tab-separated rendering with a header naming the graphs.
std::string format_orbit_table(const std::vector<OrbitRow>& rows, std::size_t m_order, std::size_t a_order);

}  // namespace udg
