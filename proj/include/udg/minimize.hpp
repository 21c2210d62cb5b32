#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "udg/checker.hpp"
#include "udg/graph.hpp"
#include "udg/symmetry.hpp"

namespace udg {

/// Critical relationships among W's vertices: deleting all vertices of a
/// hyperedge loses the key property, and no hyperedge contains another.
class Hypergraph {
 public:
  Hypergraph() = default;
  explicit Hypergraph(int universe) : universe_(universe) {}

  int universe() const { return universe_; }
  /// Adds a sorted copy of `edge`. Returns false if it was already present.
  bool add(std::vector<int> edge);
  const std::vector<std::vector<int>>& of_degree(int n) const;
  std::vector<std::vector<int>> all() const;
  std::size_t size() const;
  int max_degree() const { return by_degree_.empty() ? 0 : by_degree_.rbegin()->first; }

  /// True if some hyperedge lies entirely inside `set` (sorted).
  bool covers_edge(std::span<const int> set) const;
  bool is_minimal() const;

 private:
  int universe_ = 0;
  std::map<int, std::vector<std::vector<int>>> by_degree_;
};

/// Base orbits as candidate vertex groups. Points with a base form are
/// grouped by base orbit; other points each form their own group.
struct VertexOrbit {
  std::string label;                // orbit representative or the point itself
  std::size_t full_size = 1;
  std::vector<ExactPoint> points;   // members present in the universe
};
std::vector<VertexOrbit> group_into_orbits(std::span<const ExactPoint> universe);
/// Universe of the base graph ⊕^n H^m restricted to the disk of radius r
/// (orbits whose smaller radius is at most r), as points.
std::vector<ExactPoint> disk_universe(const Rational& r, int n = 4, int m = 2);

struct ReserveOrbit {
  std::size_t orbit = 0;               // index into the orbit list
  std::vector<ExactPoint> new_points;  // members not yet in A
  int max_degree = 0;                  // max degree of a new point in A ∪ orbit
  bool partial = false;                // some members already in A
};

struct Reserve {
  UnitGraph r;
  std::vector<ReserveOrbit> orbits;  // decreasing max_degree
};

/// Orbits that, added to A, give some new vertex degree >= min_degree.
Reserve build_reserve(const UnitGraph& a, std::span<const VertexOrbit> orbits, int min_degree = 4);

struct Strategy {
  enum class Expansion { fill_partial, add_orbits, fill_then_add };
  Expansion expansion = Expansion::fill_then_add;
  int orbits_per_step = 1;        // reserve orbits added per expansion candidate
  int max_expansions = 8;         // expansion candidates tried per iteration
  int max_hyperedge_degree = 2;
  std::uint64_t check_budget = 1'000'000;
  std::size_t mis_cap = 100'000;
  int max_iterations = 10;
  int reserve_min_degree = 4;
  bool use_batch_8421 = true;
  bool use_symmetry = true;       // dedupe by the geometric symmetries preserving W and C
  unsigned jobs = 1;
  bool log_timing = false;        // timestamps make logs non-reproducible
};

struct MinimizationState {
  UnitGraph m;
  std::vector<UnitGraph> set_m;
  UnitGraph a;
  UnitGraph w;
  UnitGraph r;
  std::vector<VertexOrbit> b;  // orbit universe
  KeyProperty kp;
  Hypergraph y;
};

/// Line-oriented JSON records with a sequence number.
class RunLog {
 public:
  explicit RunLog(std::ostream* sink = nullptr, bool timing = false) : sink_(sink), timing_(timing) {}
  void record(const std::string& event, nlohmann::ordered_json fields = nlohmann::ordered_json::object());
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  std::ostream* sink_;
  bool timing_;
  std::vector<std::string> lines_;
};

/// W's vertex permutations induced by plane symmetries that also preserve
/// the companion.
PermGroup property_symmetries(const UnitGraph& w, const Companion& c);

/// Expansion candidates per the strategy, in trial order. Each is a set of
/// new points; with n = 0 orbits and no partial orbits this is empty.
std::vector<std::vector<ExactPoint>> expansion_candidates(const MinimizationState& state, const Strategy& strategy);
/// W = A ∪ first expansion candidate (A itself if there is none).
UnitGraph expand(const MinimizationState& state, const Strategy& strategy);

struct BatchResult {
  std::vector<char> retains;  // per set: W minus the set keeps the property
  std::uint64_t checks = 0;
};
/// Unions of 8 sets are tested first; a retaining union certifies all its
/// members, otherwise the group is halved down to single sets.
BatchResult batch_8421(const PropertyOracle& oracle, const std::vector<std::vector<int>>& sets, unsigned jobs = 1);
BatchResult batch_naive(const PropertyOracle& oracle, const std::vector<std::vector<int>>& sets, unsigned jobs = 1);

Hypergraph build_hypergraph(const PropertyOracle& oracle, int max_degree, const PermGroup& group,
                            bool use_batch = true, unsigned jobs = 1, RunLog* log = nullptr);

/// Deletion sets for the reduction stage, largest first. Vertices of
/// degree-1 hyperedges and pinned vertices never appear.
std::vector<std::vector<int>> candidate_deletions(int w_size, const Hypergraph& y, std::span<const char> pinned,
                                                  std::size_t current_min, std::size_t mis_cap = 100'000);

struct ReduceResult {
  std::vector<std::vector<int>> kept;  // surviving W indices per minimal graph
  std::vector<UnitGraph> set_m;
  std::size_t order = 0;
  bool partial = false;  // budget ran out
  std::uint64_t checks = 0;
};

ReduceResult reduce(const UnitGraph& w, const PropertyOracle& oracle, const Hypergraph& y, const Strategy& strategy,
                    const PermGroup& group, std::optional<std::size_t> current_min = std::nullopt);

struct RoughOptions {
  std::optional<ExactReal> trim_radius_sq;
  int peel_threshold = 0;     // remove vertices of degree < threshold until fixpoint
  bool fix_critical = false;  // report vertices whose single deletion loses the property
  bool orbit_removal = false;
  bool indicators = false;
};

struct Indicators {
  std::size_t free_vertices = 0;
  std::size_t hyperedges_deg1 = 0;
  std::size_t hyperedges_deg2 = 0;
  std::size_t max_independent_set = 0;
};

struct RoughResult {
  UnitGraph g;
  std::vector<std::string> passes;  // "trim: kept", "peel: rolled back", ...
  std::vector<int> fixed;           // indices in the returned g
  std::optional<Indicators> indicators;
};

RoughResult rough_reduce(const UnitGraph& g, const KeyProperty& kp, const RoughOptions& options,
                         const SolverBackend* backend = nullptr);

Indicators compute_indicators(int w_size, const Hypergraph& y, std::span<const char> pinned);

/// Initial state with A = M = the given graph and universe B.
MinimizationState initial_state(UnitGraph a, std::vector<VertexOrbit> b, KeyProperty kp);

MinimizationState iterate(MinimizationState state, const Strategy& strategy, RunLog& log,
                          const SolverBackend* backend = nullptr);

}  // namespace udg
