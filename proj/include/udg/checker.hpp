#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "udg/graph.hpp"
#include "udg/sat.hpp"
#include "udg/solver.hpp"

namespace udg {

/// Raised when a mono/non-mono question is asked of a graph that is not
/// k-colorable: every pair would qualify, so no answer is given.
struct VacuousError : std::logic_error {
  using std::logic_error::logic_error;
};

struct Companion {
  enum class Kind { none, subgraph, mono_edge, nonmono_clique };
  Kind kind = Kind::none;
  UnitGraph graph;                 // subgraph: C = transform(graph)
  Transform transform;             // identity multiply by default
  std::vector<ExactPoint> points;  // mono_edge: the pair; nonmono_clique: the set

  static Companion none() { return {}; }
  static Companion subgraph(UnitGraph g, Transform t = {});
  static Companion mono_edge(ExactPoint a, ExactPoint b);
  static Companion nonmono_clique(std::vector<ExactPoint> set);

  std::string describe() const;
};

struct KeyProperty {
  int k = 4;
  Companion companion;
};

/// W ∪ C as a coloring instance. Vertices 0..w_count-1 are W's vertices in
/// W's order; companion-only vertices follow.
struct RealizedInstance {
  ColoringGraph graph;
  int w_count = 0;
  std::vector<char> pinned;  // per W vertex: never deleted (shared with, or named by, C)
  std::vector<int> clique;   // default symmetry-breaking clique, may be empty
};

RealizedInstance realize(const UnitGraph& w, const Companion& c, int k);

/// (0,0), (1,0), (1/2, √3/2) when all three are vertices, else the
/// lexicographically first triangle; empty when k < 3 or none exists.
std::vector<int> default_break_clique(const ColoringGraph& g, const std::vector<ExactPoint>* coords, int k);

bool is_k_colorable(const UnitGraph& g, int k, const SolverBackend* backend = nullptr);
bool is_k_colorable(const ColoringGraph& g, int k, std::span<const int> break_clique = {},
                    const SolverBackend* backend = nullptr);

/// Least k <= k_max with g k-colorable; throws std::out_of_range otherwise.
int chromatic_number(const UnitGraph& g, int k_max, const SolverBackend* backend = nullptr);

bool is_mono_pair(const UnitGraph& g, int u, int v, int k, const SolverBackend* backend = nullptr);

enum class NonMonoMethod { clique_companion, equal_chain };

/// `five_vertex_break` applies to equal_chain on an equilateral √3 triple
/// with a common unit neighbour c: besides the triple it fixes c and one
/// more neighbour of c, five vertices in one go.
bool is_non_mono_set(const UnitGraph& g, std::span<const int> set, int k,
                     NonMonoMethod method = NonMonoMethod::clique_companion,
                     const SolverBackend* backend = nullptr, bool five_vertex_break = false);

/// pair_a = (p, q), pair_b = (p, r) with q, r adjacent in g. True iff both
/// pairs are k-mono in g minus the edge qr, which certifies χ(g) > k.
bool verify_spindle(const UnitGraph& g, std::pair<int, int> pair_a, std::pair<int, int> pair_b, int k,
                    const SolverBackend* backend = nullptr);

/// True iff W ∪ C is not k-colorable.
bool key_property(const UnitGraph& w, const KeyProperty& kp, const SolverBackend* backend = nullptr);

/// Key property of subgraphs of one fixed W, sharing the common CNF part.
/// Results are memoized on the surviving set; safe for concurrent use.
class PropertyOracle {
 public:
  PropertyOracle(const UnitGraph& w, const KeyProperty& kp, const SolverBackend* backend = nullptr);

  /// `surviving` has one flag per W vertex. Pinned vertices count as present.
  bool holds(std::span<const char> surviving) const;
  bool holds_without(std::span<const int> removed) const;

  const RealizedInstance& instance() const { return inst_; }
  const SplitFormula& split() const { return split_; }
  std::size_t w_size() const { return static_cast<std::size_t>(inst_.w_count); }
  bool pinned(int v) const { return inst_.pinned[static_cast<std::size_t>(v)] != 0; }
  std::uint64_t solver_calls() const { return calls_.load(); }
  std::uint64_t queries() const { return queries_.load(); }

 private:
  RealizedInstance inst_;
  SplitFormula split_;
  const SolverBackend* backend_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, bool> memo_;
  mutable std::atomic<std::uint64_t> calls_{0};
  mutable std::atomic<std::uint64_t> queries_{0};
};

}  // namespace udg
