#include "udg/minimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include "udg/parallel.hpp"

namespace udg {

// ---------------------------------------------------------------- hypergraph

bool Hypergraph::add(std::vector<int> edge) {
  if (edge.empty()) throw std::invalid_argument("empty hyperedge");
  std::sort(edge.begin(), edge.end());
  auto& bucket = by_degree_[static_cast<int>(edge.size())];
  auto it = std::lower_bound(bucket.begin(), bucket.end(), edge);
  if (it != bucket.end() && *it == edge) return false;
  bucket.insert(it, std::move(edge));
  return true;
}

const std::vector<std::vector<int>>& Hypergraph::of_degree(int n) const {
  static const std::vector<std::vector<int>> none;
  auto it = by_degree_.find(n);
  return it == by_degree_.end() ? none : it->second;
}

std::vector<std::vector<int>> Hypergraph::all() const {
  std::vector<std::vector<int>> out;
  for (const auto& [n, edges] : by_degree_) out.insert(out.end(), edges.begin(), edges.end());
  return out;
}

std::size_t Hypergraph::size() const {
  std::size_t n = 0;
  for (const auto& [d, edges] : by_degree_) n += edges.size();
  return n;
}

bool Hypergraph::covers_edge(std::span<const int> set) const {
  for (const auto& [d, edges] : by_degree_) {
    if (d > static_cast<int>(set.size())) break;
    for (const auto& e : edges) {
      if (std::includes(set.begin(), set.end(), e.begin(), e.end())) return true;
    }
  }
  return false;
}

bool Hypergraph::is_minimal() const {
  const auto edges = all();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (i == j || edges[i].size() > edges[j].size()) continue;
      if (std::includes(edges[j].begin(), edges[j].end(), edges[i].begin(), edges[i].end())) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------ orbits

std::vector<VertexOrbit> group_into_orbits(std::span<const ExactPoint> universe) {
  std::vector<VertexOrbit> out;
  std::map<std::string, std::size_t> slot;
  for (const auto& p : universe) {
    std::string label;
    std::size_t full = 1;
    if (auto bc = to_base_coord(p, 1); bc && bc->satisfies_parity()) {
      try {
        const auto members = orbit_members(*bc);
        label = members.front().to_string();
        full = members.size();
      } catch (const std::domain_error&) {
        label.clear();
      }
    }
    if (label.empty()) label = p.to_string();
    auto [it, fresh] = slot.try_emplace(label, out.size());
    if (fresh) out.push_back({label, full, {}});
    auto& pts = out[it->second].points;
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  return out;
}

std::vector<ExactPoint> disk_universe(const Rational& r, int n, int m) {
  std::vector<ExactPoint> out;
  for (const auto& o : enumerate_disk_orbits(r, n, m)) {
    for (const auto& bc : o.members) out.push_back(bc.to_point());
  }
  return out;
}

namespace {

struct Approx {
  double x, y;
};

Approx approx(const ExactPoint& p) { return {p.re.to_double(), p.im.to_double()}; }

bool maybe_unit(const Approx& a, const Approx& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return std::abs(dx * dx + dy * dy - 1.0) < 1e-6;
}

}  // namespace

Reserve build_reserve(const UnitGraph& a, std::span<const VertexOrbit> orbits, int min_degree) {
  std::vector<Approx> a_approx;
  for (const auto& p : a.vertices()) a_approx.push_back(approx(p));
  Reserve out;
  for (std::size_t oi = 0; oi < orbits.size(); ++oi) {
    const auto& orbit = orbits[oi];
    ReserveOrbit ro;
    ro.orbit = oi;
    for (const auto& p : orbit.points) {
      if (!a.contains(p)) ro.new_points.push_back(p);
    }
    if (ro.new_points.empty()) continue;
    ro.partial = ro.new_points.size() < orbit.points.size();
    std::vector<Approx> n_approx;
    for (const auto& p : ro.new_points) n_approx.push_back(approx(p));
    for (std::size_t i = 0; i < ro.new_points.size(); ++i) {
      int deg = 0;
      for (std::size_t j = 0; j < a_approx.size(); ++j) {
        if (maybe_unit(n_approx[i], a_approx[j]) && is_unit(ro.new_points[i], a.vertex(static_cast<int>(j)))) ++deg;
      }
      for (std::size_t j = 0; j < n_approx.size(); ++j) {
        if (j != i && maybe_unit(n_approx[i], n_approx[j]) && is_unit(ro.new_points[i], ro.new_points[j])) ++deg;
      }
      ro.max_degree = std::max(ro.max_degree, deg);
    }
    if (ro.max_degree >= min_degree) out.orbits.push_back(std::move(ro));
  }
  std::stable_sort(out.orbits.begin(), out.orbits.end(),
                   [](const ReserveOrbit& x, const ReserveOrbit& y) { return x.max_degree > y.max_degree; });
  std::vector<ExactPoint> pts = a.vertices();
  for (const auto& ro : out.orbits) pts.insert(pts.end(), ro.new_points.begin(), ro.new_points.end());
  out.r = UnitGraph::from_points(std::move(pts));
  return out;
}

// ------------------------------------------------------------------ logging

void RunLog::record(const std::string& event, nlohmann::ordered_json fields) {
  nlohmann::ordered_json rec;
  rec["seq"] = lines_.size();
  rec["event"] = event;
  if (timing_) {
    rec["time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
  }
  for (auto& [key, value] : fields.items()) rec[key] = value;
  lines_.push_back(rec.dump());
  if (sink_) *sink_ << lines_.back() << '\n' << std::flush;
}

// ---------------------------------------------------------------- symmetry

PermGroup property_symmetries(const UnitGraph& w, const Companion& c) {
  std::vector<ExactPoint> fixed_set;
  switch (c.kind) {
    case Companion::Kind::none:
      break;
    case Companion::Kind::subgraph:
      fixed_set = c.graph.transformed(c.transform).vertices();
      break;
    case Companion::Kind::mono_edge:
    case Companion::Kind::nonmono_clique:
      fixed_set = c.points;
      break;
  }
  std::unordered_set<ExactPoint, ExactPointHash> fixed(fixed_set.begin(), fixed_set.end());
  std::vector<Permutation> perms;
  for (const auto& sym : candidate_symmetries()) {
    bool ok = true;
    for (const auto& p : fixed_set) {
      if (!fixed.count(sym.apply(p))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Permutation perm(w.size());
    for (std::size_t i = 0; i < w.size() && ok; ++i) {
      auto j = w.index_of(sym.apply(w.vertex(static_cast<int>(i))));
      if (!j) {
        ok = false;
      } else {
        perm[i] = *j;
      }
    }
    if (ok) perms.push_back(std::move(perm));
  }
  return PermGroup::generated_by(std::move(perms), w.size());
}

// --------------------------------------------------------------- expansion

std::vector<std::vector<ExactPoint>> expansion_candidates(const MinimizationState& state, const Strategy& strategy) {
  std::vector<std::vector<ExactPoint>> out;
  const bool want_fill = strategy.expansion != Strategy::Expansion::add_orbits;
  const bool want_add = strategy.expansion != Strategy::Expansion::fill_partial;
  if (want_fill) {
    // Partially filled orbits first, smallest orbits first.
    std::vector<std::size_t> partial;
    for (std::size_t i = 0; i < state.b.size(); ++i) {
      const auto& o = state.b[i];
      std::size_t present = 0;
      for (const auto& p : o.points) present += state.a.contains(p) ? 1 : 0;
      if (present > 0 && present < o.points.size()) partial.push_back(i);
    }
    std::stable_sort(partial.begin(), partial.end(),
                     [&](std::size_t x, std::size_t y) { return state.b[x].full_size < state.b[y].full_size; });
    std::vector<ExactPoint> fill;
    for (std::size_t i : partial) {
      for (const auto& p : state.b[i].points) {
        if (!state.a.contains(p)) fill.push_back(p);
      }
    }
    if (!fill.empty()) out.push_back(std::move(fill));
  }
  if (want_add && strategy.orbits_per_step > 0) {
    const Reserve reserve = build_reserve(state.a, state.b, strategy.reserve_min_degree);
    std::vector<const ReserveOrbit*> fresh;
    for (const auto& ro : reserve.orbits) {
      if (!ro.partial) fresh.push_back(&ro);
    }
    std::stable_sort(fresh.begin(), fresh.end(), [&](const ReserveOrbit* x, const ReserveOrbit* y) {
      return state.b[x->orbit].full_size < state.b[y->orbit].full_size;
    });
    for (std::size_t i = 0; i < fresh.size(); i += static_cast<std::size_t>(strategy.orbits_per_step)) {
      std::vector<ExactPoint> chunk;
      for (std::size_t j = i; j < std::min(fresh.size(), i + static_cast<std::size_t>(strategy.orbits_per_step)); ++j) {
        chunk.insert(chunk.end(), fresh[j]->new_points.begin(), fresh[j]->new_points.end());
      }
      out.push_back(std::move(chunk));
    }
  }
  if (out.size() > static_cast<std::size_t>(std::max(0, strategy.max_expansions))) {
    out.resize(static_cast<std::size_t>(std::max(0, strategy.max_expansions)));
  }
  return out;
}

UnitGraph expand(const MinimizationState& state, const Strategy& strategy) {
  const auto cands = expansion_candidates(state, strategy);
  if (cands.empty()) return state.a;
  std::vector<ExactPoint> pts = state.a.vertices();
  pts.insert(pts.end(), cands.front().begin(), cands.front().end());
  return UnitGraph::from_points(std::move(pts));
}

// ---------------------------------------------------------------- batching

namespace {

std::vector<int> union_of(const std::vector<std::vector<int>>& sets, std::size_t lo, std::size_t hi) {
  std::vector<int> u;
  for (std::size_t i = lo; i < hi; ++i) u.insert(u.end(), sets[i].begin(), sets[i].end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

struct GroupVerdict {
  std::vector<char> retains;
  std::uint64_t checks = 0;
};

void split_test(const PropertyOracle& oracle, const std::vector<std::vector<int>>& sets, std::size_t lo, std::size_t hi,
                std::size_t base, GroupVerdict& out) {
  ++out.checks;
  const bool retains = oracle.holds_without(union_of(sets, lo, hi));
  if (retains) {
    for (std::size_t i = lo; i < hi; ++i) out.retains[i - base] = 1;
    return;
  }
  if (hi - lo == 1) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  split_test(oracle, sets, lo, mid, base, out);
  split_test(oracle, sets, mid, hi, base, out);
}

}  // namespace

BatchResult batch_8421(const PropertyOracle& oracle, const std::vector<std::vector<int>>& sets, unsigned jobs) {
  const std::size_t groups = (sets.size() + 7) / 8;
  auto verdicts = parallel_map(groups, jobs, [&](std::size_t g) {
    const std::size_t lo = 8 * g, hi = std::min(sets.size(), lo + 8);
    GroupVerdict v;
    v.retains.assign(hi - lo, 0);
    split_test(oracle, sets, lo, hi, lo, v);
    return v;
  });
  BatchResult out;
  for (auto& v : verdicts) {
    out.retains.insert(out.retains.end(), v.retains.begin(), v.retains.end());
    out.checks += v.checks;
  }
  return out;
}

BatchResult batch_naive(const PropertyOracle& oracle, const std::vector<std::vector<int>>& sets, unsigned jobs) {
  auto v = parallel_map(sets.size(), jobs, [&](std::size_t i) { return static_cast<char>(oracle.holds_without(sets[i])); });
  return {std::vector<char>(v.begin(), v.end()), sets.size()};
}

// -------------------------------------------------------------- hypergraph Y

namespace {

// Calls fn on each sorted k-subset of `pool` (sorted); fn returns false to stop.
template <typename Fn>
bool for_each_subset(const std::vector<int>& pool, std::size_t k, Fn&& fn) {
  if (k > pool.size()) return true;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> cur(k);
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) cur[i] = pool[idx[i]];
    if (!fn(cur)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<int> image_of(const std::vector<int>& set, const Permutation& e) {
  std::vector<int> out;
  out.reserve(set.size());
  for (int v : set) out.push_back(e[static_cast<std::size_t>(v)]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Hypergraph build_hypergraph(const PropertyOracle& oracle, int max_degree, const PermGroup& group, bool use_batch,
                            unsigned jobs, RunLog* log) {
  const int n = static_cast<int>(oracle.w_size());
  if (!oracle.holds(std::vector<char>(oracle.w_size(), 1))) throw std::runtime_error("working graph lost property");
  if (group.degree() != oracle.w_size()) throw std::invalid_argument("symmetry group does not act on W");
  Hypergraph y(n);
  std::vector<int> pool;
  for (int v = 0; v < n; ++v) {
    if (!oracle.pinned(v)) pool.push_back(v);
  }
  for (int d = 1; d <= max_degree; ++d) {
    std::set<std::vector<int>> reps;
    std::size_t candidates = 0;
    for_each_subset(pool, static_cast<std::size_t>(d), [&](const std::vector<int>& s) {
      if (!y.covers_edge(s)) {
        ++candidates;
        reps.insert(canonical_subset(s, group));
      }
      return true;
    });
    std::vector<std::vector<int>> tests(reps.begin(), reps.end());
    const BatchResult r = use_batch ? batch_8421(oracle, tests, jobs) : batch_naive(oracle, tests, jobs);
    std::size_t found = 0;
    for (std::size_t i = 0; i < tests.size(); ++i) {
      if (r.retains[i]) continue;
      for (const auto& e : group.elements()) found += y.add(image_of(tests[i], e)) ? 1 : 0;
    }
    if (log) {
      log->record("hyperedges", {{"degree", d},
                                 {"candidates", candidates},
                                 {"tested", tests.size()},
                                 {"found", found},
                                 {"checks", r.checks}});
    }
  }
  return y;
}

// -------------------------------------------------------- candidate deletions

namespace {

// Maximal independent sets of the graph on `verts` with edge test `adj`,
// by Bron–Kerbosch with pivoting on the complement.
void bron_kerbosch(std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                   const std::vector<std::vector<char>>& conflict, std::vector<std::vector<int>>& out,
                   std::size_t cap) {
  if (out.size() >= cap) return;
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  // In the complement graph, u and v are neighbours iff they do not conflict.
  auto compl_adj = [&](int u, int v) { return u != v && !conflict[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; };
  int pivot = -1;
  std::size_t best = 0;
  for (const auto* side : {&p, &x}) {
    for (int u : *side) {
      std::size_t cnt = 0;
      for (int v : p) cnt += compl_adj(u, v) ? 1 : 0;
      if (pivot < 0 || cnt > best) pivot = u, best = cnt;
    }
  }
  std::vector<int> branch;
  for (int v : p) {
    if (!compl_adj(pivot, v)) branch.push_back(v);
  }
  for (int v : branch) {
    std::vector<int> np, nx;
    for (int u : p) {
      if (compl_adj(v, u)) np.push_back(u);
    }
    for (int u : x) {
      if (compl_adj(v, u)) nx.push_back(u);
    }
    r.push_back(v);
    bron_kerbosch(r, std::move(np), std::move(nx), conflict, out, cap);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
    if (out.size() >= cap) return;
  }
}

struct Partition {
  std::vector<int> fixed, conflicted, free;
  std::vector<std::vector<char>> conflict;  // over all W indices
};

Partition partition(int w_size, const Hypergraph& y, std::span<const char> pinned) {
  Partition pt;
  std::vector<char> fixed(static_cast<std::size_t>(w_size), 0), in2(static_cast<std::size_t>(w_size), 0);
  for (int v = 0; v < w_size; ++v) fixed[static_cast<std::size_t>(v)] = pinned.empty() ? 0 : pinned[static_cast<std::size_t>(v)];
  for (const auto& e : y.of_degree(1)) fixed[static_cast<std::size_t>(e[0])] = 1;
  pt.conflict.assign(static_cast<std::size_t>(w_size), std::vector<char>(static_cast<std::size_t>(w_size), 0));
  for (const auto& e : y.of_degree(2)) {
    if (fixed[static_cast<std::size_t>(e[0])] || fixed[static_cast<std::size_t>(e[1])]) continue;
    in2[static_cast<std::size_t>(e[0])] = in2[static_cast<std::size_t>(e[1])] = 1;
    pt.conflict[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(e[1])] = 1;
    pt.conflict[static_cast<std::size_t>(e[1])][static_cast<std::size_t>(e[0])] = 1;
  }
  for (int v = 0; v < w_size; ++v) {
    if (fixed[static_cast<std::size_t>(v)]) {
      pt.fixed.push_back(v);
    } else if (in2[static_cast<std::size_t>(v)]) {
      pt.conflicted.push_back(v);
    } else {
      pt.free.push_back(v);
    }
  }
  return pt;
}

std::vector<std::vector<int>> maximal_independent_sets(const Partition& pt, std::size_t cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> r;
  bron_kerbosch(r, pt.conflicted, {}, pt.conflict, out, cap);
  for (auto& s : out) std::sort(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::vector<int>> candidate_deletions(int w_size, const Hypergraph& y, std::span<const char> pinned,
                                                  std::size_t current_min, std::size_t mis_cap) {
  const Partition pt = partition(w_size, y, pinned);
  std::vector<std::vector<int>> seeds;
  if (pt.conflicted.empty()) {
    seeds.push_back({});
  } else {
    seeds = maximal_independent_sets(pt, mis_cap);
  }
  std::set<std::vector<int>> done;
  std::vector<std::vector<int>> work;
  for (auto& s : seeds) {
    s.insert(s.end(), pt.free.begin(), pt.free.end());
    std::sort(s.begin(), s.end());
    work.push_back(std::move(s));
  }
  // Split sets that would delete a whole higher-degree hyperedge.
  std::set<std::vector<int>> seen;
  while (!work.empty()) {
    std::vector<int> s = std::move(work.back());
    work.pop_back();
    if (!seen.insert(s).second) continue;
    const std::vector<int>* hit = nullptr;
    for (int d = 3; d <= y.max_degree() && !hit; ++d) {
      for (const auto& e : y.of_degree(d)) {
        if (std::includes(s.begin(), s.end(), e.begin(), e.end())) {
          hit = &e;
          break;
        }
      }
    }
    if (!hit) {
      done.insert(std::move(s));
      continue;
    }
    for (int v : *hit) {
      std::vector<int> t;
      for (int u : s) {
        if (u != v) t.push_back(u);
      }
      work.push_back(std::move(t));
    }
  }
  std::vector<std::vector<int>> out;
  for (const auto& s : done) {
    if (s.empty()) continue;
    if (static_cast<std::size_t>(w_size) - s.size() > current_min) continue;
    out.push_back(s);
  }
  // Drop sets contained in another candidate: their subsets are searched anyway.
  std::vector<std::vector<int>> maximal;
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool contained = false;
    for (std::size_t j = 0; j < out.size() && !contained; ++j) {
      contained = i != j && out[j].size() > out[i].size() &&
                  std::includes(out[j].begin(), out[j].end(), out[i].begin(), out[i].end());
    }
    if (!contained) maximal.push_back(out[i]);
  }
  std::stable_sort(maximal.begin(), maximal.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return maximal;
}

// ------------------------------------------------------------------ reduce

ReduceResult reduce(const UnitGraph& w, const PropertyOracle& oracle, const Hypergraph& y, const Strategy& strategy,
                    const PermGroup& group, std::optional<std::size_t> current_min) {
  const std::size_t n = w.size();
  if (oracle.w_size() != n) throw std::invalid_argument("oracle does not match W");
  const std::uint64_t calls_before = oracle.queries();
  ReduceResult out;
  const std::size_t cm = std::min(current_min.value_or(n), n);
  std::vector<char> pinned(n);
  for (std::size_t v = 0; v < n; ++v) pinned[v] = oracle.pinned(static_cast<int>(v));
  const auto cands = candidate_deletions(static_cast<int>(n), y, pinned, cm, strategy.mis_cap);
  const std::size_t s_floor = n > cm ? n - cm : 0;
  const std::size_t s_max = cands.empty() ? 0 : cands.front().size();

  std::vector<std::vector<int>> found;  // deletion sets
  std::size_t found_s = 0;
  std::uint64_t budget_used = 0;
  for (std::size_t s = s_max; s >= std::max<std::size_t>(s_floor, 1) && found.empty() && !out.partial; --s) {
    std::set<std::vector<int>> level;
    for (const auto& d : cands) {
      if (d.size() < s) break;
      const bool complete = for_each_subset(d, s, [&](const std::vector<int>& sub) {
        level.insert(canonical_subset(sub, group));
        return budget_used + level.size() <= strategy.check_budget;
      });
      if (!complete) {
        out.partial = true;
        break;
      }
    }
    if (out.partial) break;
    std::vector<std::vector<int>> tests(level.begin(), level.end());
    budget_used += tests.size();
    const BatchResult r = strategy.use_batch_8421 ? batch_8421(oracle, tests, strategy.jobs)
                                                  : batch_naive(oracle, tests, strategy.jobs);
    for (std::size_t i = 0; i < tests.size(); ++i) {
      if (r.retains[i]) found.push_back(tests[i]);
    }
    found_s = s;
    if (s == 1) break;
  }

  // Polish: a found graph that still allows a single deletion is not minimal.
  for (bool improved = !found.empty(); improved;) {
    improved = false;
    std::set<std::vector<int>> deeper;
    for (const auto& d : found) {
      for (std::size_t v = 0; v < n; ++v) {
        if (pinned[v] || std::binary_search(d.begin(), d.end(), static_cast<int>(v))) continue;
        std::vector<int> e = d;
        e.insert(std::upper_bound(e.begin(), e.end(), static_cast<int>(v)), static_cast<int>(v));
        ++budget_used;
        if (oracle.holds_without(e)) deeper.insert(canonical_subset(e, group));
      }
    }
    if (!deeper.empty()) {
      found.assign(deeper.begin(), deeper.end());
      ++found_s;
      improved = true;
    }
  }

  if (found.empty()) {
    found.push_back({});
    found_s = 0;
  }
  for (auto& d : found) d = canonical_subset(d, group);
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  for (const auto& d : found) {
    std::vector<int> keep;
    for (std::size_t v = 0; v < n; ++v) {
      if (!std::binary_search(d.begin(), d.end(), static_cast<int>(v))) keep.push_back(static_cast<int>(v));
    }
    out.set_m.push_back(w.induced(keep));
    out.kept.push_back(std::move(keep));
  }
  out.order = n - found_s;
  out.checks = oracle.queries() - calls_before;
  return out;
}

// ------------------------------------------------------------ rough passes

Indicators compute_indicators(int w_size, const Hypergraph& y, std::span<const char> pinned) {
  const Partition pt = partition(w_size, y, pinned);
  Indicators ind;
  ind.free_vertices = pt.free.size();
  ind.hyperedges_deg1 = y.of_degree(1).size();
  ind.hyperedges_deg2 = y.of_degree(2).size();
  for (const auto& s : maximal_independent_sets(pt, 100'000)) ind.max_independent_set = std::max(ind.max_independent_set, s.size());
  return ind;
}

namespace {

bool retains(const UnitGraph& g, const KeyProperty& kp, const SolverBackend* backend) {
  try {
    return key_property(g, kp, backend);
  } catch (const std::invalid_argument&) {
    return false;  // companion points were removed
  }
}

std::vector<char> pinned_of(const UnitGraph& g, const KeyProperty& kp) { return realize(g, kp.companion, kp.k).pinned; }

}  // namespace

RoughResult rough_reduce(const UnitGraph& g, const KeyProperty& kp, const RoughOptions& options,
                         const SolverBackend* backend) {
  if (!key_property(g, kp, backend)) throw std::invalid_argument("graph does not have the key property");
  RoughResult out;
  UnitGraph cur = g;
  auto attempt = [&](const std::string& name, const UnitGraph& next) {
    if (next.size() == cur.size()) {
      out.passes.push_back(name + ": no change");
    } else if (retains(next, kp, backend)) {
      out.passes.push_back(name + ": " + std::to_string(cur.size()) + " -> " + std::to_string(next.size()));
      cur = next;
    } else {
      out.passes.push_back(name + ": rolled back");
    }
  };
  if (options.trim_radius_sq) attempt("trim", trim(cur, *options.trim_radius_sq));
  if (options.peel_threshold > 0) {
    const auto pinned = pinned_of(cur, kp);
    std::vector<char> alive(cur.size(), 1);
    std::vector<int> deg(cur.size());
    for (std::size_t v = 0; v < cur.size(); ++v) deg[v] = cur.degree(static_cast<int>(v));
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t v = 0; v < cur.size(); ++v) {
        if (!alive[v] || pinned[v] || deg[v] >= options.peel_threshold) continue;
        alive[v] = 0;
        changed = true;
        for (int u : cur.adjacency()[v]) --deg[static_cast<std::size_t>(u)];
      }
    }
    std::vector<int> keep;
    for (std::size_t v = 0; v < cur.size(); ++v) {
      if (alive[v]) keep.push_back(static_cast<int>(v));
    }
    attempt("peel", cur.induced(keep));
  }
  if (options.orbit_removal) {
    auto orbits = group_into_orbits(cur.vertices());
    std::stable_sort(orbits.begin(), orbits.end(),
                     [](const VertexOrbit& a, const VertexOrbit& b) { return a.points.size() > b.points.size(); });
    std::size_t removed = 0;
    for (const auto& o : orbits) {
      const auto pinned = pinned_of(cur, kp);
      std::vector<int> drop;
      for (const auto& p : o.points) {
        if (auto i = cur.index_of(p); i && !pinned[static_cast<std::size_t>(*i)]) drop.push_back(*i);
      }
      if (drop.empty()) continue;
      const UnitGraph next = cur.without(drop);
      if (retains(next, kp, backend)) {
        cur = next;
        ++removed;
      }
    }
    out.passes.push_back("orbits: removed " + std::to_string(removed) + " of " + std::to_string(orbits.size()));
  }
  if (options.fix_critical || options.indicators) {
    const PropertyOracle oracle(cur, kp, backend);
    if (options.fix_critical) {
      for (int v = 0; v < static_cast<int>(cur.size()); ++v) {
        const int one[1] = {v};
        if (!oracle.pinned(v) && !oracle.holds_without(one)) out.fixed.push_back(v);
      }
      out.passes.push_back("fix: " + std::to_string(out.fixed.size()) + " critical");
    }
    if (options.indicators) {
      const Hypergraph y = build_hypergraph(oracle, 2, PermGroup::trivial(cur.size()));
      out.indicators = compute_indicators(static_cast<int>(cur.size()), y, oracle.instance().pinned);
    }
  }
  out.g = std::move(cur);
  return out;
}

// ------------------------------------------------------------------- iterate

MinimizationState initial_state(UnitGraph a, std::vector<VertexOrbit> b, KeyProperty kp) {
  if (!key_property(a, kp)) throw std::invalid_argument("initial graph does not have the key property");
  MinimizationState s;
  s.m = a;
  s.set_m = {a};
  s.w = a;
  s.r = a;
  s.a = std::move(a);
  s.b = std::move(b);
  s.kp = std::move(kp);
  s.y = Hypergraph(static_cast<int>(s.w.size()));
  return s;
}

namespace {

std::vector<std::string> point_key(const UnitGraph& g) {
  std::vector<std::string> k;
  for (const auto& p : g.vertices()) k.push_back(p.to_string());
  std::sort(k.begin(), k.end());
  return k;
}

UnitGraph union_all(const std::vector<UnitGraph>& gs) {
  std::vector<ExactPoint> pts;
  for (const auto& g : gs) pts.insert(pts.end(), g.vertices().begin(), g.vertices().end());
  return UnitGraph::from_points(std::move(pts));
}

}  // namespace

MinimizationState iterate(MinimizationState state, const Strategy& strategy, RunLog& log, const SolverBackend* backend) {
  if (!key_property(state.a, state.kp, backend)) throw std::invalid_argument("initial graph does not have the key property");
  log.record("start", {{"a", state.a.size()}, {"m", state.m.size()}, {"set_m", state.set_m.size()},
                       {"k", state.kp.k}, {"companion", state.kp.companion.describe()}});
  std::string stop = "iteration cap";
  for (int it = 0; it < strategy.max_iterations; ++it) {
    state.r = build_reserve(state.a, state.b, strategy.reserve_min_degree).r;
    auto cands = expansion_candidates(state, strategy);
    if (it == 0) cands.insert(cands.begin(), std::vector<ExactPoint>{});
    bool success = false;
    for (std::size_t ci = 0; ci < cands.size() && !success; ++ci) {
      std::vector<ExactPoint> pts = state.a.vertices();
      pts.insert(pts.end(), cands[ci].begin(), cands[ci].end());
      const UnitGraph w = UnitGraph::from_points(std::move(pts));
      const PropertyOracle oracle(w, state.kp, backend);
      if (!oracle.holds(std::vector<char>(w.size(), 1))) {
        log.record("expansion", {{"iteration", it}, {"added", cands[ci].size()}, {"w", w.size()}, {"skipped", "no property"}});
        continue;
      }
      const PermGroup group =
          strategy.use_symmetry ? property_symmetries(w, state.kp.companion) : PermGroup::trivial(w.size());
      const Hypergraph y = build_hypergraph(oracle, strategy.max_hyperedge_degree, group, strategy.use_batch_8421,
                                            strategy.jobs, &log);
      const ReduceResult res = reduce(w, oracle, y, strategy, group, state.m.size());
      std::vector<UnitGraph> fresh;
      if (res.order <= state.m.size()) {
        std::set<std::vector<std::string>> known;
        if (res.order == state.m.size()) {
          for (const auto& g : state.set_m) known.insert(point_key(g));
        }
        for (const auto& g : res.set_m) {
          if (known.insert(point_key(g)).second) fresh.push_back(g);
        }
      }
      success = !fresh.empty();
      log.record("expansion", {{"iteration", it},
                               {"added", cands[ci].size()},
                               {"w", w.size()},
                               {"hyperedges", y.size()},
                               {"order", res.order},
                               {"found", res.set_m.size()},
                               {"partial", res.partial},
                               {"checks", res.checks},
                               {"success", success}});
      if (!success) continue;
      if (res.order < state.m.size()) {
        state.set_m = std::move(fresh);
      } else {
        state.set_m.insert(state.set_m.end(), fresh.begin(), fresh.end());
      }
      state.m = state.set_m.front();
      state.a = union_all(state.set_m);
      state.w = w;
      state.y = y;
    }
    if (!success) {
      stop = "no successful expansion";
      break;
    }
    log.record("iteration", {{"iteration", it}, {"m", state.m.size()}, {"set_m", state.set_m.size()}, {"a", state.a.size()}});
  }
  log.record("stop", {{"reason", stop}, {"m", state.m.size()}, {"set_m", state.set_m.size()}, {"a", state.a.size()}});
  return state;
}

}  // namespace udg
