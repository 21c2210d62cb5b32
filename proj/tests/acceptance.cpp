// Acceptance suite: one PASS/FAIL line per criterion.
//
// Tolerances are fixed here: counts and identities are exact, the random
// corpora must agree 100%, and wall-clock limits are 30 s per small build,
// 600 s for the 12937-vertex build, 900 s for the 6937-vertex build and
// 300 s for the minimizer run. Criterion 9 is reported but never gates the
// exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "toy.hpp"
#include "udg/checker.hpp"
#include "udg/expr.hpp"
#include "udg/minimize.hpp"
#include "udg/sat.hpp"
#include "udg/solver.hpp"
#include "udg/symmetry.hpp"

using namespace udg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int gate_failures = 0;

void report(int id, bool pass, const std::string& detail, bool gate = true) {
  std::printf("%s %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass && gate) ++gate_failures;
}

struct Timed {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  double secs = 0;
};

Timed build(const char* expr) {
  const auto t0 = Clock::now();
  const UnitGraph g = construct(expr);
  return {g.size(), g.edges().size(), seconds_since(t0)};
}

void criterion_1() {
  std::ostringstream os;
  bool ok = true;
  auto expect = [&](const char* name, const char* expr, std::size_t want, double limit) {
    const Timed t = build(expr);
    const bool good = t.vertices == want && t.secs <= limit;
    ok = ok && good;
    os << name << "=" << t.vertices << (good ? "" : "(!)") << " ";
    return t;
  };
  const Timed h = expect("H", "H", 7, 30);
  ok = ok && h.edges == 12;
  expect("H^1", "H^1", 19, 30);
  expect("H^2", "H^2", 31, 30);
  expect("V25", "V25", 25, 30);
  expect("V37", "V37", 37, 30);
  expect("V49", "V49", 49, 30);
  expect("L727", "V49 (+) V37", 727, 30);
  expect("S361", "V31S (+) V25", 361, 30);
  const Timed big = expect("B", "H^2 (+) H^2 (+) H^1 (+) H^1", 12937, 600);
  os << "[H edges " << h.edges << ", 12937 build " << big.secs << " s <= 600 s]";
  report(1, ok, os.str());
}

void criterion_2() {
  const Timed t = build("(H^1 + rho*H^1) (+) (H^1 + rho*H^1) (+) (H^1 + rho*H^1)");
  std::ostringstream os;
  os << "type T graph " << t.vertices << " vertices (want 6937) in " << t.secs << " s (<= 900 s)";
  report(2, t.vertices == 6937 && t.secs <= 900, os.str());
}

void criterion_3() {
  const UnitGraph g = construct("H^1 (+) H^1");
  const std::size_t order = geometric_auts(g).order();
  std::set<std::size_t> sizes;
  for (const auto& o : orbit_decompose(base_graph_coords(2, 1))) sizes.insert(o.full_size);
  for (const auto& o : orbit_decompose(base_graph_coords(2, 2))) sizes.insert(o.full_size);
  bool sizes_ok = true;
  for (auto s : sizes) sizes_ok = sizes_ok && (s == 1 || s == 6 || s == 12 || s == 24);
  const std::size_t disk = enumerate_disk_orbits(Rational(2)).size();
  std::ostringstream os;
  os << "Aut order " << order << " (want 24); orbit sizes {";
  for (auto s : sizes) os << ' ' << s;
  os << " }; disk r=2 orbits " << disk << " (window 350-450)";
  report(3, order == 24 && sizes_ok && disk >= 350 && disk <= 450, os.str());
}

void criterion_4() {
  bool ok = true;
  for (const auto& m : orbit_members(BaseCoord{{0, 4, 4, 0}, 1})) ok = ok && m.to_point().norm_sq() == ExactReal(4);
  const ExactReal side = ExactReal::sqrt_of(11, Rational(1, 2)) + ExactReal::sqrt_of(3, Rational(1, 6));
  const ExactReal aux = ExactReal(Rational(17, 6)) + ExactReal::sqrt_of(33, Rational(1, 6));
  ok = ok && BaseCoord{{0, 0, 2, 6}, 1}.to_point().norm_sq() == aux && side * side == aux;
  // float cross-check of the same two identities
  const double s = std::sqrt(11.0) / 2 + std::sqrt(3.0) / 6;
  ok = ok && std::abs(s * s - (17.0 / 6 + std::sqrt(33.0) / 6)) < 1e-12;
  ok = ok && std::abs((16.0 * 33 + 16.0 * 3) / 144 - 4) < 1e-12;
  report(4, ok, "(0,4,4,0) at |v|^2 = 4 exactly; (0,0,2,6) at |v|^2 = 17/6 + sqrt(33)/6 = (sqrt(11)/2 + sqrt(3)/6)^2");
}

void criterion_5() {
  std::mt19937 rng(2024);
  int instances = 0, agree = 0, total = 0;
  auto run = [&](const oracle::Graph& g) {
    ++instances;
    ColoringGraph cg;
    cg.vertices = g.n;
    for (const auto& e : g.edges()) cg.edges.push_back(e);
    for (int k = 2; k <= 4; ++k) {
      ++total;
      const bool expect = oracle::colorable(g, k);
      const bool plain = solve(encode_k_coloring(cg, k)).verdict == Verdict::sat;
      const bool broken = is_k_colorable(cg, k, default_break_clique(cg, nullptr, k));
      agree += (plain == expect && broken == expect) ? 1 : 0;
    }
  };
  for (int i = 0; i < 400; ++i) run(oracle::random_graph(rng, 1 + i % 12, 0.2 + 0.05 * (i % 11)));
  // induced subgraphs of a unit-distance graph
  const UnitGraph big = construct("H^1 (+) H");
  std::uniform_int_distribution<int> pick(0, static_cast<int>(big.size()) - 1);
  for (int i = 0; i < 200; ++i) {
    std::set<int> s;
    while (static_cast<int>(s.size()) < 4 + i % 9) s.insert(pick(rng));
    run(oracle::float_graph(big.induced(std::vector<int>(s.begin(), s.end())).vertices()));
  }
  std::ostringstream os;
  os << agree << "/" << total << " verdicts agree over " << instances << " graphs (<= 12 vertices, k = 2..4)";
  report(5, instances >= 500 && agree == total, os.str());
}

void criterion_6() {
  const UnitGraph m = moser();
  const oracle::Graph om = oracle::of(m);
  const int chi = chromatic_number(m, 6);
  const ExactPoint origin(0, 0), tip(0, ExactReal::sqrt_of(3));
  const ExactPoint tip2 = pt_mul(power(rotor(RotorName::eta).multiplier, 2), tip);
  const int o = *m.index_of(origin), q = *m.index_of(tip), r = *m.index_of(tip2);
  const bool spindle = verify_spindle(m, {o, q}, {o, r}, 3);
  // brute force: both pairs mono in MOSER minus the closing edge
  oracle::Graph open = om;
  open.adj[static_cast<std::size_t>(q)][static_cast<std::size_t>(r)] = 0;
  open.adj[static_cast<std::size_t>(r)][static_cast<std::size_t>(q)] = 0;
  const bool brute_spindle = oracle::mono(open, o, q, 3) && oracle::mono(open, o, r, 3);
  const UnitGraph d = rhombus();
  const int a = *d.index_of(origin), b = *d.index_of(tip);
  const bool mono3 = is_mono_pair(d, a, b, 3), mono4 = is_mono_pair(d, a, b, 4);
  const oracle::Graph od = oracle::of(d);
  const bool ok = chi == 4 && oracle::chromatic(om) == 4 && spindle && brute_spindle && mono3 &&
                  oracle::mono(od, a, b, 3) && !mono4 && !oracle::mono(od, a, b, 4);
  std::ostringstream os;
  os << "chi(MOSER) = " << chi << "; spindle at k=3: " << spindle << "; diamond tips mono k=3: " << mono3
     << ", k=4: " << mono4 << " (all brute-force confirmed)";
  report(6, ok, os.str());
}

std::set<std::vector<std::string>> graph_keys(const std::vector<UnitGraph>& gs) {
  std::set<std::vector<std::string>> out;
  for (const auto& g : gs) {
    std::vector<std::string> k;
    for (const auto& p : g.vertices()) k.push_back(p.to_string());
    std::sort(k.begin(), k.end());
    out.insert(k);
  }
  return out;
}

void criterion_7() {
  const auto t0 = Clock::now();
  const UnitGraph w = toy::moser_with_noise(8, 7);
  const KeyProperty kp{3, Companion::none()};
  const oracle::Graph ow = oracle::of(w);
  const int n = static_cast<int>(w.size());
  auto complement = [&](const std::vector<int>& removed) {
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
      if (std::find(removed.begin(), removed.end(), v) == removed.end()) keep.push_back(v);
    return keep;
  };

  // exhaustive oracle: smallest non-3-colorable induced subgraphs
  std::set<std::vector<std::string>> expect;
  int min_order = 0;
  for (int s = 1; s <= n && expect.empty(); ++s) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(cur.size()) == s) {
        if (!oracle::colorable(ow.induced(cur), 3)) {
          std::vector<std::string> key;
          for (int v : cur) key.push_back(w.vertex(v).to_string());
          std::sort(key.begin(), key.end());
          expect.insert(key);
        }
        return;
      }
      for (int v = start; v < n; ++v) {
        cur.push_back(v);
        rec(v + 1);
        cur.pop_back();
      }
    };
    rec(0);
    min_order = s;
  }

  Strategy st;
  st.use_symmetry = false;
  RunLog log;
  const MinimizationState out = iterate(initial_state(w, {}, kp), st, log);
  const bool min_ok = out.m.size() == 7 && min_order == 7 && graph_keys(out.set_m) == expect;

  const PropertyOracle po(w, kp);
  const Hypergraph y = build_hypergraph(po, 2, PermGroup::trivial(w.size()));
  const auto brute = oracle::critical_sets(n, 2, [&](const std::vector<int>& removed) {
    return !oracle::colorable(ow.induced(complement(removed)), 3);
  });
  const bool y_ok = y.all() == brute;

  std::vector<std::vector<int>> cands;
  for (int u = 0; u < n; ++u) {
    cands.push_back({u});
    for (int v = u + 1; v < n; ++v) cands.push_back({u, v});
  }
  const PropertyOracle p1(w, kp), p2(w, kp);
  const BatchResult b8 = batch_8421(p1, cands);
  const BatchResult bn = batch_naive(p2, cands);
  const bool batch_ok = b8.retains == bn.retains;
  const double secs = seconds_since(t0);

  std::ostringstream os;
  os << "W = MOSER + 8 noise (" << n << " vertices): M = " << out.m.size() << ", {M} = " << out.set_m.size()
     << " graphs vs oracle " << expect.size() << " at order " << min_order << "; Y(<=2) " << y.size()
     << " edges vs oracle " << brute.size() << "; 8421 " << b8.checks << " checks vs naive " << bn.checks
     << ", verdicts equal: " << batch_ok << "; " << secs << " s (<= 300 s)";
  report(7, min_ok && y_ok && batch_ok && secs <= 300, os.str());
}

void criterion_8() {
  std::mt19937 rng(8);
  bool ok = true;
  int graphs = 0;
  for (int i = 0; i < 200; ++i) {
    const auto g = oracle::random_graph(rng, 3 + i % 10, 0.45);
    ColoringGraph cg;
    cg.vertices = g.n;
    for (const auto& e : g.edges()) cg.edges.push_back(e);
    for (int k = 1; k <= 4; ++k) {
      const auto f = encode_k_coloring(cg, k);
      ok = ok && f.clauses.size() == static_cast<std::size_t>(g.n) + static_cast<std::size_t>(k) * cg.edges.size();
      if (k >= 3) {
        const auto clique = default_break_clique(cg, nullptr, k);
        if (clique.size() == 3) ok = ok && add_clique_break(f, cg, clique).clauses.size() == f.clauses.size() + 3;
      }
      for (int m = 2; m <= g.n; ++m) {
        std::vector<int> set(static_cast<std::size_t>(m));
        std::iota(set.begin(), set.end(), 0);
        ok = ok && add_equal_chain(f, set).clauses.size() == f.clauses.size() + static_cast<std::size_t>(k * m);
      }
    }
    ++graphs;
  }
  const auto t = encode_k_coloring(ColoringGraph{3, {{0, 1}, {0, 2}, {1, 2}}}, 4);
  ok = ok && t.num_vars == 12 && t.clauses.size() == 15;
  std::ostringstream os;
  os << "clause count n + k|E| (+3 with clique break, +k*m per equal chain) on " << graphs
     << " graphs, k = 1..4; triangle k=4: " << t.num_vars << " vars, " << t.clauses.size() << " clauses";
  report(8, ok, os.str());
}

void criterion_9() {
  report(9, false,
         "not reproduced: the 509-vertex / 2442-edge record and the per-orbit tables need a multi-day search; "
         "criteria 5-7 stand in. Long runs: udg minimize --backend external:<solver> --budget <n> (non-gate)",
         false);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  return gate_failures == 0 ? 0 : 1;
}
