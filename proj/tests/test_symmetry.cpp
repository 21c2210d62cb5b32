#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "udg/expr.hpp"
#include "udg/symmetry.hpp"

using namespace udg;

namespace {

BaseCoord bc(long a, long b, long c, long d) { return BaseCoord{{a, b, c, d}, 1}; }

std::pair<double, double> xy(const BaseCoord& v) {
  const ExactPoint p = v.to_point();
  return {p.re.to_double(), p.im.to_double()};
}

bool near(std::pair<double, double> p, std::pair<double, double> q) {
  return std::abs(p.first - q.first) < 1e-9 && std::abs(p.second - q.second) < 1e-9;
}

}  // namespace

TEST_CASE("tau maps") {
  CHECK(tau_apply(0, bc(6, 2, 0, 0)) == bc(6, 2, 0, 0));
  CHECK(tau_apply(5, bc(0, 4, 4, 0)) == bc(0, -4, 4, 0));
  BaseCoord v = bc(6, 2, 0, 0);
  for (int i = 0; i < 3; ++i) v = tau_apply(1, v);
  CHECK(v == bc(6, 2, 0, 0));
  CHECK_THROWS_AS(tau_apply(1, bc(1, 0, 0, 0)), std::domain_error);
}

TEST_CASE("tau rotations and reflections act as plane isometries") {
  const double c = std::cos(2 * M_PI / 3), s = std::sin(2 * M_PI / 3);
  for (const auto& v : base_graph_coords(2, 1)) {
    const auto [x, y] = xy(v);
    CHECK(near(xy(tau_apply(1, v)), {c * x - s * y, s * x + c * y}));
    CHECK(near(xy(tau_apply(2, v)), {c * x + s * y, -s * x + c * y}));
    CHECK(near(xy(tau_apply(3, v)), {-x, y}));
    CHECK(near(xy(tau_apply(4, v)), {x, -y}));
    CHECK(tau_apply(5, v).to_point() == conj_sqrt33(v.to_point()));
  }
}

TEST_CASE("base coordinates") {
  const ExactPoint p = ExactPoint::parse("(1/2 + 1/2*sqrt(33); 0)");
  const auto b = to_base_coord(p);
  REQUIRE(b.has_value());
  CHECK(*b == bc(6, 6, 0, 0));
  CHECK(b->h == 1);
  CHECK(b->satisfies_parity());
  CHECK(b->to_point() == p);
  CHECK_FALSE(to_base_coord(ExactPoint(ExactReal::sqrt_of(5), 0)).has_value());
  const UnitGraph h2 = construct("H^2");
  for (const auto& v : h2.vertices()) {
    const auto w = to_base_coord(v, 1);
    REQUIRE(w.has_value());
    CHECK(w->satisfies_parity());
  }
}

TEST_CASE("orbits") {
  const std::vector<BaseCoord> origin{bc(0, 0, 0, 0)};
  const auto o = orbit_decompose(origin);
  REQUIRE(o.size() == 1);
  CHECK(o[0].full_size == 1);
  CHECK(orbit_members(bc(0, 4, 4, 0)).size() == 12);
  for (const auto& m : orbit_members(bc(0, 4, 4, 0))) CHECK(m.to_point().norm_sq() == ExactReal(4));
  const ExactReal aux = ExactReal(Rational(17, 6)) + ExactReal::sqrt_of(33, Rational(1, 6));
  const ExactReal aux_conj = ExactReal(Rational(17, 6)) - ExactReal::sqrt_of(33, Rational(1, 6));
  for (const auto& m : orbit_members(bc(0, 0, 2, 6))) {
    const ExactReal r = m.to_point().norm_sq();
    CHECK((r == aux || r == aux_conj));
  }
  CHECK(orbit_representative(bc(0, -4, 4, 0)) == bc(0, 4, 4, 0));

  const auto coords = base_graph_coords(2, 1);
  CHECK(coords.size() == construct("H^1 (+) H^1").size());
  std::size_t total = 0;
  for (const auto& orb : orbit_decompose(coords)) {
    CHECK((orb.full_size == 1 || orb.full_size == 6 || orb.full_size == 12 || orb.full_size == 24));
    total += orb.members.size();
  }
  CHECK(total == coords.size());
}

TEST_CASE("disk orbits") {
  const auto small = enumerate_disk_orbits(Rational(1, 100));
  REQUIRE(small.size() == 1);
  CHECK(small[0].representative == bc(0, 0, 0, 0));
  const auto disk = enumerate_disk_orbits(Rational(2));
  CHECK(disk.size() >= 350);
  CHECK(disk.size() <= 450);
  for (const auto& orb : disk) CHECK(compare(orb.min_radius_sq, ExactReal(4)) <= 0);
}

TEST_CASE("geometric automorphisms") {
  const PermGroup single = geometric_auts(UnitGraph::from_points({ExactPoint(0, 0)}));
  CHECK(single.order() == 1);
  const UnitGraph g = construct("H^1 (+) H^1");
  const PermGroup aut = geometric_auts(g);
  CHECK(aut.order() == 24);
  const oracle::Graph og = oracle::of(g);
  for (const auto& e : aut.elements()) {
    for (const auto& [u, v] : g.edges()) CHECK(og.has(e[static_cast<std::size_t>(u)], e[static_cast<std::size_t>(v)]));
  }
  const PermGroup hw = geometric_auts(wheel());
  CHECK(hw.order() >= 12);
  CHECK(geometric_auts(construct("H^2")).order() == 24);
}

TEST_CASE("canonical subsets") {
  const PermGroup triv = PermGroup::trivial(5);
  const auto same = canonicalize_subsets({{1, 2}, {2, 1}, {0}}, triv);
  CHECK(same == std::vector<std::vector<int>>{{0}, {1, 2}});

  const UnitGraph g = construct("H^1 (+) H^1");
  const PermGroup aut = geometric_auts(g);
  // a full orbit of singletons collapses to one representative
  const int v = 5;
  std::vector<std::vector<int>> singles;
  for (int w : aut.orbit_of(v)) singles.push_back({w});
  CHECK(canonicalize_subsets(singles, aut).size() == 1);

  std::mt19937 rng(2);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(g.size()) - 1);
  for (int t = 0; t < 100; ++t) {
    std::set<int> s;
    for (int i = 0; i < 4; ++i) s.insert(pick(rng));
    const std::vector<int> sub(s.begin(), s.end());
    const auto canon = canonical_subset(sub, aut);
    for (const auto& e : aut.elements()) {
      std::vector<int> img;
      for (int x : sub) img.push_back(e[static_cast<std::size_t>(x)]);
      std::sort(img.begin(), img.end());
      CHECK(canonical_subset(img, aut) == canon);
    }
  }
}

TEST_CASE("orbit tables") {
  std::vector<ExactPoint> pts;
  for (const auto& m : orbit_members(bc(0, 4, 4, 0))) pts.push_back(m.to_point());
  const UnitGraph a = UnitGraph::from_points(pts);
  const auto rows = orbit_table(a, a, {a});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].in_m == 12);
  CHECK(rows[0].setm_min == 12);
  CHECK(rows[0].in_a == 12);
  CHECK(rows[0].filled);

  const UnitGraph m6 = a.induced(std::vector<int>{0, 1, 2, 3, 4, 5});
  const UnitGraph m8 = a.induced(std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
  const auto ranged = orbit_table(a, m6, {m6, m8});
  CHECK(ranged[0].setm_min == 6);
  CHECK(ranged[0].setm_max == 8);
  CHECK(format_orbit_table(ranged, 6, 12).find("6-8") != std::string::npos);

  // an orbit that misses A gets no row
  std::vector<ExactPoint> two = pts;
  two.push_back(ExactPoint(0, 0));
  CHECK(orbit_table(UnitGraph::from_points(two), a, {a}).size() == 2);
  CHECK_THROWS(orbit_table(wheel().transformed(rotor(RotorName::rho)), a, {a}));
}
