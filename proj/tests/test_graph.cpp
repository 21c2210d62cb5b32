#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "udg/expr.hpp"
#include "udg/graph.hpp"

using namespace udg;

namespace {

std::size_t vcount(const char* e) { return construct(e).size(); }

void check_edges_match_float(const UnitGraph& g) {
  const oracle::Graph f = oracle::float_graph(g.vertices());
  CHECK(f.edges() == g.edges());
}

}  // namespace

TEST_CASE("wheel and small point sets") {
  const UnitGraph h = wheel();
  CHECK(h.size() == 7);
  CHECK(h.edges().size() == 12);
  check_edges_match_float(h);

  std::vector<ExactPoint> pts{ExactPoint(0, 0), ExactPoint(1, 0), ExactPoint(-1, 0),
                              ExactPoint(Rational(1, 2), ExactReal::sqrt_of(3, Rational(1, 2))),
                              ExactPoint(Rational(-1, 2), ExactReal::sqrt_of(3, Rational(1, 2))),
                              ExactPoint(Rational(1, 2), ExactReal::sqrt_of(3, Rational(-1, 2))),
                              ExactPoint(Rational(-1, 2), ExactReal::sqrt_of(3, Rational(-1, 2)))};
  const UnitGraph g = UnitGraph::from_points(pts);
  CHECK(g.size() == 7);
  CHECK(g.edges().size() == 12);
  CHECK(UnitGraph::from_points({ExactPoint(1, 1)}).edges().empty());
  CHECK(UnitGraph::from_points({ExactPoint(1, 1), ExactPoint(1, 1)}).size() == 1);
}

TEST_CASE("vertex order is canonical") {
  auto pts = wheel().vertices();
  std::mt19937 rng(1);
  std::shuffle(pts.begin(), pts.end(), rng);
  const UnitGraph g = UnitGraph::from_points(pts);
  CHECK(g.vertices() == wheel().vertices());
  CHECK(g.edges() == wheel().edges());
  CHECK(g.vertex(0) == ExactPoint(0, 0));
}

TEST_CASE("Minkowski sums") {
  const UnitGraph h = wheel();
  const UnitGraph origin = UnitGraph::from_points({ExactPoint(0, 0)});
  CHECK(minkowski(h, origin).vertices() == h.vertices());
  // direct enumeration of distinct pairwise sums
  std::set<std::string> sums;
  for (const auto& p : h.vertices())
    for (const auto& q : h.vertices()) sums.insert((p + q).to_string());
  const UnitGraph hh = minkowski(h, h);
  CHECK(hh.size() == sums.size());
  CHECK(hh.size() < 49);
  check_edges_match_float(hh);
  CHECK(minkowski_power(h, 2).vertices() == hh.vertices());
}

TEST_CASE("named constructions") {
  CHECK(vcount("H") == 7);
  CHECK(vcount("H^1") == 19);  // three wheels sharing the origin: 3*7 - 2
  CHECK(vcount("H^2") == 31);
  CHECK(vcount("H^1 + (i/sqrt3)*H^0") == 25);
  CHECK(vcount("H^1 + (i/sqrt3)*H^1") == 37);
  CHECK(vcount("H^2 + (i/sqrt3)*H^1") == 49);
  CHECK(construct("V25").vertices() == construct("H^1 + (i/sqrt3)*H^0").vertices());
  CHECK(construct("V37").vertices() == construct("H^1 + (i/sqrt3)*H^1").vertices());
  CHECK(construct("V49").vertices() == construct("H^2 + (i/sqrt3)*H^1").vertices());
  CHECK(construct("V31").vertices() == construct("H^2").vertices());

  const UnitGraph m = construct("D + eta^2*D");
  CHECK(m.size() == 7);
  CHECK(m.edges().size() == 11);
  check_edges_match_float(m);
  CHECK(m.vertices() == moser().vertices());
  CHECK(construct("MOSER").vertices() == moser().vertices());

  const UnitGraph d = rhombus();
  CHECK(d.size() == 4);
  CHECK(d.edges().size() == 5);
  check_edges_match_float(construct("V49"));
}

TEST_CASE("trim") {
  CHECK(construct("trim(H, 0)").size() == 1);
  CHECK(construct("trim(H, 1)").size() == 7);
  // brute force: count H^2 vertices within radius^2 1/2
  const UnitGraph h2 = construct("H^2");
  std::size_t inside = 0;
  for (const auto& p : h2.vertices()) inside += p.norm_sq().to_double() <= 0.5 ? 1 : 0;
  CHECK(inside == 1);
  CHECK(trim(h2, ExactReal(Rational(1, 2))).size() == 1);
}

TEST_CASE("expression grammar") {
  CHECK(construct("H (+) H").vertices() == minkowski(wheel(), wheel()).vertices());
  CHECK(construct("H^{0,2}").size() == 13);
  CHECK(construct("[(0; 0), (1; 0)]").edges().size() == 1);
  CHECK(construct("rho*H").vertices() == wheel().transformed(rotor(RotorName::rho)).vertices());
  CHECK(construct("eta^-1*H").vertices() == wheel().transformed(Transform{Transform::Kind::multiply, power(rotor(RotorName::eta).multiplier, -1)}).vertices());
  CHECK_THROWS(construct("H +"));
  CHECK_THROWS(construct("NOPE"));
  CHECK_THROWS(construct("H^"));
  CHECK_THROWS(construct("trim(H, x)"));
}

TEST_CASE("induced subgraphs and audit") {
  const UnitGraph g = construct("H^2 (+) H");
  CHECK(g.audit_strictness());
  const std::vector<int> keep{0, 1, 2, 5, 8, 13};
  const UnitGraph s = g.induced(keep);
  CHECK(s.size() == keep.size());
  check_edges_match_float(s);
  const UnitGraph ex = UnitGraph::from_points(g.vertices(), EdgeMode::exhaustive);
  CHECK(ex.edges() == g.edges());
  const int drop[] = {0};
  CHECK(g.without(drop).size() == g.size() - 1);
}
