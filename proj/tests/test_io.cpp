#include <cstdio>
#include <filesystem>
#include <regex>

#include "doctest.h"
#include "json.hpp"
#include "udg/expr.hpp"
#include "udg/io.hpp"
#include "udg/symmetry.hpp"

using namespace udg;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("graph file round trip") {
  for (const char* e : {"H", "MOSER", "V49", "H^2 (+) H", "rho*V25"}) {
    const UnitGraph g = construct(e);
    const std::string text = format_graph(g);
    const UnitGraph back = parse_graph(text);
    CHECK(back.vertices() == g.vertices());
    CHECK(back.edges() == g.edges());
    CHECK(format_graph(back) == text);
  }
  const auto path = std::filesystem::temp_directory_path() / "udg_io_test.udg";
  write_graph(path.string(), construct("V37"));
  CHECK(read_graph(path.string()).size() == 37);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_graph("/nonexistent/x.udg"), std::invalid_argument);
}

TEST_CASE("hand-written files") {
  std::vector<std::string> warnings;
  const UnitGraph g = parse_graph("# comment\nudg 1\n(0; 0)\n(1; 0)  # right\n\n(0; 0)\n", &warnings);
  CHECK(g.size() == 2);
  CHECK(g.edges().size() == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("line 6") != std::string::npos);

  const UnitGraph b = parse_graph("udg 1\n(1/2 + 1/2*sqrt(33); 0)\n");
  const auto bc = to_base_coord(b.vertex(0));
  REQUIRE(bc.has_value());
  CHECK(*bc == BaseCoord{{6, 6, 0, 0}, 1});

  try {
    parse_graph("udg 1\n(0; 0)\n(2/4; 0)\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 1);
  }
  CHECK_THROWS_AS(parse_graph("(0; 0)\n"), ParseError);
  CHECK_THROWS_AS(parse_graph(""), ParseError);
  CHECK_THROWS_AS(parse_graph("udg 1\n(0; sqrt(4))\n"), ParseError);
}

TEST_CASE("json and svg") {
  const UnitGraph g = moser();
  const auto j = nlohmann::json::parse(graph_json(g));
  CHECK(j["vertices"].size() == 7);
  CHECK(j["edges"].size() == 11);
  const std::string svg = render_svg(g, {0});
  CHECK(count(svg, "<circle") == 7);
  CHECK(count(svg, "<line") == 11);
  CHECK(count(svg, "r=\"0.06\"") == 1);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("vertex lists and companions") {
  const UnitGraph d = rhombus();
  CHECK(parse_vertex_list("0, 3", d) == std::vector<int>{0, 3});
  CHECK(parse_vertex_list("(0; 0),(0; sqrt(3))", d) == std::vector<int>{*d.index_of(ExactPoint(0, 0)), *d.index_of(ExactPoint(0, ExactReal::sqrt_of(3)))});
  CHECK_THROWS(parse_vertex_list("9", d));
  CHECK_THROWS(parse_vertex_list("(5; 5)", d));
  CHECK_THROWS(parse_vertex_list("x", d));

  CHECK(parse_companion("none", d).kind == Companion::Kind::none);
  const Companion m = parse_companion("mono:(0; 0),(0; sqrt(3))", d);
  CHECK(m.kind == Companion::Kind::mono_edge);
  CHECK(m.points.size() == 2);
  CHECK(parse_companion("nonmono:0,1,2", d).points.size() == 3);
  const Companion e = parse_companion("expr:D:eta", d);
  CHECK(e.kind == Companion::Kind::subgraph);
  CHECK(e.transform.multiplier == rotor(RotorName::eta).multiplier);
  CHECK(parse_companion("expr:H^1", d).graph.size() == 19);
  CHECK_THROWS(parse_companion("mono:0", d));
  CHECK_THROWS(parse_companion("bogus:1", d));
  CHECK_THROWS(parse_companion("graph:/nonexistent.udg", d));
}
