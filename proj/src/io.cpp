#include "udg/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "udg/expr.hpp"

namespace udg {

std::string format_graph(const UnitGraph& g) {
  std::string out = "udg 1\n";
  for (const auto& p : g.vertices()) {
    out += p.to_string();
    out += '\n';
  }
  return out;
}

UnitGraph parse_graph(std::string_view text, std::vector<std::string>* warnings) {
  std::vector<ExactPoint> points;
  std::unordered_set<ExactPoint, ExactPointHash> seen;
  bool header = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t lead = 0;
    while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (lead >= line.size()) {
      if (end == text.size()) break;
      continue;
    }
    if (!header) {
      if (line.substr(lead) != "udg 1") throw ParseError("line " + std::to_string(line_no) + ": expected header 'udg 1'", line_no, lead + 1);
      header = true;
      continue;
    }
    ExactPoint p;
    try {
      p = ExactPoint::parse(line);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ", " + e.what(), line_no, e.column());
    }
    if (!seen.insert(p).second) {
      if (warnings) warnings->push_back("line " + std::to_string(line_no) + ": duplicate vertex " + p.to_string() + " ignored");
      continue;
    }
    points.push_back(std::move(p));
    if (end == text.size()) break;
  }
  if (!header) throw ParseError("missing header 'udg 1'", 1, 1);
  return UnitGraph::from_points(std::move(points));
}

UnitGraph read_graph(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str(), warnings);
}

void write_graph(const std::string& path, const UnitGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write graph file " + path);
  out << format_graph(g);
}

std::string graph_json(const UnitGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& p : g.vertices()) j["vertices"].push_back(p.to_string());
  j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j.dump();
}

std::string render_svg(const UnitGraph& g, const std::vector<int>& highlight) {
  std::vector<double> xs, ys;
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& p : g.vertices()) {
    xs.push_back(p.re.to_double());
    ys.push_back(-p.im.to_double());  // SVG y points down
  }
  if (!xs.empty()) {
    lo_x = *std::min_element(xs.begin(), xs.end());
    hi_x = *std::max_element(xs.begin(), xs.end());
    lo_y = *std::min_element(ys.begin(), ys.end());
    hi_y = *std::max_element(ys.begin(), ys.end());
  }
  const double pad = 0.5;
  char buf[256];
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.6f %.6f %.6f %.6f\" width=\"800\" height=\"800\">\n",
                lo_x - pad, lo_y - pad, hi_x - lo_x + 2 * pad, hi_y - lo_y + 2 * pad);
  out += buf;
  out += "<g stroke=\"#555\" stroke-width=\"0.008\">\n";
  for (const auto& [u, v] : g.edges()) {
    std::snprintf(buf, sizeof buf, "<line x1=\"%.6f\" y1=\"%.6f\" x2=\"%.6f\" y2=\"%.6f\"/>\n", xs[static_cast<std::size_t>(u)],
                  ys[static_cast<std::size_t>(u)], xs[static_cast<std::size_t>(v)], ys[static_cast<std::size_t>(v)]);
    out += buf;
  }
  out += "</g>\n<g fill=\"#000\">\n";
  std::vector<char> big(g.size(), 0);
  for (int h : highlight) {
    if (h >= 0 && h < static_cast<int>(g.size())) big[static_cast<std::size_t>(h)] = 1;
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.6f\" cy=\"%.6f\" r=\"%s\"%s/>\n", xs[i], ys[i], big[i] ? "0.06" : "0.025",
                  big[i] ? " fill=\"#c00\"" : "");
    out += buf;
  }
  out += "</g>\n</svg>\n";
  return out;
}

namespace {

std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(text.substr(start));
  return parts;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits "<body>:<rotor>" when the suffix names a rotor.
std::pair<std::string, Transform> body_and_rotor(std::string_view rest) {
  const auto colon = rest.rfind(':');
  if (colon != std::string_view::npos) {
    if (auto r = rotor_from_string(strip(rest.substr(colon + 1)))) {
      return {std::string(rest.substr(0, colon)), rotor(*r)};
    }
  }
  return {std::string(rest), Transform{}};
}

}  // namespace

std::vector<int> parse_vertex_list(std::string_view text, const UnitGraph& w) {
  std::vector<int> out;
  for (auto part : split_top_level(text)) {
    part = strip(part);
    if (part.empty()) throw std::invalid_argument("empty vertex reference");
    if (part.front() == '(') {
      const ExactPoint p = ExactPoint::parse(part);
      auto i = w.index_of(p);
      if (!i) throw std::invalid_argument("point " + p.to_string() + " is not a vertex");
      out.push_back(*i);
    } else {
      std::size_t used = 0;
      int i = 0;
      try {
        i = std::stoi(std::string(part), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != part.size() || i < 0 || i >= static_cast<int>(w.size())) {
        throw std::invalid_argument("bad vertex reference '" + std::string(part) + "'");
      }
      out.push_back(i);
    }
  }
  return out;
}

Companion parse_companion(std::string_view spec, const UnitGraph& w) {
  spec = strip(spec);
  if (spec.empty() || spec == "none") return Companion::none();
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("bad companion spec '" + std::string(spec) + "'");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);
  auto points_of = [&](std::string_view list) {
    std::vector<ExactPoint> pts;
    for (int i : parse_vertex_list(list, w)) pts.push_back(w.vertex(i));
    return pts;
  };
  if (kind == "graph") {
    auto [path, t] = body_and_rotor(rest);
    return Companion::subgraph(read_graph(path), t);
  }
  if (kind == "expr") {
    auto [text, t] = body_and_rotor(rest);
    return Companion::subgraph(construct(text), t);
  }
  if (kind == "mono") {
    auto pts = points_of(rest);
    if (pts.size() != 2) throw std::invalid_argument("mono companion needs exactly two vertices");
    return Companion::mono_edge(pts[0], pts[1]);
  }
  if (kind == "nonmono") return Companion::nonmono_clique(points_of(rest));
  throw std::invalid_argument("unknown companion kind '" + std::string(kind) + "'");
}

}  // namespace udg
