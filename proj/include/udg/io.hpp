#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "udg/checker.hpp"
#include "udg/graph.hpp"

namespace udg {

/// Graph file: a `udg 1` header, then one ExactPoint per line. `#` starts a
/// comment. Edges are never stored; they are recomputed on read.
std::string format_graph(const UnitGraph& g);
/// Duplicate vertices are dropped and reported in `warnings`.
UnitGraph parse_graph(std::string_view text, std::vector<std::string>* warnings = nullptr);
UnitGraph read_graph(const std::string& path, std::vector<std::string>* warnings = nullptr);
void write_graph(const std::string& path, const UnitGraph& g);

/// {"vertices": [...], "edges": [[u, v], ...]} with exact coordinate strings.
std::string graph_json(const UnitGraph& g);

/// One <circle> per vertex and one <line> per edge; `highlight` vertices
/// are drawn larger.
std::string render_svg(const UnitGraph& g, const std::vector<int>& highlight = {});

/// Vertex references for companion and checker arguments: a comma list of
/// W indices or point literals such as (1; 0).
std::vector<int> parse_vertex_list(std::string_view text, const UnitGraph& w);

/// none | graph:<path>[:<rotor>] | expr:<expression>[:<rotor>] |
/// mono:<u>,<v> | nonmono:<list>
Companion parse_companion(std::string_view spec, const UnitGraph& w);

}  // namespace udg
