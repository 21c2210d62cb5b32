#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "udg/graph.hpp"

namespace udg {

/// Syntax tree of the graph expression language.
///
///   expr     := sum
///   sum      := msum { "+" msum }              union
///   msum     := term { "(+)" term }            Minkowski sum, binds tighter
///   term     := { scalar "*" } atom [ "^" rotspec ]
///   scalar   := "i" | "i/sqrt3" | "eta" ["^" int] | "rho" ["^" int]
///             | rational | "(" scalar ")"
///   rotspec  := uint | "{" int { "," int } "}"
///   atom     := NAME | "(" expr ")" | "trim(" expr "," rational ")"
///             | "[" point { "," point } "]"
///
/// A scalar applies to the whole `atom^rotspec` term, so `eta^2*D` rotates
/// D and `(i/sqrt3)*H^1` scales the rotation set H^1.
struct GraphExpr {
  enum class Kind { atom, points, scaled, rotation_set, union_of, minkowski, trim };

  Kind kind = Kind::atom;
  std::string name;                 // atom
  std::vector<ExactPoint> points;   // points literal
  ExactPoint multiplier{1, 0};      // scaled
  std::vector<int> exponents;       // rotation_set
  Rational radius_sq;               // trim
  std::vector<std::shared_ptr<const GraphExpr>> children;
};

GraphExpr parse_expr(std::string_view text);
UnitGraph evaluate(const GraphExpr& expr, unsigned jobs = 1);
/// parse_expr + evaluate.
UnitGraph construct(std::string_view text, unsigned jobs = 1);

}  // namespace udg
