#include "udg/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace udg {

namespace {

using ExprPtr = std::shared_ptr<const GraphExpr>;

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  GraphExpr parse() {
    GraphExpr e = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  GraphExpr parse_sum() {
    GraphExpr lhs = parse_msum();
    while (peek_is("+") && !peek_is("(+)")) {
      expect("+");
      GraphExpr rhs = parse_msum();
      lhs = binary(GraphExpr::Kind::union_of, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  GraphExpr parse_msum() {
    GraphExpr lhs = parse_term();
    while (accept("(+)")) {
      GraphExpr rhs = parse_term();
      lhs = binary(GraphExpr::Kind::minkowski, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  GraphExpr parse_term() {
    ExactPoint multiplier{1, 0};
    bool has_scalar = false;
    for (;;) {
      const std::size_t save = pos_;
      if (auto s = try_scalar(); s && accept("*")) {
        multiplier = multiplier * *s;
        has_scalar = true;
        continue;
      }
      pos_ = save;
      break;
    }
    GraphExpr atom = parse_atom();
    if (accept("^")) atom = rotation(std::move(atom), parse_rotspec());
    if (!has_scalar) return atom;
    GraphExpr e;
    e.kind = GraphExpr::Kind::scaled;
    e.multiplier = std::move(multiplier);
    e.children.push_back(std::make_shared<const GraphExpr>(std::move(atom)));
    return e;
  }

  // Returns nullopt (without consuming reliably) when no scalar is present.
  std::optional<ExactPoint> try_scalar() {
    skip_space();
    if (accept("(")) {
      auto inner = try_scalar();
      if (!inner || !accept(")")) return std::nullopt;
      return inner;
    }
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
      const bool negative = accept("-");
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) return std::nullopt;
      Rational q{mpz_class(digits())};
      if (accept("/")) {
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) return std::nullopt;
        mpz_class den(digits());
        if (den == 0) fail("zero denominator");
        q /= Rational(den);
      }
      q.canonicalize();
      if (negative) q = -q;
      return ExactPoint(ExactReal(q), 0);
    }
    const std::size_t save = pos_;
    const std::string id = identifier();
    if (id == "i") {
      const std::size_t after_i = pos_;
      if (accept("/") && identifier() == "sqrt3") return rotor(RotorName::i_over_sqrt3).multiplier;
      pos_ = after_i;
      if (accept("*") && identifier() == "sqrt3") return ExactPoint(0, ExactReal::sqrt_of(3));
      pos_ = after_i;
      return rotor(RotorName::i).multiplier;
    }
    if (id == "eta" || id == "rho") {
      const ExactPoint base = rotor(id == "eta" ? RotorName::eta : RotorName::rho).multiplier;
      int exponent = 1;
      if (accept("^")) exponent = signed_int();
      return power(base, exponent);
    }
    pos_ = save;
    return std::nullopt;
  }

  GraphExpr parse_atom() {
    skip_space();
    if (accept("[")) {
      GraphExpr e;
      e.kind = GraphExpr::Kind::points;
      do {
        skip_space();
        const std::size_t start = pos_;
        std::size_t close = start;
        for (int depth = 0; close < text_.size(); ++close) {
          if (text_[close] == '(') ++depth;
          if (text_[close] == ')' && --depth == 0) break;
        }
        if (close >= text_.size()) fail("unterminated point literal");
        try {
          e.points.push_back(ExactPoint::parse(text_.substr(start, close + 1 - start)));
        } catch (const ParseError& err) {
          fail(std::string("bad point literal: ") + err.what());
        }
        pos_ = close + 1;
      } while (accept(","));
      expect("]");
      return e;
    }
    if (accept("(")) {
      GraphExpr e = parse_sum();
      expect(")");
      return e;
    }
    const std::size_t start = pos_;
    const std::string id = identifier();
    if (id.empty()) fail("expected a graph");
    if (id == "trim") {
      expect("(");
      GraphExpr inner = parse_sum();
      expect(",");
      skip_space();
      Rational r{mpz_class(digits())};
      if (accept("/")) r /= Rational(mpz_class(digits()));
      r.canonicalize();
      expect(")");
      GraphExpr e;
      e.kind = GraphExpr::Kind::trim;
      e.radius_sq = r;
      e.children.push_back(std::make_shared<const GraphExpr>(std::move(inner)));
      return e;
    }
    if (!named_graph_known(id)) {
      pos_ = start;
      fail("unknown atom '" + id + "'");
    }
    GraphExpr e;
    e.kind = GraphExpr::Kind::atom;
    e.name = id;
    return e;
  }

  std::vector<int> parse_rotspec() {
    std::vector<int> exps;
    if (accept("{")) {
      do {
        exps.push_back(signed_int());
      } while (accept(","));
      expect("}");
      return exps;
    }
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("malformed rotation set");
    }
    const int m = std::stoi(digits());
    for (int e = -m; e <= m; ++e) exps.push_back(e);
    return exps;
  }

  static bool named_graph_known(const std::string& id) {
    return id == "H" || id == "D" || id == "MOSER" || id == "V25" || id == "V31" || id == "V31S" || id == "V37" ||
           id == "V37T" || id == "V49";
  }

  static GraphExpr rotation(GraphExpr inner, std::vector<int> exps) {
    GraphExpr e;
    e.kind = GraphExpr::Kind::rotation_set;
    e.exponents = std::move(exps);
    e.children.push_back(std::make_shared<const GraphExpr>(std::move(inner)));
    return e;
  }

  static GraphExpr binary(GraphExpr::Kind kind, GraphExpr lhs, GraphExpr rhs) {
    GraphExpr e;
    e.kind = kind;
    e.children.push_back(std::make_shared<const GraphExpr>(std::move(lhs)));
    e.children.push_back(std::make_shared<const GraphExpr>(std::move(rhs)));
    return e;
  }

  int signed_int() {
    skip_space();
    const bool negative = accept("-");
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("malformed rotation set: expected integer");
    }
    const int v = std::stoi(digits());
    return negative ? -v : v;
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start < pos_ && std::isdigit(static_cast<unsigned char>(text_[start]))) {
      pos_ = start;
      return {};
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek_is(std::string_view tok) {
    skip_space();
    return text_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!peek_is(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression column " + std::to_string(pos_ + 1) + ": " + msg, 1, pos_ + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GraphExpr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

UnitGraph evaluate(const GraphExpr& expr, unsigned jobs) {
  switch (expr.kind) {
    case GraphExpr::Kind::atom: {
      auto g = named_graph(expr.name);
      if (!g) throw std::invalid_argument("unknown atom '" + expr.name + "'");
      return *g;
    }
    case GraphExpr::Kind::points:
      return UnitGraph::from_points(expr.points, EdgeMode::shortlist, jobs);
    case GraphExpr::Kind::scaled: {
      Transform t;
      t.multiplier = expr.multiplier;
      return evaluate(*expr.children[0], jobs).transformed(t);
    }
    case GraphExpr::Kind::rotation_set:
      return rotation_set(evaluate(*expr.children[0], jobs), expr.exponents, jobs);
    case GraphExpr::Kind::union_of:
      return graph_union(evaluate(*expr.children[0], jobs), evaluate(*expr.children[1], jobs), jobs);
    case GraphExpr::Kind::minkowski:
      return minkowski(evaluate(*expr.children[0], jobs), evaluate(*expr.children[1], jobs), jobs);
    case GraphExpr::Kind::trim:
      return trim(evaluate(*expr.children[0], jobs), ExactReal(expr.radius_sq));
  }
  throw std::logic_error("unhandled expression kind");
}

UnitGraph construct(std::string_view text, unsigned jobs) { return evaluate(parse_expr(text), jobs); }

}  // namespace udg
