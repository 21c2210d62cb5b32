#include "udg/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include <mpfr.h>

namespace udg {

namespace {

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_size(z.get_mpz_t()));
  if (mpz_size(z.get_mpz_t()) > 0) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h * 31 + static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
}

void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

class MpfrValue {
 public:
  explicit MpfrValue(unsigned bits) { mpfr_init2(v_, bits); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Merges a list of (possibly repeated, unsorted) terms into canonical form.
std::vector<ExactReal::Term> canonicalize(std::vector<ExactReal::Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.radicand < b.radicand; });
  std::vector<ExactReal::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().radicand == t.radicand) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const ExactReal::Term& t) { return sgn(t.coeff) == 0; });
  return out;
}

}  // namespace

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

ExactReal::ExactReal(long value) {
  if (value != 0) terms_.push_back({1, Rational(value)});
}

ExactReal::ExactReal(const Rational& value) {
  if (sgn(value) != 0) {
    Rational v = value;
    v.canonicalize();
    terms_.push_back({1, v});
  }
}

ExactReal ExactReal::sqrt_of(std::uint64_t n, const Rational& coeff) {
  if (n == 0 || sgn(coeff) == 0) return {};
  std::uint64_t outside = 1;
  std::uint64_t inside = n;
  for (std::uint64_t p = 2; p * p <= inside; ++p) {
    while (inside % (p * p) == 0) {
      inside /= p * p;
      outside *= p;
    }
  }
  ExactReal r;
  Rational c = coeff * Rational(static_cast<unsigned long>(outside));
  c.canonicalize();
  r.terms_.push_back({inside, c});
  return r;
}

ExactReal ExactReal::from_sorted_terms(std::vector<Term> terms) {
  ExactReal r;
  r.terms_ = canonicalize(std::move(terms));
  return r;
}

bool ExactReal::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1);
}

Rational ExactReal::coeff(std::uint64_t radicand) const {
  for (const auto& t : terms_) {
    if (t.radicand == radicand) return t.coeff;
  }
  return 0;
}

ExactReal ExactReal::operator-() const {
  ExactReal r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

ExactReal operator+(const ExactReal& x, const ExactReal& y) {
  std::vector<ExactReal::Term> out;
  out.reserve(x.terms_.size() + y.terms_.size());
  auto i = x.terms_.begin();
  auto j = y.terms_.begin();
  while (i != x.terms_.end() || j != y.terms_.end()) {
    if (j == y.terms_.end() || (i != x.terms_.end() && i->radicand < j->radicand)) {
      out.push_back(*i++);
    } else if (i == x.terms_.end() || j->radicand < i->radicand) {
      out.push_back(*j++);
    } else {
      Rational c = i->coeff + j->coeff;
      if (sgn(c) != 0) out.push_back({i->radicand, std::move(c)});
      ++i;
      ++j;
    }
  }
  ExactReal r;
  r.terms_ = std::move(out);
  return r;
}

ExactReal operator-(const ExactReal& x, const ExactReal& y) { return x + (-y); }

ExactReal operator*(const ExactReal& x, const ExactReal& y) {
  if (x.is_zero() || y.is_zero()) return {};
  std::vector<ExactReal::Term> out;
  out.reserve(x.terms_.size() * y.terms_.size());
  for (const auto& a : x.terms_) {
    for (const auto& b : y.terms_) {
      const std::uint64_t g = std::gcd(a.radicand, b.radicand);
      const std::uint64_t key = (a.radicand / g) * (b.radicand / g);
      if (b.radicand / g != 0 && key / (b.radicand / g) != a.radicand / g) {
        throw std::overflow_error("radicand product overflows 64 bits");
      }
      Rational c = a.coeff * b.coeff * Rational(static_cast<unsigned long>(g));
      out.push_back({key, std::move(c)});
    }
  }
  return ExactReal::from_sorted_terms(std::move(out));
}

ExactReal ExactReal::scaled(const Rational& factor) const {
  if (sgn(factor) == 0) return {};
  ExactReal r = *this;
  for (auto& t : r.terms_) t.coeff *= factor;
  return r;
}

bool operator==(const ExactReal& x, const ExactReal& y) {
  if (x.terms_.size() != y.terms_.size()) return false;
  for (std::size_t i = 0; i < x.terms_.size(); ++i) {
    if (x.terms_[i].radicand != y.terms_[i].radicand || x.terms_[i].coeff != y.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

double ExactReal::to_double() const {
  double s = 0;
  for (const auto& t : terms_) s += t.coeff.get_d() * std::sqrt(static_cast<double>(t.radicand));
  return s;
}

Interval enclose(const ExactReal& x, unsigned bits) {
  MpfrValue lo(bits), hi(bits), root_lo(bits), root_hi(bits), term(bits);
  mpfr_set_zero(lo.get(), 1);
  mpfr_set_zero(hi.get(), 1);
  for (const auto& t : x.terms()) {
    mpfr_set_ui(root_lo.get(), static_cast<unsigned long>(t.radicand), MPFR_RNDD);
    mpfr_sqrt(root_lo.get(), root_lo.get(), MPFR_RNDD);
    mpfr_set_ui(root_hi.get(), static_cast<unsigned long>(t.radicand), MPFR_RNDU);
    mpfr_sqrt(root_hi.get(), root_hi.get(), MPFR_RNDU);
    const bool positive = sgn(t.coeff) > 0;
    mpfr_mul_q(term.get(), positive ? root_lo.get() : root_hi.get(), t.coeff.get_mpq_t(), MPFR_RNDD);
    mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
    mpfr_mul_q(term.get(), positive ? root_hi.get() : root_lo.get(), t.coeff.get_mpq_t(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
  }
  return {mpfr_get_d(lo.get(), MPFR_RNDD), mpfr_get_d(hi.get(), MPFR_RNDU)};
}

int ExactReal::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return sgn(terms_[0].coeff);
  // Double-precision filter with a conservative rounding bound.
  double approx = 0;
  double magnitude = 0;
  for (const auto& t : terms_) {
    const double v = t.coeff.get_d() * std::sqrt(static_cast<double>(t.radicand));
    approx += v;
    magnitude += std::abs(v);
  }
  const double bound = magnitude * 8.0 * static_cast<double>(terms_.size() + 2) *
                       std::numeric_limits<double>::epsilon();
  if (std::isfinite(approx) && std::abs(approx) > bound && magnitude > 1e-250) {
    return approx > 0 ? 1 : -1;
  }
  // Nonzero is guaranteed by canonical form, so refining terminates.
  for (unsigned bits = 128;; bits *= 2) {
    MpfrValue lo(bits), hi(bits), root(bits), term(bits);
    mpfr_set_zero(lo.get(), 1);
    mpfr_set_zero(hi.get(), 1);
    for (const auto& t : terms_) {
      const bool positive = sgn(t.coeff) > 0;
      mpfr_set_ui(root.get(), static_cast<unsigned long>(t.radicand), MPFR_RNDN);
      mpfr_sqrt(root.get(), root.get(), positive ? MPFR_RNDD : MPFR_RNDU);
      mpfr_mul_q(term.get(), root.get(), t.coeff.get_mpq_t(), MPFR_RNDD);
      mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
      mpfr_set_ui(root.get(), static_cast<unsigned long>(t.radicand), MPFR_RNDN);
      mpfr_sqrt(root.get(), root.get(), positive ? MPFR_RNDU : MPFR_RNDD);
      mpfr_mul_q(term.get(), root.get(), t.coeff.get_mpq_t(), MPFR_RNDU);
      mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
    }
    if (mpfr_sgn(lo.get()) > 0) return 1;
    if (mpfr_sgn(hi.get()) < 0) return -1;
  }
}

int compare(const ExactReal& x, const ExactReal& y) { return (x - y).sign(); }

std::size_t ExactReal::hash() const {
  std::size_t h = 0x51ed27;
  for (const auto& t : terms_) {
    hash_combine(h, std::hash<std::uint64_t>{}(t.radicand));
    hash_combine(h, hash_mpz(t.coeff.get_num()));
    hash_combine(h, hash_mpz(t.coeff.get_den()));
  }
  return h;
}

std::string ExactReal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational mag = abs(t.coeff);
    const bool negative = sgn(t.coeff) < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.radicand == 1) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += "sqrt(" + std::to_string(t.radicand) + ")";
    }
  }
  return out;
}

namespace {

class TextCursor {
 public:
  explicit TextCursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  std::string digits() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("column " + std::to_string(pos_ + 1) + ": " + msg, 1, pos_ + 1);
  }
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Rational parse_rational(TextCursor& cur) {
  mpz_class num(cur.digits());
  mpz_class den = 1;
  if (cur.accept("/")) {
    den = mpz_class(cur.digits());
    if (den == 0) cur.fail("zero denominator");
    if (den == 1) cur.fail("non-canonical rational: explicit /1");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) cur.fail("non-canonical rational: not in lowest terms");
  }
  return Rational(num, den);
}

std::uint64_t parse_sqrt(TextCursor& cur) {
  cur.expect("(");
  const std::string n = cur.digits();
  cur.expect(")");
  const std::uint64_t radicand = std::stoull(n);
  if (radicand <= 1 || !is_squarefree(radicand)) cur.fail("radicand must be squarefree and > 1");
  return radicand;
}

ExactReal parse_real(TextCursor& cur) {
  std::vector<ExactReal::Term> terms;
  bool negative = cur.accept("-");
  for (;;) {
    ExactReal::Term term{1, 1};
    if (cur.accept("sqrt")) {
      term.radicand = parse_sqrt(cur);
    } else {
      term.coeff = parse_rational(cur);
      if (cur.accept("*")) {
        cur.expect("sqrt");
        term.radicand = parse_sqrt(cur);
      }
    }
    if (sgn(term.coeff) == 0) {
      // A bare 0 is the zero value; zero terms are not allowed elsewhere.
      if (terms.empty() && !negative && term.radicand == 1 && cur.peek() != '+' && cur.peek() != '-') return ExactReal();
      cur.fail("zero coefficient");
    }
    if (negative) term.coeff = -term.coeff;
    if (!terms.empty() && terms.back().radicand >= term.radicand) {
      cur.fail("terms must be sorted by radicand without repeats");
    }
    terms.push_back(std::move(term));
    if (cur.accept("+")) {
      negative = false;
    } else if (cur.accept("-")) {
      negative = true;
    } else {
      break;
    }
  }
  ExactReal r;
  for (auto& t : terms) r += ExactReal::sqrt_of(t.radicand, t.coeff);
  return r;
}

}  // namespace

ExactReal ExactReal::parse(std::string_view text) {
  TextCursor cur(text);
  ExactReal r = parse_real(cur);
  if (!cur.at_end()) cur.fail("trailing characters");
  return r;
}

ExactPoint operator*(const ExactPoint& p, const ExactPoint& q) {
  return {p.re * q.re - p.im * q.im, p.re * q.im + p.im * q.re};
}

std::size_t ExactPoint::hash() const {
  std::size_t h = re.hash();
  hash_combine(h, im.hash());
  return h;
}

std::string ExactPoint::to_string() const { return "(" + re.to_string() + "; " + im.to_string() + ")"; }

ExactPoint ExactPoint::parse(std::string_view text) {
  TextCursor cur(text);
  cur.expect("(");
  ExactReal re = parse_real(cur);
  cur.expect(";");
  ExactReal im = parse_real(cur);
  cur.expect(")");
  if (!cur.at_end()) cur.fail("trailing characters");
  return {std::move(re), std::move(im)};
}

ExactPoint pt_mul(const ExactPoint& p, const ExactPoint& q) { return p * q; }

ExactReal dist_sq(const ExactPoint& p, const ExactPoint& q) { return (p - q).norm_sq(); }

bool is_unit(const ExactPoint& p, const ExactPoint& q) { return dist_sq(p, q) == ExactReal(1); }

ExactPoint inverse(const ExactPoint& p) {
  const ExactReal n = p.norm_sq();
  if (n.is_zero()) throw std::domain_error("inverse of zero");
  if (!n.is_rational()) throw std::domain_error("inverse needs a rational modulus: " + p.to_string());
  const Rational inv = 1 / n.coeff(1);
  return p.conj().scaled(inv);
}

ExactPoint power(const ExactPoint& p, int exponent) {
  ExactPoint base = exponent < 0 ? inverse(p) : p;
  ExactPoint result{1, 0};
  for (int e = std::abs(exponent); e > 0; --e) result = result * base;
  return result;
}

ExactPoint conj_sqrt33(const ExactPoint& p) {
  auto flip = [](const ExactReal& x) {
    ExactReal out;
    for (const auto& t : x.terms()) {
      out += ExactReal::sqrt_of(t.radicand, t.radicand % 11 == 0 ? Rational(-t.coeff) : t.coeff);
    }
    return out;
  };
  return {flip(p.re), flip(p.im)};
}

ExactPoint Transform::apply(const ExactPoint& p) const {
  return kind == Kind::conjugate_sqrt33 ? conj_sqrt33(p) : multiplier * p;
}

Transform rotor(RotorName name) {
  Transform t;
  switch (name) {
    case RotorName::eta:
      t.multiplier = {ExactReal::sqrt_of(33, Rational(1, 6)), ExactReal::sqrt_of(3, Rational(1, 6))};
      break;
    case RotorName::eta_inv:
      t.multiplier = {ExactReal::sqrt_of(33, Rational(1, 6)), ExactReal::sqrt_of(3, Rational(-1, 6))};
      break;
    case RotorName::rho:
      t.multiplier = {ExactReal(Rational(7, 8)), ExactReal::sqrt_of(15, Rational(1, 8))};
      break;
    case RotorName::i:
      t.multiplier = {0, 1};
      break;
    case RotorName::i_over_sqrt3:
      t.multiplier = {0, ExactReal::sqrt_of(3, Rational(1, 3))};
      break;
    case RotorName::conj_sqrt33:
      t.kind = Transform::Kind::conjugate_sqrt33;
      break;
  }
  return t;
}

std::optional<RotorName> rotor_from_string(std::string_view name) {
  if (name == "eta") return RotorName::eta;
  if (name == "eta_inv") return RotorName::eta_inv;
  if (name == "rho") return RotorName::rho;
  if (name == "i") return RotorName::i;
  if (name == "i_over_sqrt3" || name == "i/sqrt3") return RotorName::i_over_sqrt3;
  if (name == "conj_sqrt33") return RotorName::conj_sqrt33;
  return std::nullopt;
}

}  // namespace udg
