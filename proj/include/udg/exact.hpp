#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace udg {

using Rational = mpq_class;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

bool is_squarefree(std::uint64_t n);

/// An element of the real field generated by square roots of squarefree
/// integers, stored as sum of q_n * sqrt(n). Radicand 1 holds the rational
/// part. Terms are sorted by radicand, coefficients nonzero and reduced, so
/// structural equality is value equality.
class ExactReal {
 public:
  struct Term {
    std::uint64_t radicand;
    Rational coeff;
  };

  ExactReal() = default;
  ExactReal(long value);  // NOLINT(google-explicit-constructor)
  ExactReal(const Rational& value);  // NOLINT(google-explicit-constructor)

  /// coeff * sqrt(n) for any n >= 0; square factors of n are pulled out.
  static ExactReal sqrt_of(std::uint64_t n, const Rational& coeff = 1);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Coefficient of sqrt(radicand); zero when absent.
  Rational coeff(std::uint64_t radicand) const;

  ExactReal operator-() const;
  friend ExactReal operator+(const ExactReal& x, const ExactReal& y);
  friend ExactReal operator-(const ExactReal& x, const ExactReal& y);
  friend ExactReal operator*(const ExactReal& x, const ExactReal& y);
  ExactReal& operator+=(const ExactReal& y) { return *this = *this + y; }
  ExactReal& operator-=(const ExactReal& y) { return *this = *this - y; }
  ExactReal& operator*=(const ExactReal& y) { return *this = *this * y; }
  ExactReal scaled(const Rational& factor) const;

  friend bool operator==(const ExactReal& x, const ExactReal& y);
  friend bool operator!=(const ExactReal& x, const ExactReal& y) { return !(x == y); }

  /// Exact sign in {-1, 0, +1}.
  int sign() const;
  double to_double() const;
  std::size_t hash() const;

  /// `q0 + q1*sqrt(n1) - ...`, radicands ascending, "0" for zero.
  std::string to_string() const;
  /// Parses the to_string grammar. Rejects non-canonical rationals
  /// (not in lowest terms, explicit /1) and non-squarefree radicands.
  static ExactReal parse(std::string_view text);

 private:
  static ExactReal from_sorted_terms(std::vector<Term> terms);
  std::vector<Term> terms_;
};

/// Three-way exact comparison.
int compare(const ExactReal& x, const ExactReal& y);

/// Enclosure [lo, hi] of an ExactReal computed with `bits` of precision.
struct Interval {
  double lo;
  double hi;
};
Interval enclose(const ExactReal& x, unsigned bits);

struct ExactPoint {
  ExactReal re;
  ExactReal im;

  ExactPoint() = default;
  ExactPoint(ExactReal r, ExactReal i) : re(std::move(r)), im(std::move(i)) {}

  friend ExactPoint operator+(const ExactPoint& p, const ExactPoint& q) {
    return {p.re + q.re, p.im + q.im};
  }
  friend ExactPoint operator-(const ExactPoint& p, const ExactPoint& q) {
    return {p.re - q.re, p.im - q.im};
  }
  friend ExactPoint operator*(const ExactPoint& p, const ExactPoint& q);
  friend bool operator==(const ExactPoint& p, const ExactPoint& q) {
    return p.re == q.re && p.im == q.im;
  }
  friend bool operator!=(const ExactPoint& p, const ExactPoint& q) { return !(p == q); }

  ExactPoint scaled(const Rational& factor) const { return {re.scaled(factor), im.scaled(factor)}; }
  ExactPoint conj() const { return {re, -im}; }
  ExactReal norm_sq() const { return re * re + im * im; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  std::size_t hash() const;

  /// `(<re>; <im>)`
  std::string to_string() const;
  static ExactPoint parse(std::string_view text);
};

struct ExactPointHash {
  std::size_t operator()(const ExactPoint& p) const { return p.hash(); }
};

ExactPoint pt_mul(const ExactPoint& p, const ExactPoint& q);
ExactReal dist_sq(const ExactPoint& p, const ExactPoint& q);
bool is_unit(const ExactPoint& p, const ExactPoint& q);

/// Multiplicative inverse; requires a rational modulus.
ExactPoint inverse(const ExactPoint& p);
ExactPoint power(const ExactPoint& p, int exponent);

/// Field automorphism sqrt(11) -> -sqrt(11) applied to both coordinates.
/// On base-graph points (a + b√33 + i(c√3 + d√11))/12 it negates b and d.
ExactPoint conj_sqrt33(const ExactPoint& p);

enum class RotorName { eta, eta_inv, rho, i, i_over_sqrt3, conj_sqrt33 };

/// A plane map used to build and transform graphs: either multiplication
/// by a complex number or the sqrt(11) conjugation.
struct Transform {
  enum class Kind { multiply, conjugate_sqrt33 };
  Kind kind = Kind::multiply;
  ExactPoint multiplier{1, 0};

  ExactPoint apply(const ExactPoint& p) const;
};

/// η = (√33 + i√3)/6, ρ = (7 + i√15)/8, i, i/√3, and the √33 conjugation.
Transform rotor(RotorName name);
std::optional<RotorName> rotor_from_string(std::string_view name);

}  // namespace udg

template <>
struct std::hash<udg::ExactPoint> {
  std::size_t operator()(const udg::ExactPoint& p) const { return p.hash(); }
};
