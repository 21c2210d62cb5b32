#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "udg/exact.hpp"

using namespace udg;

namespace {

ExactReal r(const char* text) { return ExactReal::parse(text); }

ExactReal random_real(std::mt19937& rng) {
  static const std::uint64_t rad[] = {1, 2, 3, 5, 11, 15, 33};
  std::uniform_int_distribution<int> num(-20, 20), den(1, 12), pick(0, 6), count(0, 3);
  ExactReal x;
  for (int i = count(rng); i > 0; --i) x += ExactReal::sqrt_of(rad[pick(rng)], Rational(num(rng), den(rng)));
  return x;
}

double approx(const ExactReal& x) {
  double s = 0;
  for (const auto& t : x.terms()) s += t.coeff.get_d() * std::sqrt(static_cast<double>(t.radicand));
  return s;
}

}  // namespace

TEST_CASE("radical arithmetic") {
  CHECK(ExactReal::sqrt_of(3) * ExactReal::sqrt_of(11) == ExactReal::sqrt_of(33));
  CHECK((ExactReal(1) + ExactReal::sqrt_of(33)) * (ExactReal(1) - ExactReal::sqrt_of(33)) == ExactReal(-32));
  const ExactReal zero = ExactReal::sqrt_of(3, Rational(1, 2)) + ExactReal::sqrt_of(3, Rational(-1, 2));
  CHECK(zero.is_zero());
  CHECK(zero.terms().empty());
  CHECK(ExactReal::sqrt_of(12) == ExactReal::sqrt_of(3, 2));
  CHECK(ExactReal::sqrt_of(4) == ExactReal(2));
}

TEST_CASE("exact sign") {
  CHECK(ExactReal().sign() == 0);
  CHECK((ExactReal(6) - ExactReal::sqrt_of(33)).sign() == 1);
  CHECK((ExactReal(Rational(17, 6)) + ExactReal::sqrt_of(33, Rational(1, 6)) - ExactReal(4)).sign() == -1);
  // tight cancellation: sqrt(2)+sqrt(3) vs sqrt(5+2*sqrt(6)) squared form
  const ExactReal a = ExactReal::sqrt_of(2) + ExactReal::sqrt_of(3);
  CHECK((a * a - (ExactReal(5) + ExactReal::sqrt_of(6, 2))).sign() == 0);
}

TEST_CASE("sign agrees with floating point on random values") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const ExactReal x = random_real(rng);
    const double d = approx(x);
    if (std::abs(d) > 1e-9) CHECK(x.sign() == (d > 0 ? 1 : -1));
    CHECK(std::abs(x.to_double() - d) < 1e-9);
  }
}

TEST_CASE("ring laws on random values") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const ExactReal x = random_real(rng), y = random_real(rng), z = random_real(rng);
    CHECK((x + y) * z == x * z + y * z);
    CHECK(x * y == y * x);
    CHECK((x - x).is_zero());
    CHECK(compare(x, y) == -compare(y, x));
  }
}

TEST_CASE("text round trip and canonical form") {
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    const ExactReal x = random_real(rng);
    CHECK(ExactReal::parse(x.to_string()) == x);
    CHECK(ExactReal::parse(x.to_string()).to_string() == x.to_string());
  }
  CHECK(ExactReal().to_string() == "0");
  CHECK(r("0").is_zero());
  CHECK(r("1/2 + 1/2*sqrt(33)") == ExactReal(Rational(1, 2)) + ExactReal::sqrt_of(33, Rational(1, 2)));
  CHECK_THROWS_AS(r("2/4"), ParseError);
  CHECK_THROWS_AS(r("3/1"), ParseError);
  CHECK_THROWS_AS(r("sqrt(12)"), ParseError);
  CHECK_THROWS_AS(r("1 +"), ParseError);
}

TEST_CASE("points") {
  const ExactPoint p = ExactPoint::parse("(1/2; 1/2*sqrt(3))");
  CHECK(p.to_string() == "(1/2; 1/2*sqrt(3))");
  CHECK(ExactPoint::parse(p.to_string()) == p);
  CHECK(ExactPoint::parse("(0; sqrt(3))") == ExactPoint(0, ExactReal::sqrt_of(3)));
  CHECK(dist_sq(ExactPoint(0, 0), ExactPoint(1, 0)) == ExactReal(1));
  CHECK(is_unit(ExactPoint(0, 0), ExactPoint(1, 0)));
  CHECK_FALSE(is_unit(ExactPoint(0, 0), ExactPoint(0, 0)));

  // (4√33 + 4i√3)/12 lies at distance 2
  const ExactPoint ref(ExactReal::sqrt_of(33, Rational(1, 3)), ExactReal::sqrt_of(3, Rational(1, 3)));
  CHECK(dist_sq(ExactPoint(0, 0), ref) == ExactReal(4));
  // (2i√3 + 6i√11)/12: 17/6 + √33/6 = (√11/2 + √3/6)^2
  const ExactPoint aux(0, ExactReal::sqrt_of(3, Rational(1, 6)) + ExactReal::sqrt_of(11, Rational(1, 2)));
  const ExactReal expect = ExactReal(Rational(17, 6)) + ExactReal::sqrt_of(33, Rational(1, 6));
  CHECK(dist_sq(ExactPoint(0, 0), aux) == expect);
  const ExactReal side = ExactReal::sqrt_of(11, Rational(1, 2)) + ExactReal::sqrt_of(3, Rational(1, 6));
  CHECK(side * side == expect);
}

TEST_CASE("rotors match their trigonometric definitions") {
  const auto eta = rotor(RotorName::eta).multiplier;
  const auto rho = rotor(RotorName::rho).multiplier;
  const std::complex<double> e = std::polar(1.0, 0.5 * std::acos(5.0 / 6.0));
  const std::complex<double> q = std::polar(1.0, std::acos(7.0 / 8.0));
  CHECK(eta == ExactPoint(ExactReal::sqrt_of(33, Rational(1, 6)), ExactReal::sqrt_of(3, Rational(1, 6))));
  CHECK(rho == ExactPoint(ExactReal(Rational(7, 8)), ExactReal::sqrt_of(15, Rational(1, 8))));
  CHECK(std::abs(eta.re.to_double() - e.real()) < 1e-12);
  CHECK(std::abs(eta.im.to_double() - e.imag()) < 1e-12);
  CHECK(std::abs(rho.re.to_double() - q.real()) < 1e-12);
  CHECK(std::abs(rho.im.to_double() - q.imag()) < 1e-12);
  CHECK(rotor(RotorName::i).multiplier == ExactPoint(0, 1));
  CHECK(pt_mul(eta, eta) == ExactPoint(ExactReal(Rational(5, 6)), ExactReal::sqrt_of(11, Rational(1, 6))));
  CHECK(power(eta, 3) == pt_mul(pt_mul(eta, eta), eta));
  CHECK(pt_mul(power(eta, -2), power(eta, 2)) == ExactPoint(1, 0));
  CHECK(rotor_from_string("rho") == RotorName::rho);
  CHECK_FALSE(rotor_from_string("nope").has_value());
}

TEST_CASE("rotation preserves modulus and unit distance") {
  std::mt19937 rng(5);
  const auto eta = rotor(RotorName::eta).multiplier;
  for (int i = 0; i < 100; ++i) {
    const ExactPoint p(random_real(rng), random_real(rng));
    CHECK(pt_mul(eta, p).norm_sq() == p.norm_sq());
    CHECK(pt_mul(p, ExactPoint(1, 0)) == p);
  }
  // radius √3 point and its η² rotation are a unit apart
  const ExactPoint tip(0, ExactReal::sqrt_of(3));
  CHECK(is_unit(tip, pt_mul(power(eta, 2), tip)));
}

TEST_CASE("sqrt(11) conjugation") {
  const ExactPoint p(ExactReal::sqrt_of(33), ExactReal::sqrt_of(11) + ExactReal::sqrt_of(3));
  const ExactPoint c = conj_sqrt33(p);
  CHECK(c == ExactPoint(-ExactReal::sqrt_of(33), -ExactReal::sqrt_of(11) + ExactReal::sqrt_of(3)));
  CHECK(conj_sqrt33(c) == p);
}
