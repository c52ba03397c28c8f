#include <doctest.h>

#include "gsp4/cyclotomic.hpp"
#include "gsp4/errors.hpp"
#include "gsp4/series.hpp"

#include <random>

using namespace gsp4;

namespace {

Scalar random_scalar(std::mt19937& rng, long p) {
  std::uniform_int_distribution<int> coef(-4, 4), ex(0, 2), nterms(1, 3);
  auto rpoly = [&](bool allow_u) {
    Poly q;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
      std::array<int, kNumVars> e{ex(rng), ex(rng), ex(rng), allow_u ? ex(rng) % 2 : 0};
      q += Poly::monomial(Mono::from(e), coef(rng));
    }
    return q;
  };
  Poly d = rpoly(false);
  if (d.is_zero()) d = Poly(1);
  return Scalar(rpoly(true), d, p);
}

}  // namespace

TEST_CASE("polynomial gcd recovers planted factors") {
  Poly a = Poly::var(VA), b = Poly::var(VB), c = Poly::var(VC);
  Poly f = a * b - c + 3;
  Poly g = a - b * c;
  Poly h = a * a + 2 * b;
  CHECK(gcd(f * g, f * h) == f);
  CHECK(gcd(g * 6, g * h * 4) == g * (-2));
  CHECK(gcd(a * b, b * c) == b);
  Poly q;
  CHECK(divide_exact(f * g * h, g, q));
  CHECK(q == f * h);
  CHECK_FALSE(divide_exact(f, g, q));
}

TEST_CASE("scalar canonical form") {
  const long p = 2;
  Scalar a = Scalar::a(p), b = Scalar::b(p), c = Scalar::c(p);
  Scalar delta = b * c / a;
  CHECK((a * delta - b * c).is_zero());
  CHECK(((a * a - b * b) / (a - b)) == a + b);
  Scalar u = Scalar::u_pow(p, 1);
  CHECK(u * u == Scalar(2));
  CHECK((Scalar(1) / (Scalar(1) + u)) == (u - Scalar(1)));
  CHECK(Scalar::parse((a / (a + b)).str(), p) == a / (a + b));
  CHECK((a / (a + b)).str() == "a / (a + b)");
  CHECK(Scalar::u_pow(p, -3) == u / Scalar(4));
}

TEST_CASE("scalar_specialize examples") {
  const long p = 2;
  Scalar u2 = Scalar::u_pow(p, 2);
  Scalar x = Scalar(1) - Scalar::c(p) / u2;
  Assignment asg{{"a", 1}, {"b", 1}, {"c", 4}};
  CHECK(scalar_specialize(x, asg) == -1);
  CHECK(scalar_specialize(u2, asg) == 2);
  Scalar a = Scalar::a(p), b = Scalar::b(p), c = Scalar::c(p);
  CHECK(scalar_specialize(a * (b * c / a) - b * c, asg) == 0);
  CHECK_THROWS_AS(scalar_specialize(Scalar::u_pow(p, 1), asg), IrrationalResidue);
  CHECK_THROWS_AS(scalar_specialize(Scalar(1) / (a - b), asg), DivisionByZero);
  Scalar u4 = Scalar::u_pow(4, 1);
  CHECK(scalar_specialize(u4 * Scalar::a(4), {{"a", 3}, {"b", 1}, {"c", 1}, {"u", 2}}) == 6);
}

TEST_CASE("ring axioms and specialization are compatible on random instances") {
  std::mt19937 rng(11);
  const long p = 3;
  Assignment asg{{"a", mpq_class(5, 7)}, {"b", mpq_class(-2, 3)}, {"c", mpq_class(11, 2)}};
  for (int it = 0; it < 60; ++it) {
    Scalar x = random_scalar(rng, p), y = random_scalar(rng, p), z = random_scalar(rng, p);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x - x == Scalar(0));
    if (!y.is_zero()) CHECK((x / y) * y == x);
    Scalar xe = x.is_u_free() ? x : x * x.conj_u();
    Scalar ye = y.is_u_free() ? y : y * y.conj_u();
    try {
      mpq_class sx = scalar_specialize(xe, asg), sy = scalar_specialize(ye, asg);
      CHECK(scalar_specialize(xe + ye, asg) == sx + sy);
      CHECK(scalar_specialize(xe * ye, asg) == sx * sy);
    } catch (const DivisionByZero&) {
    }
  }
}

TEST_CASE("geometric_sum examples") {
  const long p = 2;
  GeometricSpec s1{{{Scalar(1), Scalar(mpq_class(1, 2))}}};
  CHECK(geometric_sum(s1) == Scalar(2));
  Scalar lam = Scalar::a(p) / Scalar(3);
  GeometricSpec s2{{{Scalar(1), lam}, {Scalar(-1), lam}}};
  CHECK(geometric_sum(s2).is_zero());
  CHECK_THROWS_AS(geometric_sum(GeometricSpec{{{Scalar(1), Scalar(1)}}}), PoleAtOne);

  Scalar a = Scalar::a(p), b = Scalar::b(p), t = Scalar::c(p);
  GeometricSpec gl2{{{a / (a - b), a * t}, {-b / (a - b), b * t}}};
  Scalar closed = Scalar(1) / ((Scalar(1) - a * t) * (Scalar(1) - b * t));
  CHECK(geometric_sum(gl2) == closed);
  // expand both sides to order 10
  auto lhs = gl2.expand("t", 10);
  auto rhs = TruncatedSeries::rational("t", {Scalar(1)},
                                       {Scalar(1), -(a + b) * t, a * b * t * t}, 10);
  CHECK(lhs == rhs);
}

TEST_CASE("geometric tail is divisible by the ratio power") {
  const long p = 5;
  Scalar l1 = Scalar::a(p), l2 = Scalar::b(p) / Scalar(3);
  GeometricSpec s{{{Scalar(2), l1}, {Scalar::c(p), l2}}};
  Scalar closed = geometric_sum(s);
  const int N = 6;
  auto partial = s.expand("x", N);
  Scalar ps;
  for (int n = 0; n <= N; ++n) ps += partial[n];
  Scalar tail = closed - ps;
  Scalar expect = Scalar(2) * l1.pow(N + 1) / (Scalar(1) - l1) + Scalar::c(p) * l2.pow(N + 1) / (Scalar(1) - l2);
  CHECK(tail == expect);
}

TEST_CASE("series_shift_divide examples") {
  const long p = 2;
  TruncatedSeries F("X", {Scalar(1), Scalar(2), Scalar(3)});
  auto G = series_shift_divide(F);
  CHECK(G == TruncatedSeries("X", {Scalar(2), Scalar(3)}));
  CHECK(series_shift_divide(TruncatedSeries("X", {Scalar(7), Scalar(0)})) == TruncatedSeries("X", {Scalar(0)}));
  Scalar a = Scalar::a(p);
  auto H = TruncatedSeries::rational("X", {Scalar(1)}, {Scalar(1), -a}, 5);
  auto K = TruncatedSeries::rational("X", {a}, {Scalar(1), -a}, 4);
  CHECK(series_shift_divide(H) == K);
}

TEST_CASE("cyclotomic arithmetic") {
  auto z3 = Cyclotomic::zeta(3, 1);
  CHECK(z3 * z3 * z3 == Cyclotomic(3, 1));
  CHECK((Cyclotomic(3, 1) + z3 + z3 * z3).is_zero());
  auto z6 = Cyclotomic::zeta(6, 1);
  CHECK(z6 * z6 == z3);
  CHECK(Cyclotomic::zeta(4, 2) == Cyclotomic(1, -1));
  auto chars = dirichlet_characters(3, 2);
  CHECK(chars.size() == 6);
  for (const auto& chi : chars) {
    Cyclotomic s(1);
    for (long x = 1; x < 9; ++x)
      if (x % 3) s += chi.at(x);
    if (chi.is_trivial()) CHECK(s == Cyclotomic(1, 6));
    else CHECK(s.is_zero());
    CHECK((chi * chi.inverse()).is_trivial());
  }
  CHECK(dirichlet_characters(2, 2).size() == 2);
  CHECK(dirichlet_characters(2, 3).size() == 4);
  CHECK(dirichlet_characters(5, 2).size() == 20);
}
