#include <doctest.h>

#include "gsp4/eisenstein.hpp"
#include "gsp4/errors.hpp"

using namespace gsp4;

namespace {

const long kPrimes[] = {2, 3, 5};
constexpr int kN = 200;

mpq_class qpow(long b, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
  return mpq_class(r);
}

GlobalSchwartz at(long p, const SchwartzFunction& f) { return GlobalSchwartz::spherical(p).with_p(f); }

int small_t(long p) { return p == 2 ? 2 : 1; }

}  // namespace

TEST_CASE("spherical data gives twice the divisor sums") {
  auto F = eisenstein_F(2, GlobalSchwartz::spherical(5), 20);
  CHECK(F.a[6] == Cyclotomic(1, 504));
  CHECK(F.weight == 4);
  for (int n = 1; n <= 20; ++n) {
    mpq_class s = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) s += qpow(d, 3);
    CHECK(F.a[n] == Cyclotomic(1, 2 * s));
  }
  auto odd = eisenstein_F(3, GlobalSchwartz::spherical(5), 30);
  for (int n = 1; n <= 30; ++n) CHECK(odd.a[n].is_zero());
  CHECK(GlobalSchwartz::spherical(3).phi_at_origin() == 1);
  CHECK_THROWS_AS(eisenstein_F(0, GlobalSchwartz::spherical(3), 5), WeightZeroSupport);
  CHECK_NOTHROW(eisenstein_F(0, at(3, schwartz_dep(3)), 5));
}

TEST_CASE("theta^{k+1} E = F for depleted and critical data") {
  for (long p : kPrimes)
    for (int k = 0; k <= 10; ++k)
      for (const auto& f : {schwartz_dep(p), schwartz_crit(p)}) {
        if (k == 0 && f == schwartz_crit(p)) continue;  // Phi(0, 0) != 0
        auto phi = at(p, f);
        auto E = eisenstein_E_padic(k, phi, kN);
        auto F = eisenstein_F(k, phi, kN);
        for (int i = 0; i <= k; ++i) E = qexp_operator(QExpOp::Theta, E);
        CHECK(E.weight == F.weight);
        CHECK(E.agrees(F, kN));
      }
}

TEST_CASE("U_p, V_p and <p> on critical and depleted series") {
  for (long p : kPrimes)
    for (int k = 1; k <= 10; ++k) {
      auto crit = eisenstein_F(k, at(p, schwartz_crit(p)), kN * p);
      auto dep = eisenstein_F(k, at(p, schwartz_dep(p)), kN);
      auto up = qexp_operator(QExpOp::Up, crit);
      CHECK(up.agrees(scaled(crit, qpow(p, k + 1)), kN));
      auto updep = qexp_operator(QExpOp::Up, eisenstein_F(k, at(p, schwartz_dep(p)), kN * p));
      for (int n = 1; n <= kN; ++n) CHECK(updep.a[n].is_zero());
      REQUIRE(crit.diamond);
      auto vp = qexp_operator(QExpOp::DiamondInv, qexp_operator(QExpOp::Vp, crit));
      CHECK(dep.agrees(crit - scaled(vp, qpow(p, k + 1)), kN));
      CHECK(qexp_operator(QExpOp::Up, qexp_operator(QExpOp::Vp, dep)).agrees(dep, kN / p));
    }
}

TEST_CASE("q-expansion operators match the transported table operators") {
  for (long p : kPrimes) {
    auto chars = dirichlet_characters(p, small_t(p));
    std::vector<SchwartzFunction> tables = {schwartz_sph(p), schwartz_crit(p), schwartz_dep(p)};
    for (const auto& mu : chars) tables.push_back(schwartz_dep_twisted(mu, chars.back()));
    for (int k : {1, 2, 5})
      for (const auto& f : tables) {
        auto F = eisenstein_F(k, at(p, f), kN * p);
        auto lhs = qexp_operator(QExpOp::Up, F);
        auto rhs = eisenstein_F(k, at(p, schwartz_operator(SchwartzOp::Up, f, k)), kN);
        CHECK(lhs.agrees(rhs, kN));
        auto vl = qexp_operator(QExpOp::Vp, eisenstein_F(k, at(p, f), kN));
        auto vr = eisenstein_F(k, at(p, schwartz_operator(SchwartzOp::Phi, f, k)), kN);
        CHECK(vl.agrees(vr, kN));
        if (F.diamond) {
          auto dl = qexp_operator(QExpOp::Diamond, eisenstein_F(k, at(p, f), kN));
          auto dr = eisenstein_F(k, at(p, schwartz_operator(SchwartzOp::Diamond, f, k)), kN);
          CHECK(dl.agrees(dr, kN));
        }
      }
  }
}

TEST_CASE("families specialize to the classical and p-adic series") {
  for (long p : kPrimes) {
    FamilySpec two{FamilySpec::Kind::TwoParam, GlobalSchwartz::spherical(p), 0};
    auto fam = family_qexp(two, kN);
    auto chars = dirichlet_characters(p, small_t(p));
    for (int k = 0; k <= 10; ++k) {
      auto E = specialize_family(fam, WeightPoint::integer(p, 0), WeightPoint::integer(p, -1 - k));
      CHECK(E.weight == -k);
      CHECK(E.agrees(eisenstein_E_padic(k, at(p, schwartz_dep(p)), kN), kN));
      auto F = specialize_family(fam, WeightPoint::integer(p, k + 1), WeightPoint::integer(p, 0));
      CHECK(F.weight == k + 2);
      CHECK(F.agrees(eisenstein_F(k, at(p, schwartz_dep(p)), kN), kN));
      auto tF = specialize_family(family_theta(fam), WeightPoint::integer(p, k - 1), WeightPoint::integer(p, -2));
      CHECK(tF.agrees(qexp_operator(QExpOp::Theta, specialize_family(fam, WeightPoint::integer(p, k - 1),
                                                                      WeightPoint::integer(p, -2))),
                      kN));
      if (k > 4) continue;
      for (const auto& mu : chars)
        for (const auto& nu : chars) {
          auto Et = specialize_family(fam, WeightPoint{0, mu}, WeightPoint{-1 - k, nu});
          CHECK(Et.agrees(eisenstein_E_padic(k, at(p, schwartz_dep_twisted(mu, nu)), kN), kN));
        }
    }
    for (int ell : {0, 3}) {
      FamilySpec one{FamilySpec::Kind::OneParamCritical, GlobalSchwartz::spherical(p), ell};
      auto f1 = family_qexp(one, kN);
      for (int a = -6; a <= 2; ++a) {
        auto g = specialize_family(f1, WeightPoint::integer(p, a));
        CHECK(g.weight == ell + a + 1);
        if (ell == 0 && a < 0)
          CHECK(g.agrees(eisenstein_E_padic(-1 - a, at(p, schwartz_crit(p)), kN), kN));
        if (a == 0 && ell > 0) CHECK(g.agrees(eisenstein_F(ell - 1, at(p, schwartz_crit(p)), kN), kN));
      }
    }
  }
}

TEST_CASE("tame data: parity vanishing and linearity") {
  const long p = 5, l = 3;
  auto odd = dirichlet_characters(l, 1).back();
  REQUIRE(odd.at(l - 1) == Cyclotomic(1, -1));
  auto tame_odd = SchwartzFunction::cell(l, {false, 0}, {true, 0}, 1, &odd);
  for (int k = 1; k <= 6; ++k) {
    auto F = eisenstein_F(k, GlobalSchwartz::spherical(p).with_tame(tame_odd), 60);
    bool all_zero = true;
    for (int n = 1; n <= 60; ++n) all_zero = all_zero && F.a[n].is_zero();
    CHECK(all_zero == (k % 2 == 0));
  }
  auto t1 = SchwartzFunction::cell(l, {true, 0}, {true, 1});
  auto t2 = SchwartzFunction::cell(l, {false, 1}, {true, 0}, 2);
  auto g = GlobalSchwartz::spherical(p).with_p(schwartz_crit(p));
  for (int k = 1; k <= 4; ++k) {
    auto a = eisenstein_F(k, g.with_tame(t1), 80);
    auto b = eisenstein_F(k, g.with_tame(t2), 80);
    auto c = eisenstein_F(k, g.with_tame(t1 + t2), 80);
    for (int n = 1; n <= 80; ++n) CHECK(c.a[n] == a.a[n] + b.a[n]);
  }
}

TEST_CASE("eisenstein errors") {
  CHECK_THROWS_AS(eisenstein_E_padic(2, GlobalSchwartz::spherical(3), 10), UnsupportedLocalDatum);
  auto F = eisenstein_F(2, at(3, schwartz_dep(3)), 2);
  CHECK_THROWS_AS(qexp_operator(QExpOp::Up, F), TruncationTooShort);
  FamilySpec two{FamilySpec::Kind::TwoParam, GlobalSchwartz::spherical(3), 0};
  auto fam = family_qexp(two, 10);
  CHECK_THROWS_AS(specialize_family(fam, WeightPoint::integer(5, 0), WeightPoint::integer(3, 0)),
                  CharacterConductorMismatch);
  CHECK_THROWS_AS(specialize_family(fam, WeightPoint::integer(3, 0)), InvariantViolation);
  CHECK_THROWS_AS(qexp_op_from_string("T_p"), UnsupportedTag);
}

TEST_CASE("one-parameter family with a quadratic weight character") {
  const long p = 3;
  auto nu = dirichlet_characters(p, 1).back();
  FamilySpec one{FamilySpec::Kind::OneParamCritical, GlobalSchwartz::spherical(p), 0};
  auto f1 = family_qexp(one, kN);
  for (int k = 0; k <= 4; ++k) {
    auto g = specialize_family(f1, WeightPoint{-1 - k, nu});
    CHECK(g.agrees(eisenstein_E_padic(k, at(p, schwartz_crit_twisted(nu)), kN), kN));
  }
}

TEST_CASE("depleted and critical series agree away from p") {
  for (long p : kPrimes)
    for (int k = 1; k <= 4; ++k) {
      auto d = eisenstein_E_padic(k, at(p, schwartz_dep(p)), kN);
      auto c = eisenstein_E_padic(k, at(p, schwartz_crit(p)), kN);
      CHECK(d.constant_known);
      CHECK(d.a[0].is_zero());
      CHECK_FALSE(c.constant_known);
      for (int n = 1; n <= kN; ++n)
        if (n % p != 0) CHECK(d.a[n] == c.a[n]);
    }
}
