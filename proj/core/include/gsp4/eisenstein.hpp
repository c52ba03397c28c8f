#pragma once

#include "gsp4/cyclotomic.hpp"
#include "gsp4/schwartz_zeta.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gsp4 {

// Factorizable finite-adelic Schwartz data in Phi' form: a table at p, tables
// at finitely many other primes, ch(Z_l^2) everywhere else.  Table
// coefficients must be rational.
struct GlobalSchwartz {
  long p = 2;
  SchwartzFunction at_p{2};
  std::map<long, SchwartzFunction> tame;

  static GlobalSchwartz spherical(long p);
  GlobalSchwartz with_p(const SchwartzFunction& f) const;
  GlobalSchwartz with_tame(const SchwartzFunction& f) const;

  // Phi'(u, v) for nonzero rationals
  Cyclotomic value(const mpq_class& u, const mpq_class& v) const;
  // Phi(0, 0) = prod over places of int Phi'_l(0, y) dy
  mpq_class phi_at_origin() const;
};

struct QExpansion {
  long p = 2;
  int weight = 0;
  std::vector<Cyclotomic> a;  // a[0..N]
  bool constant_known = false;
  std::optional<Cyclotomic> diamond;  // <p> eigenvalue when known

  int bound() const { return int(a.size()) - 1; }
  // coefficients 1..n agree (constant terms ignored)
  bool agrees(const QExpansion& o, int n) const;
  std::string csv() const;
};

// a_n = sum_{uv = n} sgn(u) u^{k+1} Phi'(u, v), weight k + 2.
QExpansion eisenstein_F(int k, const GlobalSchwartz& phi, int N);
// sum_{uv = n} sgn(u) v^{-1-k} Phi'(u, v), weight -k; the p-table must be a
// (possibly twisted) depleted or critical table.
QExpansion eisenstein_E_padic(int k, const GlobalSchwartz& phi, int N);

enum class QExpOp { Up, Vp, Diamond, DiamondInv, Theta };
QExpOp qexp_op_from_string(const std::string& name);
QExpansion qexp_operator(QExpOp op, const QExpansion& f);
QExpansion operator-(const QExpansion& f, const QExpansion& g);
QExpansion scaled(const QExpansion& f, const mpq_class& c);

// Weight-space point a + chi: x -> x^a chi(x mod p^t) on p-adic units.
struct WeightPoint {
  int a = 0;
  DirichletChar chi;
  static WeightPoint integer(long p, int a);
};

struct FamilySpec {
  enum class Kind { TwoParam, OneParamCritical };
  Kind kind = Kind::TwoParam;
  GlobalSchwartz tame;  // the table at p is ignored
  int ell = 0;          // fixed exponent of u in the one-parameter family
};

struct FamilyTerm {
  mpq_class u, v;
  Cyclotomic c;  // sgn(u) times the tame value
};

// Coefficients kept as formal sums of c u^{kappa1} v^{kappa2}; theta shifts
// both exponents by one.
struct FamilyQExp {
  FamilySpec spec;
  int shift = 0;
  std::vector<std::vector<FamilyTerm>> terms;  // terms[n], n = 0..N
  int bound() const { return int(terms.size()) - 1; }
};

FamilyQExp family_qexp(const FamilySpec& spec, int N);
FamilyQExp family_theta(const FamilyQExp& f);
// Two-parameter family at (kappa1, kappa2); weight a1 + a2 + 1.
QExpansion specialize_family(const FamilyQExp& f, const WeightPoint& k1, const WeightPoint& k2);
// One-parameter family at kappa; weight ell + a + 1.
QExpansion specialize_family(const FamilyQExp& f, const WeightPoint& k);

}  // namespace gsp4
