#pragma once

#include "gsp4/poly.hpp"

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>

namespace gsp4 {

// Element of Q(a,b,c)(u) with u^2 = p, stored as num/den with num in
// Z[a,b,c,u] of u-degree <= 1 and den in Z[a,b,c] with positive leading
// coefficient and gcd(num, den) = 1.  p = 0 marks a value that has not
// met a prime yet (u must then be absent).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long c);  // NOLINT(implicit)
  Scalar(const mpz_class& c);  // NOLINT(implicit)
  Scalar(const mpq_class& c);  // NOLINT(implicit)
  Scalar(const Poly& num, const Poly& den, long p);

  static Scalar var(int v, long p);
  static Scalar a(long p) { return var(VA, p); }
  static Scalar b(long p) { return var(VB, p); }
  static Scalar c(long p) { return var(VC, p); }
  // u^k = p^{k/2}, k any integer
  static Scalar u_pow(long p, long k);
  static Scalar p_pow(long p, long k) { return u_pow(p, 2 * k); }
  // coefficient times a^{e0} b^{e1} c^{e2} u^{e3}, exponents of any sign
  static Scalar laurent(long p, const std::array<int, kNumVars>& e, const mpq_class& coef = 1);

  long prime() const { return p_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  bool is_u_free() const { return !num_.has_var(VU); }
  bool depends_on_abc() const;
  mpq_class to_rational() const;  // requires is_rational

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  Scalar inv() const;
  Scalar pow(long e) const;
  // u -> -u
  Scalar conj_u() const;

  friend bool operator==(const Scalar& x, const Scalar& y);
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
  friend bool operator<(const Scalar& x, const Scalar& y);

  // Substitute rationals for a, b, c (u stays symbolic).
  Scalar subs_abc(const mpq_class& a, const mpq_class& b, const mpq_class& c) const;

  // Canonical "num / den" string; parse() inverts it.
  std::string str() const;
  static Scalar parse(const std::string& s, long p);

 private:
  void join_prime(long q);
  void canonicalize();

  Poly num_;
  Poly den_ = Poly(1);
  long p_ = 0;
};

using Assignment = std::map<std::string, mpq_class>;

// Evaluate at a rational point.  The assignment must cover a, b, c; u may be
// assigned only when p is a perfect square.  Throws DivisionByZero or
// IrrationalResidue.
mpq_class scalar_specialize(const Scalar& x, const Assignment& assignment);

// p-adic valuation of a nonzero u-free rational scalar.
long valuation(const mpq_class& x, long p);

}  // namespace gsp4
