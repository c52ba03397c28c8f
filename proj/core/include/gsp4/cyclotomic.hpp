#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gsp4 {

// Integer coefficient list of the m-th cyclotomic polynomial, low degree first.
const std::vector<mpz_class>& cyclotomic_polynomial(int m);

// Element of Q(zeta_m) in the power basis 1, z, ..., z^{phi(m)-1}.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(int m, const mpq_class& c = 0);
  static Cyclotomic zeta(int m, long k);  // zeta_m^k

  int order() const { return m_; }
  bool is_rational() const;
  mpq_class rational() const;  // requires is_rational
  bool is_zero() const;
  // power-basis coefficients, length phi(order())
  const std::vector<mpq_class>& coeffs() const { return c_; }

  Cyclotomic lift(int m) const;  // into Q(zeta_m), requires order() | m

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const mpq_class& q);
  friend Cyclotomic operator+(Cyclotomic x, const Cyclotomic& y) { return x += y; }
  friend Cyclotomic operator-(Cyclotomic x, const Cyclotomic& y) { return x -= y; }
  friend Cyclotomic operator*(Cyclotomic x, const Cyclotomic& y) { return x *= y; }
  friend Cyclotomic operator*(Cyclotomic x, const mpq_class& y) { return x *= y; }
  friend bool operator==(const Cyclotomic& x, const Cyclotomic& y);
  friend bool operator!=(const Cyclotomic& x, const Cyclotomic& y) { return !(x == y); }

  std::string str() const;

 private:
  void reduce(std::vector<mpq_class> raw);
  void unify(Cyclotomic& o);

  int m_;
  std::vector<mpq_class> c_;
};

// Character of (Z/p^t)^x with values zeta_order^k; exps[x] = k for units, -1
// for non-units.
struct DirichletChar {
  long p = 2;
  int t = 0;  // modulus p^t; t = 0 is the trivial character
  int order = 1;
  std::vector<int> exps;

  static DirichletChar trivial(long p);
  long modulus() const;
  bool is_trivial() const;
  int conductor_exponent() const;
  // value at an integer prime to p
  Cyclotomic operator()(const mpz_class& x) const;
  Cyclotomic at(long x) const { return (*this)(mpz_class(x)); }
  DirichletChar inverse() const;
  DirichletChar operator*(const DirichletChar& o) const;
  DirichletChar restrict_to(int t_new) const;  // assumes conductor <= t_new
  std::string str() const;

  friend bool operator==(const DirichletChar& x, const DirichletChar& y);
};

// All characters of (Z/p^t)^x.
std::vector<DirichletChar> dirichlet_characters(long p, int t);

}  // namespace gsp4
