#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gsp4 {

// Variables of the coefficient ring, in ordering priority a > b > c > u.
enum Var : int { VA = 0, VB = 1, VC = 2, VU = 3 };
inline constexpr int kNumVars = 4;
inline constexpr const char* kVarNames[kNumVars] = {"a", "b", "c", "u"};

// Packed monomial: [total:16][a:12][b:12][c:12][u:12].  Comparing the packed
// words is graded-lex with a > b > c > u, and multiplying monomials is
// adding words.
class Mono {
 public:
  static constexpr int kBits = 12;
  static constexpr std::uint64_t kMask = (1u << kBits) - 1;
  static constexpr int kMaxExp = (1 << kBits) - 1;

  constexpr Mono() = default;
  static Mono var(int v, int e = 1);
  static Mono from(const std::array<int, kNumVars>& e);

  int exp(int v) const { return int((w_ >> shift(v)) & kMask); }
  int degree() const { return int(w_ >> 48); }
  std::array<int, kNumVars> exps() const;
  std::uint64_t word() const { return w_; }
  bool is_one() const { return w_ == 0; }

  Mono operator*(Mono o) const;
  bool divides(Mono o) const;
  Mono operator/(Mono o) const;  // requires divides
  static Mono gcd(Mono x, Mono y);
  Mono without(int v) const;

  friend bool operator==(Mono x, Mono y) { return x.w_ == y.w_; }
  friend bool operator!=(Mono x, Mono y) { return x.w_ != y.w_; }
  friend bool operator<(Mono x, Mono y) { return x.w_ < y.w_; }
  friend bool operator>(Mono x, Mono y) { return x.w_ > y.w_; }

 private:
  static constexpr int shift(int v) { return 12 * (3 - v); }
  explicit constexpr Mono(std::uint64_t w) : w_(w) {}
  std::uint64_t w_ = 0;
};

struct Term {
  Mono m;
  mpz_class c;
};

// Sparse polynomial over Z in a,b,c,u; terms sorted by decreasing monomial,
// no zero coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT(implicit)
  Poly(const mpz_class& c);  // NOLINT(implicit)
  static Poly monomial(Mono m, mpz_class c = 1);
  static Poly var(int v) { return monomial(Mono::var(v)); }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  bool is_monomial() const { return t_.size() == 1; }
  std::size_t size() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }
  const Term& lead() const { return t_.front(); }
  mpz_class constant_term() const;

  int degree(int v) const;
  bool has_var(int v) const { return degree(v) > 0; }
  mpz_class content() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly x, const Poly& y) { return x += y; }
  friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
  friend Poly operator*(const Poly& x, const Poly& y);
  Poly mul_term(Mono m, const mpz_class& c) const;
  Poly divexact_int(const mpz_class& c) const;
  Poly pow(unsigned e) const;

  friend bool operator==(const Poly& x, const Poly& y);
  friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }
  // total order used for canonical sorting
  friend bool operator<(const Poly& x, const Poly& y);

  // Coefficients with respect to variable v: result[k] is the coefficient of v^k.
  std::vector<Poly> coeffs_in(int v) const;
  static Poly from_coeffs_in(int v, const std::vector<Poly>& cs);

  // Replace u^2 by p.
  Poly reduce_u(long p) const;
  // Split into (n0, n1) with this = n0 + u n1 (requires u-degree <= 1).
  std::pair<Poly, Poly> split_u() const;
  // u -> -u
  Poly conj_u() const;

  mpq_class eval(const std::array<mpq_class, kNumVars>& x) const;
  // Substitute rationals for the variables flagged in `which`.
  std::pair<Poly, mpz_class> subs(const std::array<bool, kNumVars>& which,
                                  const std::array<mpq_class, kNumVars>& x) const;

  std::string str() const;

  // Build from unsorted terms (combines duplicates, drops zeros).
  static Poly from_terms(std::vector<Term> ts);

 private:
  std::vector<Term> t_;
};

// Exact division: returns q with a = q*b, or false if b does not divide a.
bool divide_exact(const Poly& a, const Poly& b, Poly& q);
Poly divexact(const Poly& a, const Poly& b);

// gcd over Z[a,b,c,u] with positive leading coefficient.
Poly gcd(const Poly& a, const Poly& b);

Poly parse_poly(const std::string& s);

}  // namespace gsp4
