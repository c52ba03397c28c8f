#include "gsp4/scalar.hpp"

#include "gsp4/errors.hpp"

#include <cmath>

namespace gsp4 {

Scalar::Scalar(long c) : num_(c) {}
Scalar::Scalar(const mpz_class& c) : num_(c) {}
Scalar::Scalar(const mpq_class& c) : num_(c.get_num()), den_(c.get_den()) {}

Scalar::Scalar(const Poly& num, const Poly& den, long p) : num_(num), den_(den), p_(p) {
  if (den_.is_zero()) throw DivisionByZero();
  if (den_.has_var(VU)) {
    // move u out of the denominator via the conjugate
    if (p_ == 0) throw std::logic_error("u in a scalar without a prime");
    Poly d = den_.reduce_u(p_);
    Poly cj = d.conj_u();
    num_ = (num_ * cj).reduce_u(p_);
    den_ = (d * cj).reduce_u(p_);
    if (den_.is_zero()) throw DivisionByZero();
  }
  canonicalize();
}

Scalar Scalar::var(int v, long p) {
  Scalar s;
  s.num_ = Poly::var(v);
  s.p_ = p;
  return s;
}

Scalar Scalar::u_pow(long p, long k) {
  std::array<int, kNumVars> e{};
  e[VU] = int(k);
  return laurent(p, e);
}

Scalar Scalar::laurent(long p, const std::array<int, kNumVars>& e, const mpq_class& coef) {
  std::array<int, kNumVars> pos{}, neg{};
  for (int v = 0; v < kNumVars; ++v) (e[v] >= 0 ? pos[v] : neg[v]) = std::abs(e[v]);
  // u^{-k} = u^{k} / p^{k}
  mpz_class pk = 1;
  if (neg[VU] > 0) {
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(neg[VU]));
    pos[VU] += neg[VU];
    neg[VU] = 0;
  }
  Scalar s;
  s.p_ = p;
  s.num_ = Poly::monomial(Mono::from(pos), coef.get_num());
  s.den_ = Poly::monomial(Mono::from(neg), coef.get_den() * pk);
  if (coef == 0) s.den_ = Poly(1);
  s.canonicalize();
  return s;
}

bool Scalar::is_one() const { return den_.is_constant() && num_ == den_; }

bool Scalar::depends_on_abc() const {
  for (int v : {VA, VB, VC})
    if (num_.has_var(v) || den_.has_var(v)) return true;
  return false;
}

mpq_class Scalar::to_rational() const {
  if (!is_rational()) throw std::logic_error("scalar is not a rational constant: " + str());
  mpq_class q(num_.constant_term(), den_.constant_term());
  q.canonicalize();
  return q;
}

void Scalar::join_prime(long q) {
  if (q == 0 || q == p_) return;
  if (p_ != 0) throw std::logic_error("scalars over different primes");
  p_ = q;
}

void Scalar::canonicalize() {
  if (p_ != 0) num_ = num_.reduce_u(p_);
  else if (num_.degree(VU) > 1) throw std::logic_error("u^2 without a prime");
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    mpz_class g = num_.content();
    mpz_class d = den_.constant_term();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (d < 0) g = -g;
    if (g != 1) {
      num_ = num_.divexact_int(g);
      den_ = den_.divexact_int(g);
    }
    return;
  }
  Poly g;
  if (num_.has_var(VU)) {
    auto [n0, n1] = num_.split_u();
    g = gcd(den_, n1);
    if (!(g.is_constant() && g.constant_term() == 1)) g = gcd(g, n0);
  } else {
    g = gcd(den_, num_);
  }
  if (!(g.is_constant() && g.constant_term() == 1)) {
    num_ = divexact(num_, g);
    den_ = divexact(den_, g);
  }
  if (den_.lead().c < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  join_prime(o.p_);
  if (o.is_zero()) return *this;
  if (is_zero()) {
    long p = p_;
    *this = o;
    p_ = p;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  join_prime(o.p_);
  if (is_zero()) return *this;
  if (o.is_zero()) {
    num_ = Poly();
    den_ = Poly(1);
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw DivisionByZero();
  if (!num_.has_var(VU)) {
    Scalar r;
    r.p_ = p_;
    r.num_ = den_;
    r.den_ = num_;
    if (r.den_.lead().c < 0) {
      r.num_ = -r.num_;
      r.den_ = -r.den_;
    }
    return r;
  }
  return Scalar(den_, num_, p_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

Scalar Scalar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Scalar r(1), b = *this;
  r.p_ = p_;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Scalar Scalar::conj_u() const {
  Scalar r = *this;
  r.num_ = r.num_.conj_u();
  return r;
}

bool operator==(const Scalar& x, const Scalar& y) { return x.num_ == y.num_ && x.den_ == y.den_; }

bool operator<(const Scalar& x, const Scalar& y) {
  if (x.den_ != y.den_) return x.den_ < y.den_;
  return x.num_ < y.num_;
}

Scalar Scalar::subs_abc(const mpq_class& a, const mpq_class& b, const mpq_class& c) const {
  std::array<bool, kNumVars> which{true, true, true, false};
  std::array<mpq_class, kNumVars> x{a, b, c, 0};
  auto [n, nd] = num_.subs(which, x);
  auto [d, dd] = den_.subs(which, x);
  if (d.is_zero()) throw DivisionByZero("denominator vanishes under substitution");
  return Scalar(n * Poly(dd), d * Poly(nd), p_);
}

std::string Scalar::str() const {
  auto wrap = [](const Poly& q) {
    std::string s = q.str();
    return q.size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + " / " + wrap(den_);
}

Scalar Scalar::parse(const std::string& s, long p) {
  // split at the top-level '/'
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == '/' && depth == 0)
      return Scalar(parse_poly(s.substr(0, i)), parse_poly(s.substr(i + 1)), p);
  }
  return Scalar(parse_poly(s), Poly(1), p);
}

mpq_class scalar_specialize(const Scalar& x, const Assignment& assignment) {
  std::array<mpq_class, kNumVars> pt;
  for (int v : {VA, VB, VC}) {
    auto it = assignment.find(kVarNames[v]);
    if (it == assignment.end()) {
      if (x.num().has_var(v) || x.den().has_var(v))
        throw std::invalid_argument(std::string("assignment missing ") + kVarNames[v]);
      continue;
    }
    pt[v] = it->second;
  }
  auto ia = assignment.find("a");
  if (ia != assignment.end() && ia->second == 0) throw DivisionByZero("a = 0");
  bool u_assigned = false;
  auto iu = assignment.find("u");
  if (iu != assignment.end()) {
    mpq_class uu = iu->second * iu->second;
    if (uu != mpq_class(x.prime())) throw std::invalid_argument("u must square to p");
    pt[VU] = iu->second;
    u_assigned = true;
  }
  if (!u_assigned && x.num().has_var(VU)) {
    auto [n0, n1] = x.num().split_u();
    std::array<mpq_class, kNumVars> q = pt;
    q[VU] = 0;
    if (n1.eval(q) != 0) throw IrrationalResidue();
  }
  mpq_class d = x.den().eval(pt);
  if (d == 0) throw DivisionByZero("denominator vanishes at the point");
  std::array<mpq_class, kNumVars> q = pt;
  if (!u_assigned) q[VU] = 0;
  mpq_class n = u_assigned ? x.num().eval(pt) : x.num().split_u().first.eval(q);
  mpq_class r = n / d;
  r.canonicalize();
  return r;
}

long valuation(const mpq_class& x, long p) {
  if (x == 0) throw DivisionByZero("valuation of zero");
  long v = 0;
  mpz_class n = x.get_num(), d = x.get_den();
  while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
    n /= p;
    ++v;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) {
    d /= p;
    --v;
  }
  return v;
}

}  // namespace gsp4
