#include "gsp4/cyclotomic.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace gsp4 {

namespace {

std::vector<mpz_class> poly_divexact(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  // b monic
  int db = int(b.size()) - 1;
  int da = int(a.size()) - 1;
  std::vector<mpz_class> q(da - db + 1);
  for (int k = da - db; k >= 0; --k) {
    q[k] = a[k + db];
    for (int j = 0; j <= db; ++j) a[k + j] -= q[k] * b[j];
  }
  return q;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(int m) {
  static std::map<int, std::vector<mpz_class>> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<mpz_class> f(m + 1);
  f[0] = -1;
  f[m] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) f = poly_divexact(f, cyclotomic_polynomial(d));
  return cache[m] = f;
}

Cyclotomic::Cyclotomic(int m, const mpq_class& c) : m_(m) {
  if (m < 1) throw std::invalid_argument("cyclotomic order must be positive");
  c_.assign(cyclotomic_polynomial(m).size() - 1, 0);
  c_[0] = c;
}

Cyclotomic Cyclotomic::zeta(int m, long k) {
  k %= m;
  if (k < 0) k += m;
  Cyclotomic z(m);
  std::vector<mpq_class> raw(k + 1);
  raw[k] = 1;
  z.reduce(std::move(raw));
  return z;
}

void Cyclotomic::reduce(std::vector<mpq_class> raw) {
  const auto& f = cyclotomic_polynomial(m_);
  int d = int(f.size()) - 1;
  for (int k = int(raw.size()) - 1; k >= d; --k) {
    if (raw[k] == 0) continue;
    mpq_class q = raw[k];
    for (int j = 0; j <= d; ++j) raw[k - d + j] -= q * f[j];
  }
  raw.resize(d);
  c_ = std::move(raw);
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class Cyclotomic::rational() const {
  if (!is_rational()) throw std::logic_error("cyclotomic number is not rational: " + str());
  return c_[0];
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

Cyclotomic Cyclotomic::lift(int m) const {
  if (m % m_ != 0) throw std::invalid_argument("cyclotomic lift needs divisibility");
  if (m == m_) return *this;
  int s = m / m_;
  std::vector<mpq_class> raw(s * (c_.size() - 1) + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) raw[s * i] = c_[i];
  Cyclotomic r(m);
  r.reduce(std::move(raw));
  return r;
}

void Cyclotomic::unify(Cyclotomic& o) {
  if (m_ == o.m_) return;
  int l = std::lcm(m_, o.m_);
  *this = lift(l);
  o = o.lift(l);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (m_ == o.m_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyclotomic b = o;
  unify(b);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.m_ == 1) return *this *= o.c_[0];
  if (m_ == 1) {
    mpq_class c = c_[0];
    *this = o;
    return *this *= c;
  }
  Cyclotomic b = o;
  unify(b);
  std::vector<mpq_class> raw(2 * c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) raw[i + j] += c_[i] * b.c_[j];
  }
  reduce(std::move(raw));
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const mpq_class& q) {
  for (auto& x : c_) x *= q;
  return *this;
}

bool operator==(const Cyclotomic& x, const Cyclotomic& y) {
  if (x.m_ == y.m_) return x.c_ == y.c_;
  Cyclotomic a = x, b = y;
  a.unify(b);
  return a.c_ == b.c_;
}

std::string Cyclotomic::str() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[i].get_str() + ")";
    if (i > 0) s += "*z" + std::to_string(m_) + "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------

DirichletChar DirichletChar::trivial(long p) {
  DirichletChar c;
  c.p = p;
  c.t = 0;
  c.order = 1;
  c.exps = {0};
  return c;
}

long DirichletChar::modulus() const { return ipow(p, t); }

bool DirichletChar::is_trivial() const {
  for (int e : exps)
    if (e > 0) return false;
  return true;
}

int DirichletChar::conductor_exponent() const {
  if (is_trivial()) return 0;
  for (int s = 1; s <= t; ++s) {
    long ms = ipow(p, s);
    bool ok = true;
    for (long x = 0; x < modulus() && ok; ++x) {
      if (exps[x] < 0) continue;
      if (x % ms == 1 % ms && exps[x] != 0) ok = false;
    }
    if (ok) return s;
  }
  return t;
}

Cyclotomic DirichletChar::operator()(const mpz_class& x) const {
  if (t == 0) return Cyclotomic(1, 1);
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(modulus()));
  int e = exps.at(r.get_ui());
  if (e < 0) throw std::domain_error("character evaluated at a non-unit");
  return Cyclotomic::zeta(order, e);
}

DirichletChar DirichletChar::inverse() const {
  DirichletChar r = *this;
  for (int& e : r.exps)
    if (e > 0) e = order - e;
  return r;
}

DirichletChar DirichletChar::operator*(const DirichletChar& o) const {
  if (p != o.p) throw std::invalid_argument("characters at different primes");
  if (o.t == 0) return *this;
  if (t == 0) return o;
  const DirichletChar& hi = t >= o.t ? *this : o;
  DirichletChar a = restrict_to(hi.t), b = o.restrict_to(hi.t);
  int m = std::lcm(a.order, b.order);
  DirichletChar r;
  r.p = p;
  r.t = hi.t;
  r.order = m;
  r.exps.resize(a.exps.size());
  for (std::size_t x = 0; x < a.exps.size(); ++x) {
    if (a.exps[x] < 0) {
      r.exps[x] = -1;
      continue;
    }
    r.exps[x] = (a.exps[x] * (m / a.order) + b.exps[x] * (m / b.order)) % m;
  }
  // shrink the order
  int g = m;
  for (int e : r.exps)
    if (e > 0) g = std::gcd(g, e);
  if (g > 1 && g < m + 1) {
    for (int& e : r.exps)
      if (e > 0) e /= g;
    r.order = m / g;
  }
  if (r.is_trivial()) r.order = 1;
  return r;
}

DirichletChar DirichletChar::restrict_to(int t_new) const {
  if (t_new == t) return *this;
  DirichletChar r;
  r.p = p;
  r.t = t_new;
  r.order = order;
  long M = ipow(p, t_new);
  r.exps.assign(M, -1);
  long mold = modulus();
  for (long x = 0; x < M; ++x) {
    if (x % p == 0) continue;
    if (t == 0) {
      r.exps[x] = 0;
    } else if (t_new > t) {
      r.exps[x] = exps[x % mold];
    } else {
      throw std::invalid_argument("cannot lower the modulus of a character");
    }
  }
  return r;
}

std::string DirichletChar::str() const {
  std::string s = "chi(p=" + std::to_string(p) + ",t=" + std::to_string(t) + ",ord=" + std::to_string(order) + ":";
  for (std::size_t x = 0; x < exps.size(); ++x)
    if (exps[x] >= 0 && t > 0) s += " " + std::to_string(x) + "->" + std::to_string(exps[x]);
  return s + ")";
}

bool operator==(const DirichletChar& x, const DirichletChar& y) {
  if (x.p != y.p) return false;
  int t = std::max(x.t, y.t);
  DirichletChar a = x.restrict_to(t), b = y.restrict_to(t);
  for (std::size_t i = 0; i < a.exps.size(); ++i) {
    if (a.exps[i] < 0) continue;
    if (Cyclotomic::zeta(a.order, a.exps[i]) != Cyclotomic::zeta(b.order, b.exps[i])) return false;
  }
  return true;
}

std::vector<DirichletChar> dirichlet_characters(long p, int t) {
  if (t == 0) return {DirichletChar::trivial(p)};
  long M = ipow(p, t);
  // generators of (Z/M)^x and their orders
  std::vector<std::pair<long, int>> gens;
  auto mult_order = [&](long g) {
    int k = 1;
    long x = g % M;
    while (x != 1) {
      x = x * g % M;
      ++k;
    }
    return k;
  };
  long phi = M / p * (p - 1);
  if (p == 2 && t >= 3) {
    gens = {{M - 1, 2}, {5, int(phi / 2)}};
  } else {
    for (long g = 2; g < M || M == 2; ++g) {
      if (M == 2) {
        gens = {{1, 1}};
        break;
      }
      if (g % p == 0) continue;
      if (mult_order(g) == phi) {
        gens = {{g, int(phi)}};
        break;
      }
    }
  }
  int order = 1;
  for (auto& [g, o] : gens) order = std::lcm(order, o);
  // discrete log table: residue -> exponent vector
  std::vector<std::vector<int>> dlog(M);
  std::vector<int> e(gens.size(), 0);
  while (true) {
    long x = 1;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (int k = 0; k < e[i]; ++k) x = x * gens[i].first % M;
    dlog[x % M] = e;
    std::size_t i = 0;
    while (i < gens.size() && ++e[i] == gens[i].second) e[i++] = 0;
    if (i == gens.size()) break;
  }
  std::vector<DirichletChar> out;
  std::vector<int> k(gens.size(), 0);
  while (true) {
    DirichletChar c;
    c.p = p;
    c.t = t;
    c.order = order;
    c.exps.assign(M, -1);
    for (long x = 0; x < M; ++x) {
      if (x % p == 0) continue;
      long s = 0;
      for (std::size_t i = 0; i < gens.size(); ++i) s += long(k[i]) * dlog[x][i] * (order / gens[i].second);
      c.exps[x] = int(s % order);
    }
    // reduce to the exact order
    int g = order;
    for (int v : c.exps)
      if (v > 0) g = std::gcd(g, v);
    for (int& v : c.exps)
      if (v > 0) v /= g;
    c.order = order / g;
    out.push_back(c);
    std::size_t i = 0;
    while (i < gens.size() && ++k[i] == gens[i].second) k[i++] = 0;
    if (i == gens.size()) break;
  }
  return out;
}

}  // namespace gsp4
