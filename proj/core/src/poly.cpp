#include "gsp4/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace gsp4 {

Mono Mono::var(int v, int e) {
  std::array<int, kNumVars> x{};
  x[v] = e;
  return from(x);
}

Mono Mono::from(const std::array<int, kNumVars>& e) {
  std::uint64_t w = 0;
  int total = 0;
  for (int v = 0; v < kNumVars; ++v) {
    if (e[v] < 0 || e[v] > kMaxExp) throw std::overflow_error("monomial exponent out of range");
    w |= std::uint64_t(e[v]) << shift(v);
    total += e[v];
  }
  if (total > kMaxExp) throw std::overflow_error("monomial degree out of range");
  return Mono(w | (std::uint64_t(total) << 48));
}

std::array<int, kNumVars> Mono::exps() const {
  std::array<int, kNumVars> e{};
  for (int v = 0; v < kNumVars; ++v) e[v] = exp(v);
  return e;
}

Mono Mono::operator*(Mono o) const {
  if (degree() + o.degree() > kMaxExp) throw std::overflow_error("monomial degree out of range");
  return Mono(w_ + o.w_);
}

bool Mono::divides(Mono o) const {
  for (int v = 0; v < kNumVars; ++v)
    if (exp(v) > o.exp(v)) return false;
  return true;
}

Mono Mono::operator/(Mono o) const { return Mono(w_ - o.w_); }

Mono Mono::gcd(Mono x, Mono y) {
  std::array<int, kNumVars> e{};
  for (int v = 0; v < kNumVars; ++v) e[v] = std::min(x.exp(v), y.exp(v));
  return from(e);
}

Mono Mono::without(int v) const {
  auto e = exps();
  e[v] = 0;
  return from(e);
}

// ---------------------------------------------------------------------------

Poly::Poly(long c) {
  if (c != 0) t_.push_back({Mono(), mpz_class(c)});
}

Poly::Poly(const mpz_class& c) {
  if (c != 0) t_.push_back({Mono(), c});
}

Poly Poly::monomial(Mono m, mpz_class c) {
  Poly r;
  if (c != 0) r.t_.push_back({m, std::move(c)});
  return r;
}

Poly Poly::from_terms(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return x.m > y.m; });
  Poly r;
  r.t_.reserve(ts.size());
  for (auto& t : ts) {
    if (!r.t_.empty() && r.t_.back().m == t.m) {
      r.t_.back().c += t.c;
    } else {
      if (!r.t_.empty() && r.t_.back().c == 0) r.t_.pop_back();
      r.t_.push_back(std::move(t));
    }
  }
  if (!r.t_.empty() && r.t_.back().c == 0) r.t_.pop_back();
  return r;
}

mpz_class Poly::constant_term() const {
  if (!t_.empty() && t_.back().m.is_one()) return t_.back().c;
  return 0;
}

int Poly::degree(int v) const {
  int d = 0;
  for (const auto& t : t_) d = std::max(d, t.m.exp(v));
  return d;
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& t : t_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.t_) t.c = -t.c;
  return r;
}

namespace {
template <int Sign>
std::vector<Term> merge(const std::vector<Term>& x, const std::vector<Term>& y) {
  std::vector<Term> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].m > y[j].m)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].m > x[i].m) {
      out.push_back(y[j++]);
      if (Sign < 0) out.back().c = -out.back().c;
    } else {
      mpz_class c = Sign > 0 ? mpz_class(x[i].c + y[j].c) : mpz_class(x[i].c - y[j].c);
      if (c != 0) out.push_back({x[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}
}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (o.t_.empty()) return *this;
  t_ = merge<1>(t_, o.t_);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.t_.empty()) return *this;
  t_ = merge<-1>(t_, o.t_);
  return *this;
}

Poly operator*(const Poly& x, const Poly& y) {
  if (x.t_.empty() || y.t_.empty()) return Poly();
  if (x.t_.size() == 1) return y.mul_term(x.t_[0].m, x.t_[0].c);
  if (y.t_.size() == 1) return x.mul_term(y.t_[0].m, y.t_[0].c);
  std::vector<Term> ts;
  ts.reserve(x.t_.size() * y.t_.size());
  for (const auto& a : x.t_)
    for (const auto& b : y.t_) ts.push_back({a.m * b.m, a.c * b.c});
  return Poly::from_terms(std::move(ts));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::mul_term(Mono m, const mpz_class& c) const {
  Poly r;
  if (c == 0) return r;
  r.t_.reserve(t_.size());
  for (const auto& t : t_) r.t_.push_back({t.m * m, t.c * c});
  return r;
}

Poly Poly::divexact_int(const mpz_class& c) const {
  Poly r = *this;
  for (auto& t : r.t_) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

bool operator==(const Poly& x, const Poly& y) {
  if (x.t_.size() != y.t_.size()) return false;
  for (std::size_t i = 0; i < x.t_.size(); ++i)
    if (x.t_[i].m != y.t_[i].m || x.t_[i].c != y.t_[i].c) return false;
  return true;
}

bool operator<(const Poly& x, const Poly& y) {
  std::size_t n = std::min(x.t_.size(), y.t_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x.t_[i].m != y.t_[i].m) return x.t_[i].m < y.t_[i].m;
    if (x.t_[i].c != y.t_[i].c) return x.t_[i].c < y.t_[i].c;
  }
  return x.t_.size() < y.t_.size();
}

std::vector<Poly> Poly::coeffs_in(int v) const {
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& t : t_) buckets[t.m.exp(v)].push_back({t.m.without(v), t.c});
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Poly Poly::from_coeffs_in(int v, const std::vector<Poly>& cs) {
  std::vector<Term> ts;
  for (std::size_t k = 0; k < cs.size(); ++k)
    for (const auto& t : cs[k].t_) ts.push_back({t.m * Mono::var(v, int(k)), t.c});
  return from_terms(std::move(ts));
}

Poly Poly::reduce_u(long p) const {
  bool need = false;
  for (const auto& t : t_)
    if (t.m.exp(VU) >= 2) need = true;
  if (!need) return *this;
  std::vector<Term> ts;
  ts.reserve(t_.size());
  for (const auto& t : t_) {
    int e = t.m.exp(VU);
    if (e < 2) {
      ts.push_back(t);
      continue;
    }
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e / 2));
    auto ex = t.m.exps();
    ex[VU] = e % 2;
    ts.push_back({Mono::from(ex), t.c * pk});
  }
  return from_terms(std::move(ts));
}

std::pair<Poly, Poly> Poly::split_u() const {
  std::vector<Term> t0, t1;
  for (const auto& t : t_) {
    int e = t.m.exp(VU);
    if (e == 0) t0.push_back(t);
    else if (e == 1) t1.push_back({t.m.without(VU), t.c});
    else throw std::logic_error("split_u: u-degree exceeds 1");
  }
  Poly a, b;
  a.t_ = std::move(t0);  // removing u keeps the relative order of u-free terms
  b = from_terms(std::move(t1));
  return {a, b};
}

Poly Poly::conj_u() const {
  Poly r = *this;
  for (auto& t : r.t_)
    if (t.m.exp(VU) % 2) t.c = -t.c;
  return r;
}

mpq_class Poly::eval(const std::array<mpq_class, kNumVars>& x) const {
  mpq_class s = 0;
  for (const auto& t : t_) {
    mpq_class m = t.c;
    for (int v = 0; v < kNumVars; ++v)
      for (int k = t.m.exp(v); k > 0; --k) m *= x[v];
    s += m;
  }
  return s;
}

std::pair<Poly, mpz_class> Poly::subs(const std::array<bool, kNumVars>& which,
                                      const std::array<mpq_class, kNumVars>& x) const {
  std::vector<std::pair<Mono, mpq_class>> acc;
  acc.reserve(t_.size());
  for (const auto& t : t_) {
    mpq_class m = t.c;
    auto e = t.m.exps();
    for (int v = 0; v < kNumVars; ++v) {
      if (!which[v]) continue;
      for (int k = e[v]; k > 0; --k) m *= x[v];
      e[v] = 0;
    }
    acc.push_back({Mono::from(e), m});
  }
  mpz_class den = 1;
  for (auto& [m, c] : acc) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [m, c] : acc) {
    mpq_class s = c * den;
    ts.push_back({m, s.get_num()});
  }
  return {from_terms(std::move(ts)), den};
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : t_) {
    mpz_class c = t.c;
    if (c < 0) {
      s += first ? "-" : " - ";
      c = -c;
    } else if (!first) {
      s += " + ";
    }
    first = false;
    bool one = t.m.is_one();
    bool wrote = false;
    if (c != 1 || one) {
      s += c.get_str();
      wrote = true;
    }
    for (int v = 0; v < kNumVars; ++v) {
      int e = t.m.exp(v);
      if (e == 0) continue;
      if (wrote) s += "*";
      s += kVarNames[v];
      if (e > 1) s += "^" + std::to_string(e);
      wrote = true;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

bool divide_exact(const Poly& a, const Poly& b, Poly& q) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  std::vector<Term> qt;
  if (b.is_monomial()) {
    const Term& lb = b.lead();
    for (const auto& t : a.terms()) {
      if (!lb.m.divides(t.m) || !mpz_divisible_p(t.c.get_mpz_t(), lb.c.get_mpz_t())) return false;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), t.c.get_mpz_t(), lb.c.get_mpz_t());
      qt.push_back({t.m / lb.m, c});
    }
    q = Poly::from_terms(std::move(qt));
    return true;
  }
  Poly r = a;
  const Term lb = b.lead();
  while (!r.is_zero()) {
    const Term& lr = r.lead();
    if (!lb.m.divides(lr.m) || !mpz_divisible_p(lr.c.get_mpz_t(), lb.c.get_mpz_t())) return false;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), lr.c.get_mpz_t(), lb.c.get_mpz_t());
    Mono m = lr.m / lb.m;
    r -= b.mul_term(m, c);
    qt.push_back({m, c});
  }
  q = Poly::from_terms(std::move(qt));
  return true;
}

Poly divexact(const Poly& a, const Poly& b) {
  Poly q;
  if (!divide_exact(a, b, q)) throw std::logic_error("divexact: inexact polynomial division");
  return q;
}

namespace {

Poly positive_lead(Poly x) {
  if (!x.is_zero() && x.lead().c < 0) x = -x;
  return x;
}

Poly gcd_monomial_path(const Poly& a, const Poly& b) {
  // one of a, b is a single term: the gcd is a monomial times an integer.
  Mono g = a.lead().m;
  for (const auto& t : a.terms()) g = Mono::gcd(g, t.m);
  for (const auto& t : b.terms()) g = Mono::gcd(g, t.m);
  mpz_class c = a.content();
  mpz_class cb = b.content();
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cb.get_mpz_t());
  return Poly::monomial(g, c);
}

int first_var(const Poly& a) {
  for (int v = 0; v < kNumVars; ++v)
    if (a.has_var(v)) return v;
  return -1;
}

Poly gcd_prs(const Poly& a, const Poly& b);
Poly gcd_dispatch(const Poly& a, const Poly& b);

Poly content_in(const std::vector<Poly>& cs) {
  Poly g;
  for (const auto& c : cs) {
    g = gcd_dispatch(g, c);
    if (g.is_constant() && g.constant_term() == 1) break;
  }
  return g;
}

int deg_of(const std::vector<Poly>& cs) { return int(cs.size()) - 1; }

// pseudo-remainder of A by B in variable v, A,B given by coefficient lists
std::vector<Poly> prem(std::vector<Poly> A, const std::vector<Poly>& B) {
  const int db = deg_of(B);
  const Poly& lb = B.back();
  while (!A.empty() && deg_of(A) >= db) {
    int da = deg_of(A);
    Poly la = A.back();
    for (auto& c : A) c *= lb;
    for (int k = 0; k <= db; ++k) A[da - db + k] -= la * B[k];
    while (!A.empty() && A.back().is_zero()) A.pop_back();
  }
  return A;
}

Poly gcd_prs(const Poly& a, const Poly& b) {
  int va = first_var(a), vb = first_var(b);
  int v = std::min(va < 0 ? kNumVars : va, vb < 0 ? kNumVars : vb);
  if (v == kNumVars) return gcd_monomial_path(a, b);
  auto ca = a.coeffs_in(v);
  auto cb = b.coeffs_in(v);
  if (ca.size() == 1) return gcd_dispatch(a, content_in(cb));
  if (cb.size() == 1) return gcd_dispatch(content_in(ca), b);
  Poly conta = content_in(ca), contb = content_in(cb);
  Poly g = gcd_dispatch(conta, contb);
  for (auto& c : ca) c = divexact(c, conta);
  for (auto& c : cb) c = divexact(c, contb);
  if (ca.size() < cb.size()) std::swap(ca, cb);
  while (true) {
    auto r = prem(ca, cb);
    if (r.empty()) break;
    if (r.size() == 1) {
      cb = {Poly(1)};
      break;
    }
    Poly cr = content_in(r);
    for (auto& c : r) c = divexact(c, cr);
    ca = std::move(cb);
    cb = std::move(r);
  }
  return positive_lead(g * Poly::from_coeffs_in(v, cb));
}

// Heuristic gcd: evaluate the leading variable at a large integer, recurse,
// and rebuild the candidate from its balanced x-adic digits.
Poly eval_var(const Poly& f, int v, const mpz_class& x) {
  std::vector<Term> ts;
  ts.reserve(f.size());
  for (const auto& t : f.terms()) {
    int e = t.m.exp(v);
    mpz_class c = t.c;
    if (e > 0) {
      mpz_class xe;
      mpz_pow_ui(xe.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
      c *= xe;
    }
    ts.push_back({t.m.without(v), std::move(c)});
  }
  return Poly::from_terms(std::move(ts));
}

mpz_class max_norm(const Poly& f) {
  mpz_class m = 0;
  for (const auto& t : f.terms())
    if (abs(t.c) > m) m = abs(t.c);
  return m;
}

Poly interpolate(Poly h, const mpz_class& x, int v) {
  std::vector<Poly> digits;
  mpz_class half = x / 2;
  while (!h.is_zero()) {
    std::vector<Term> ts;
    for (const auto& t : h.terms()) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), t.c.get_mpz_t(), x.get_mpz_t());
      if (r > half) r -= x;
      if (r != 0) ts.push_back({t.m, r});
    }
    Poly g = Poly::from_terms(std::move(ts));
    h -= g;
    h = h.divexact_int(x);
    digits.push_back(std::move(g));
    if (digits.size() > 4000) throw std::overflow_error("gcd interpolation diverged");
  }
  return Poly::from_coeffs_in(v, digits);
}

bool gcd_heuristic(const Poly& f, const Poly& g, Poly& out, int depth) {
  int v = -1;
  for (int k = 0; k < kNumVars && v < 0; ++k)
    if (f.has_var(k) || g.has_var(k)) v = k;
  if (v < 0) {
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), f.constant_term().get_mpz_t(), g.constant_term().get_mpz_t());
    out = Poly(c);
    return true;
  }
  mpz_class cf = f.content(), cg = g.content(), ci;
  mpz_gcd(ci.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  Poly F = f.divexact_int(cf), G = g.divexact_int(cg);
  mpz_class fn = max_norm(F), gn = max_norm(G);
  mpz_class B = 2 * std::min(fn, gn) + 29;
  mpz_class s = sqrt(B);
  mpz_class x = std::min(B, mpz_class(99 * s));
  mpz_class lf = abs(F.lead().c), lg = abs(G.lead().c);
  mpz_class alt = 2 * std::min(mpz_class(fn / lf), mpz_class(gn / lg)) + 4;
  if (alt > x) x = alt;
  for (int i = 0; i < 6; ++i) {
    Poly ff = eval_var(F, v, x), gg = eval_var(G, v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      Poly hh;
      if (gcd_heuristic(ff, gg, hh, depth + 1)) {
        Poly H = interpolate(hh, x, v);
        if (!H.is_zero()) {
          H = positive_lead(H.divexact_int(H.content()));
          Poly q;
          if (divide_exact(F, H, q) && divide_exact(G, H, q)) {
            out = H.mul_term(Mono(), ci);
            return true;
          }
        }
      }
    }
    mpz_class r4 = sqrt(sqrt(x));
    x = 73794 * x * r4 / 27011;
  }
  return false;
}

Poly gcd_dispatch(const Poly& a, const Poly& b) {
  if (a.is_zero()) return positive_lead(b);
  if (b.is_zero()) return positive_lead(a);
  if (a == b) return positive_lead(a);
  if (a.is_monomial() || b.is_monomial()) return gcd_monomial_path(a, b);
  // strip the common monomial factor first so evaluation points stay useful
  Mono ma = a.lead().m, mb = b.lead().m;
  for (const auto& t : a.terms()) ma = Mono::gcd(ma, t.m);
  for (const auto& t : b.terms()) mb = Mono::gcd(mb, t.m);
  Poly A = ma.is_one() ? a : divexact(a, Poly::monomial(ma));
  Poly B = mb.is_one() ? b : divexact(b, Poly::monomial(mb));
  Poly mg = Poly::monomial(Mono::gcd(ma, mb));
  Poly h;
  if (gcd_heuristic(A, B, h, 0)) return positive_lead(h * mg);
  return positive_lead(gcd_prs(A, B) * mg);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_dispatch(a, b); }

// ---------------------------------------------------------------------------

namespace {
struct PolyParser {
  const std::string& s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void fail() const { throw std::invalid_argument("cannot parse polynomial: " + s); }

  long integer() {
    ws();
    std::size_t j = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (j == i) fail();
    return std::stol(s.substr(j, i - j));
  }

  Poly factor() {
    ws();
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      return Poly(mpz_class(s.substr(j, i - j)));
    }
    if (i < s.size() && s[i] == '(') {
      ++i;
      Poly p = expr();
      ws();
      if (i >= s.size() || s[i] != ')') fail();
      ++i;
      return power(p);
    }
    for (int v = 0; v < kNumVars; ++v) {
      if (i < s.size() && s[i] == kVarNames[v][0]) {
        ++i;
        return power(Poly::var(v));
      }
    }
    fail();
  }

  Poly power(const Poly& base) {
    ws();
    if (i < s.size() && s[i] == '^') {
      ++i;
      return base.pow(static_cast<unsigned>(integer()));
    }
    return base;
  }

  Poly term() {
    Poly p = factor();
    while (true) {
      ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        p *= factor();
      } else {
        return p;
      }
    }
  }

  Poly expr() {
    ws();
    Poly p;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    p = term();
    if (neg) p = -p;
    while (true) {
      ws();
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        bool minus = s[i++] == '-';
        Poly t = term();
        if (minus) p -= t;
        else p += t;
      } else {
        return p;
      }
    }
  }
};
}  // namespace

Poly parse_poly(const std::string& s) {
  PolyParser ps{s};
  Poly p = ps.expr();
  ps.ws();
  if (ps.i != s.size()) ps.fail();
  return p;
}

}  // namespace gsp4
