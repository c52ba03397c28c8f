#include "gsp4/eisenstein.hpp"

#include "gsp4/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace gsp4 {

namespace {

std::map<long, int> factor(long n) {
  std::map<long, int> f;
  for (long d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  if (n > 1) ++f[n];
  return f;
}


mpq_class qpow(const mpq_class& x, int e) {
  mpz_class n = x.get_num(), d = x.get_den();
  mpz_class rn, rd;
  unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(rn.get_mpz_t(), n.get_mpz_t(), ae);
  mpz_pow_ui(rd.get_mpz_t(), d.get_mpz_t(), ae);
  mpq_class r = e >= 0 ? mpq_class(rn, rd) : mpq_class(rd, rn);
  r.canonicalize();
  return r;
}

// residue of an l-adic unit rational modulo m
long unit_residue(const mpq_class& x, long m) {
  mpz_class M = m, n, d, inv;
  mpz_fdiv_r(n.get_mpz_t(), x.get_num().get_mpz_t(), M.get_mpz_t());
  mpz_fdiv_r(d.get_mpz_t(), x.get_den().get_mpz_t(), M.get_mpz_t());
  if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), M.get_mpz_t()) == 0) throw InvariantViolation("not a unit");
  mpz_class r = n * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), M.get_mpz_t());
  return r.get_si();
}

Cyclotomic char_at(const DirichletChar& chi, const mpq_class& x) {
  if (chi.t == 0) return Cyclotomic(1, 1);
  return chi.at(unit_residue(x, chi.modulus()));
}

bool contains(const Region& g, long v) { return g.ball ? v >= g.e : v == g.e; }

Cyclotomic local_value(const SchwartzFunction& f, long l, const mpq_class& u, const mpq_class& v) {
  long i = valuation(u, l), j = valuation(v, l);
  mpq_class u0 = u / qpow(mpq_class(l), int(i)), v0 = v / qpow(mpq_class(l), int(j));
  Cyclotomic s(1, 0);
  for (const auto& c : f.cells()) {
    if (!contains(c.x, i) || !contains(c.y, j)) continue;
    if (!c.coeff.is_rational()) throw UnsupportedLocalDatum("Eisenstein data needs rational table coefficients");
    s += char_at(c.mu, u0) * char_at(c.nu, v0) * c.coeff.to_rational();
  }
  return s;
}

struct Range {
  int lo, hi;
};

// lowest exponents met in each coordinate
std::pair<int, int> low_exponents(const SchwartzFunction& f) {
  int lx = 0, ly = 0;
  bool first = true;
  for (const auto& c : f.cells()) {
    lx = first ? c.x.e : std::min(lx, c.x.e);
    ly = first ? c.y.e : std::min(ly, c.y.e);
    first = false;
  }
  return {lx, ly};
}

// all u = +-prod l^{i_l} with i_l in range(l), for each prime of n or of the
// table set
void for_each_u(long n, const std::set<long>& table_primes, const std::function<Range(long, int)>& range,
                const std::function<void(const mpq_class&)>& fn) {
  auto fac = factor(n);
  std::set<long> primes = table_primes;
  for (const auto& [l, e] : fac) primes.insert(l);
  std::vector<std::pair<long, Range>> rs;
  for (long l : primes) {
    int e = fac.count(l) ? fac[l] : 0;
    Range r = range(l, e);
    if (r.lo > r.hi) return;
    rs.push_back({l, r});
  }
  std::function<void(std::size_t, mpq_class)> rec = [&](std::size_t idx, mpq_class u) {
    if (idx == rs.size()) {
      fn(u);
      fn(-u);
      return;
    }
    auto [l, r] = rs[idx];
    for (int i = r.lo; i <= r.hi; ++i) rec(idx + 1, u * qpow(mpq_class(l), i));
  };
  rec(0, mpq_class(1));
}

std::set<long> table_primes(const GlobalSchwartz& phi, bool with_p) {
  std::set<long> s;
  if (with_p) s.insert(phi.p);
  for (const auto& [l, f] : phi.tame) s.insert(l);
  return s;
}

// Phi' restricted to the tame places: 0 unless u, v are integral off the table primes
Cyclotomic tame_value(const GlobalSchwartz& phi, const mpq_class& u, const mpq_class& v) {
  Cyclotomic s(1, 1);
  for (const auto& [l, f] : phi.tame) {
    s *= local_value(f, l, u, v);
    if (s.is_zero()) return s;
  }
  return s;
}

enum class SeriesKind { F, E };

std::vector<Cyclotomic> eis_coefficients(SeriesKind kind, int k, const GlobalSchwartz& phi, int N) {
  std::vector<Cyclotomic> a(N + 1, Cyclotomic(1, 0));
  std::map<long, std::pair<int, int>> lows;
  lows[phi.p] = low_exponents(phi.at_p);
  for (const auto& [l, f] : phi.tame) lows[l] = low_exponents(f);
  if (phi.at_p.is_zero()) return a;
  for (const auto& [l, f] : phi.tame)
    if (f.is_zero()) return a;
  const auto primes = table_primes(phi, true);
  for (long n = 1; n <= N; ++n) {
    auto range = [&](long l, int e) -> Range {
      auto it = lows.find(l);
      if (it == lows.end()) return {0, e};
      return {it->second.first, e - it->second.second};
    };
    Cyclotomic s(1, 0);
    for_each_u(n, primes, range, [&](const mpq_class& u) {
      mpq_class v = mpq_class(n) / u;
      Cyclotomic val = local_value(phi.at_p, phi.p, u, v);
      if (val.is_zero()) return;
      val *= tame_value(phi, u, v);
      if (val.is_zero()) return;
      mpq_class w = kind == SeriesKind::F ? qpow(u, k + 1) : qpow(v, -1 - k);
      if (u < 0) w = -w;
      s += val * w;
    });
    a[n] = s;
  }
  return a;
}

std::optional<Cyclotomic> ratio(const std::vector<Cyclotomic>& g, const std::vector<Cyclotomic>& f) {
  std::optional<Cyclotomic> r;
  bool zero = true;
  for (std::size_t n = 1; n < f.size(); ++n) zero = zero && f[n].is_zero() && g[n].is_zero();
  if (zero) return Cyclotomic(1, 1);  // any value is an eigenvalue of the zero series
  for (std::size_t n = 1; n < f.size(); ++n) {
    if (f[n].is_zero()) {
      if (!g[n].is_zero()) return std::nullopt;
      continue;
    }
    if (!r) {
      if (!f[n].is_rational()) return std::nullopt;
      r = g[n] * mpq_class(1 / f[n].rational());
    }
    if (g[n] != *r * f[n]) return std::nullopt;
  }
  return r;
}

QExpansion build(SeriesKind kind, int k, const GlobalSchwartz& phi, int N) {
  QExpansion q;
  q.p = phi.p;
  q.weight = kind == SeriesKind::F ? k + 2 : -k;
  q.a = eis_coefficients(kind, k, phi, N);
  GlobalSchwartz moved = phi.with_p(schwartz_operator(SchwartzOp::Diamond, phi.at_p, k));
  q.diamond = ratio(eis_coefficients(kind, k, moved, N), q.a);
  return q;
}

}  // namespace

GlobalSchwartz GlobalSchwartz::spherical(long p) {
  GlobalSchwartz g;
  g.p = p;
  g.at_p = schwartz_sph(p);
  return g;
}

GlobalSchwartz GlobalSchwartz::with_p(const SchwartzFunction& f) const {
  if (f.prime() != p) throw InvariantViolation("table at the wrong prime");
  GlobalSchwartz g = *this;
  g.at_p = f.storage() == SchwartzFunction::Storage::PhiPrime ? f : partial_fourier(f);
  return g;
}

GlobalSchwartz GlobalSchwartz::with_tame(const SchwartzFunction& f) const {
  if (f.prime() == p) throw InvariantViolation("tame table at p");
  GlobalSchwartz g = *this;
  g.tame.insert_or_assign(f.prime(), f.storage() == SchwartzFunction::Storage::PhiPrime ? f : partial_fourier(f));
  return g;
}

Cyclotomic GlobalSchwartz::value(const mpq_class& u, const mpq_class& v) const {
  auto primes = table_primes(*this, true);
  for (const auto& x : {u, v})
    for (const auto& [l, e] : factor(x.get_den().get_si()))
      if (!primes.count(l)) return Cyclotomic(1, 0);
  return local_value(at_p, p, u, v) * tame_value(*this, u, v);
}

mpq_class GlobalSchwartz::phi_at_origin() const {
  auto origin = [](const SchwartzFunction& f) {
    mpq_class s = 0;
    const long l = f.prime();
    for (const auto& c : f.cells()) {
      if (!c.x.ball || !c.mu.is_trivial() || !c.nu.is_trivial()) continue;
      mpq_class vol = qpow(mpq_class(l), -c.y.e);
      if (!c.y.ball) vol *= mpq_class(l - 1, l);
      s += c.coeff.to_rational() * vol;
    }
    return s;
  };
  mpq_class s = origin(at_p);
  for (const auto& [l, f] : tame) s *= origin(f);
  return s;
}

bool QExpansion::agrees(const QExpansion& o, int n) const {
  if (n > bound() || n > o.bound()) throw TruncationTooShort();
  for (int i = 1; i <= n; ++i)
    if (a[i] != o.a[i]) return false;
  return true;
}

std::string QExpansion::csv() const {
  std::ostringstream os;
  os << "n,coefficient\n";
  os << 0 << "," << (constant_known ? a[0].str() : "a0") << "\n";
  for (int n = 1; n <= bound(); ++n) os << n << "," << a[n].str() << "\n";
  return os.str();
}

QExpansion eisenstein_F(int k, const GlobalSchwartz& phi, int N) {
  if (k < 0) throw WeightZeroSupport("weight k + 2 needs k >= 0");
  if (k == 0 && phi.phi_at_origin() != 0) throw WeightZeroSupport("k = 0 needs Phi(0, 0) = 0");
  return build(SeriesKind::F, k, phi, N);
}

QExpansion eisenstein_E_padic(int k, const GlobalSchwartz& phi, int N) {
  if (k < 0) throw UnsupportedLocalDatum("E^{-k} needs k >= 0");
  const auto& cells = phi.at_p.cells();
  bool ok = cells.size() == 1 && !cells[0].y.ball && cells[0].y.e == 0 && cells[0].x.e == 0;
  if (!ok) throw UnsupportedLocalDatum("E^{-k} is built for depleted or critical data at p only");
  bool dep = !cells[0].x.ball;
  QExpansion q = build(SeriesKind::E, k, phi, N);
  q.constant_known = dep;  // p-adically cuspidal; the critical constant term is left open
  return q;
}

QExpOp qexp_op_from_string(const std::string& name) {
  if (name == "U_p") return QExpOp::Up;
  if (name == "V_p" || name == "phi") return QExpOp::Vp;
  if (name == "diamond") return QExpOp::Diamond;
  if (name == "diamond_inv") return QExpOp::DiamondInv;
  if (name == "theta") return QExpOp::Theta;
  throw UnsupportedTag("unknown q-expansion operator " + name);
}

QExpansion qexp_operator(QExpOp op, const QExpansion& f) {
  QExpansion g = f;
  const int N = f.bound();
  switch (op) {
    case QExpOp::Up: {
      int M = N / int(f.p);
      if (M < 1) throw TruncationTooShort("U_p needs at least p coefficients");
      g.a.resize(M + 1);
      for (int n = 1; n <= M; ++n) g.a[n] = f.a[n * f.p];
      break;
    }
    case QExpOp::Vp:
      for (int n = 1; n <= N; ++n) g.a[n] = n % f.p == 0 ? f.a[n / f.p] : Cyclotomic(1, 0);
      break;
    case QExpOp::Diamond:
    case QExpOp::DiamondInv: {
      if (!f.diamond) throw UnsupportedLocalDatum("no <p> eigenvalue recorded");
      Cyclotomic d = *f.diamond;
      if (op == QExpOp::DiamondInv) {
        if (d.is_rational()) {
          if (d.is_zero()) throw DivisionByZero();
          d = Cyclotomic(1, 1 / d.rational());
        } else {
          // a root of unity of order dividing the field's
          Cyclotomic pw = d, prev = Cyclotomic(1, 1);
          for (int i = 1; i < 4 * d.order() && pw != Cyclotomic(1, 1); ++i) {
            prev = pw;
            pw = pw * d;
          }
          if (pw != Cyclotomic(1, 1)) throw UnsupportedLocalDatum("<p> eigenvalue is not invertible here");
          d = d == Cyclotomic(1, 1) ? d : prev;
        }
      }
      for (auto& x : g.a) x = x * d;
      g.diamond = f.diamond;
      break;
    }
    case QExpOp::Theta:
      for (int n = 0; n <= N; ++n) g.a[n] = f.a[n] * mpq_class(n);
      g.constant_known = true;
      g.weight = f.weight + 2;
      break;
  }
  return g;
}

QExpansion operator-(const QExpansion& f, const QExpansion& g) {
  QExpansion r = f;
  int N = std::min(f.bound(), g.bound());
  r.a.resize(N + 1);
  for (int n = 0; n <= N; ++n) r.a[n] = f.a[n] - g.a[n];
  r.constant_known = f.constant_known && g.constant_known;
  if (!(f.diamond && g.diamond && *f.diamond == *g.diamond)) r.diamond.reset();
  return r;
}

QExpansion scaled(const QExpansion& f, const mpq_class& c) {
  QExpansion r = f;
  for (auto& x : r.a) x *= c;
  return r;
}

// ---------------------------------------------------------------------------
// families

WeightPoint WeightPoint::integer(long p, int a) { return {a, DirichletChar::trivial(p)}; }

FamilyQExp family_qexp(const FamilySpec& spec, int N) {
  FamilyQExp F;
  F.spec = spec;
  F.terms.resize(N + 1);
  const long p = spec.tame.p;
  std::map<long, std::pair<int, int>> lows;
  for (const auto& [l, f] : spec.tame.tame) lows[l] = low_exponents(f);
  const auto primes = table_primes(spec.tame, false);
  const bool two = spec.kind == FamilySpec::Kind::TwoParam;
  for (long n = 1; n <= N; ++n) {
    int vp = int(valuation(mpq_class(n), p));
    if (two && vp > 0) continue;
    auto range = [&](long l, int e) -> Range {
      if (l == p) return {e, e};  // v a unit at p; u a unit too when e = 0
      auto it = lows.find(l);
      if (it == lows.end()) return {0, e};
      return {it->second.first, e - it->second.second};
    };
    for_each_u(n, primes, range, [&](const mpq_class& u) {
      mpq_class v = mpq_class(n) / u;
      Cyclotomic c = tame_value(spec.tame, u, v);
      if (c.is_zero()) return;
      if (u < 0) c = -c;
      F.terms[n].push_back({u, v, c});
    });
  }
  return F;
}

FamilyQExp family_theta(const FamilyQExp& f) {
  FamilyQExp g = f;
  ++g.shift;
  return g;
}

namespace {

QExpansion specialize_impl(const FamilyQExp& f, int e1, const DirichletChar* c1, int e2, const DirichletChar& c2,
                           int weight) {
  const long p = f.spec.tame.p;
  if (c2.p != p || (c1 && c1->p != p)) throw CharacterConductorMismatch("weight character at the wrong prime");
  QExpansion q;
  q.p = p;
  q.weight = weight;
  q.a.assign(f.terms.size(), Cyclotomic(1, 0));
  for (std::size_t n = 1; n < f.terms.size(); ++n)
    for (const auto& t : f.terms[n]) {
      Cyclotomic x = t.c * (qpow(t.u, e1) * qpow(t.v, e2));
      if (c1) x *= char_at(*c1, t.u);
      x *= char_at(c2, t.v);
      q.a[n] += x;
    }
  return q;
}

}  // namespace

QExpansion specialize_family(const FamilyQExp& f, const WeightPoint& k1, const WeightPoint& k2) {
  if (f.spec.kind != FamilySpec::Kind::TwoParam) throw InvariantViolation("two-parameter point for a one-parameter family");
  int e1 = k1.a + f.shift, e2 = k2.a + f.shift;
  return specialize_impl(f, e1, &k1.chi, e2, k2.chi, e1 + e2 + 1);
}

QExpansion specialize_family(const FamilyQExp& f, const WeightPoint& k) {
  if (f.spec.kind != FamilySpec::Kind::OneParamCritical)
    throw InvariantViolation("one-parameter point for a two-parameter family");
  int e1 = f.spec.ell + f.shift, e2 = k.a + f.shift;
  return specialize_impl(f, e1, nullptr, e2, k.chi, e1 + e2 + 1);
}

}  // namespace gsp4
