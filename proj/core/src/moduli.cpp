#include "gsp4/moduli.hpp"

#include "gsp4/errors.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace gsp4 {

namespace {

using ZRow = std::vector<mpz_class>;

mpz_class zpow(long p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

mpq_class qpow(long p, int e) { return e >= 0 ? mpq_class(zpow(p, e)) : mpq_class(1, zpow(p, -e)); }

int zval(mpz_class x, long p) {
  if (x == 0) return 1 << 20;
  int v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) {
    x /= p;
    ++v;
  }
  return v;
}

int qval(const mpq_class& x, long p) {
  if (x == 0) return 1 << 20;
  return zval(x.get_num(), p) - zval(x.get_den(), p);
}

mpz_class floor_q(const mpq_class& x) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return r;
}

long mod_p(const mpq_class& x, long p) {
  // x must be p-integral
  mpz_class P = p, inv, r;
  mpz_class den = x.get_den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t()) == 0) throw InvariantViolation("not p-integral");
  r = x.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), P.get_mpz_t());
  return r.get_si();
}

// Row echelon form by unimodular row operations over Z, on the first `cols`
// columns; returns the number of pivots.
int echelon(std::vector<ZRow>& rows, int cols) {
  int r = 0;
  for (int j = 0; j < cols && r < int(rows.size()); ++j) {
    while (true) {
      int best = -1;
      for (int i = r; i < int(rows.size()); ++i)
        if (rows[i][j] != 0 && (best < 0 || abs(rows[i][j]) < abs(rows[best][j]))) best = i;
      if (best < 0) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (int i = r + 1; i < int(rows.size()); ++i) {
        if (rows[i][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][j].get_mpz_t(), rows[r][j].get_mpz_t());
        for (std::size_t k = 0; k < rows[i].size(); ++k) rows[i][k] -= q * rows[r][k];
        if (rows[i][j] != 0) done = false;
      }
      if (done) break;
    }
    bool pivot = false;
    for (int i = r; i < int(rows.size()); ++i) pivot = pivot || rows[i][j] != 0;
    if (rows[r][j] != 0) {
      if (rows[r][j] < 0)
        for (auto& x : rows[r]) x = -x;
      ++r;
    } else if (pivot) {
      throw InvariantViolation("echelon failure");
    }
  }
  return r;
}

// integer basis of {y in Z^k : y A = 0} for a k x m integer matrix A
std::vector<ZRow> integer_kernel(const std::vector<ZRow>& A, int m) {
  const int k = int(A.size());
  std::vector<ZRow> rows(k);
  for (int i = 0; i < k; ++i) {
    rows[i] = A[i];
    rows[i].resize(m + k);
    rows[i][m + i] = 1;
  }
  int r = echelon(rows, m);
  std::vector<ZRow> ker;
  for (int i = r; i < k; ++i) ker.emplace_back(rows[i].begin() + m, rows[i].end());
  return ker;
}

ZRow scale_to_integers(const QVec& v, const mpz_class& s) {
  ZRow r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpq_class x = v[i] * s;
    if (x.get_den() != 1) throw PrecisionExceeded("vector outside the precision window");
    r[i] = x.get_num();
  }
  return r;
}

// pairing on Q_p^4 = V1 + V2
mpq_class pairing(const QVec& x, const QVec& y) { return x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2]; }

mpq_class det(std::vector<QVec> m) {
  const int n = int(m.size());
  mpq_class d = 1;
  for (int j = 0; j < n; ++j) {
    int piv = -1;
    for (int i = j; i < n; ++i)
      if (m[i][j] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != j) {
      std::swap(m[piv], m[j]);
      d = -d;
    }
    d *= m[j][j];
    for (int i = j + 1; i < n; ++i) {
      mpq_class f = m[i][j] / m[j][j];
      for (int k = j; k < n; ++k) m[i][k] -= f * m[j][k];
    }
  }
  return d;
}

QVec axpy(const QVec& x, const mpq_class& a, const QVec& y) {
  QVec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += a * y[i];
  return r;
}

QVec scale(const QVec& x, const mpq_class& a) {
  QVec r = x;
  for (auto& v : r) v *= a;
  return r;
}

bool lex_less(const QVec& a, const QVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::string vec_str(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

// the lattice M = L ∩ span(ws)
std::vector<QVec> intersect_subspace(const Lattice& L, const std::vector<QVec>& ws) {
  const int n = L.dim();
  // functionals vanishing on the span
  std::vector<ZRow> wt(n, ZRow(ws.size()));
  for (std::size_t k = 0; k < ws.size(); ++k) {
    mpz_class den = 1;
    for (const auto& x : ws[k]) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    for (int i = 0; i < n; ++i) wt[i][k] = mpq_class(ws[k][i] * den).get_num();
  }
  auto phis = integer_kernel(wt, int(ws.size()));  // rows: phi with phi . w = 0
  const mpz_class s = zpow(L.prime(), L.precision());
  std::vector<ZRow> a(n, ZRow(phis.size()));
  for (int i = 0; i < n; ++i) {
    ZRow b = scale_to_integers(L.basis()[i], s);
    for (std::size_t k = 0; k < phis.size(); ++k) {
      mpz_class acc = 0;
      for (int j = 0; j < n; ++j) acc += b[j] * phis[k][j];
      a[i][k] = acc;
    }
  }
  std::vector<QVec> out;
  for (const auto& y : integer_kernel(a, int(phis.size()))) {
    QVec m(n, 0);
    for (int i = 0; i < n; ++i) m = axpy(m, mpq_class(y[i]), L.basis()[i]);
    out.push_back(m);
  }
  return out;
}

// canonical generator of the cyclic subgroup <c> of Q_p^n / L of order p^k
QVec canonical_generator(const Lattice& L, const QVec& c) {
  const long p = L.prime();
  int k = 0;
  QVec t = c;
  while (!L.contains(t)) {
    t = scale(t, p);
    if (++k > 4 * L.precision() + 8) throw PrecisionExceeded("subgroup order");
  }
  const long order = zpow(p, k).get_si();
  QVec best = L.reduce(c);
  for (long u = 2; u < order; ++u) {
    if (u % p == 0) continue;
    QVec cand = L.reduce(scale(c, u));
    if (lex_less(cand, best)) best = cand;
  }
  return best;
}

std::string span_key(std::vector<QVec> ws) {
  // reduced row echelon form over Q
  const int n = int(ws[0].size());
  int r = 0;
  for (int j = 0; j < n && r < int(ws.size()); ++j) {
    int piv = -1;
    for (int i = r; i < int(ws.size()); ++i)
      if (ws[i][j] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(ws[r], ws[piv]);
    ws[r] = scale(ws[r], 1 / ws[r][j]);
    for (int i = 0; i < int(ws.size()); ++i)
      if (i != r && ws[i][j] != 0) ws[i] = axpy(ws[i], -ws[i][j], ws[r]);
    ++r;
  }
  std::string s;
  for (int i = 0; i < r; ++i) s += vec_str(ws[i]);
  return s;
}

QVec embed(const QVec& v, int slot) {
  QVec r(4, 0);
  r[2 * slot] = v[0];
  r[2 * slot + 1] = v[1];
  return r;
}

QVec from_fp(const Lattice& L, const std::vector<long>& x) {
  QVec v(L.dim(), 0);
  for (int i = 0; i < L.dim(); ++i) v = axpy(v, mpq_class(x[i], L.prime()), L.basis()[i]);
  return v;
}

// all nonzero vectors of F_p^n up to scaling (first nonzero entry 1)
std::vector<std::vector<long>> projective_points(long p, int n) {
  std::vector<std::vector<long>> out;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  for (long code = 1; code < total; ++code) {
    std::vector<long> v(n);
    long c = code;
    for (int i = 0; i < n; ++i) {
      v[i] = c % p;
      c /= p;
    }
    int first = 0;
    while (v[first] == 0) ++first;
    if (v[first] == 1) out.push_back(v);
  }
  return out;
}

// basis of {x in F_p^n : sum a_i x_i = 0}
std::vector<std::vector<long>> fp_hyperplane(long p, const std::vector<long>& a) {
  const int n = int(a.size());
  int piv = -1;
  for (int i = 0; i < n; ++i)
    if (a[i] % p != 0) {
      piv = i;
      break;
    }
  std::vector<std::vector<long>> out;
  if (piv < 0) {
    for (int i = 0; i < n; ++i) {
      std::vector<long> e(n, 0);
      e[i] = 1;
      out.push_back(e);
    }
    return out;
  }
  mpz_class inv, P = p, ap = a[piv];
  mpz_invert(inv.get_mpz_t(), ap.get_mpz_t(), P.get_mpz_t());
  for (int i = 0; i < n; ++i) {
    if (i == piv) continue;
    std::vector<long> e(n, 0);
    e[i] = 1;
    long t = (p - (a[i] * inv.get_si()) % p) % p;
    e[piv] = t;
    out.push_back(e);
  }
  return out;
}

bool in_formal_ptorsion(const Lattice& L, const std::vector<QVec>& m, const QVec& x) {
  const long p = L.prime();
  if (m.size() == 1) {
    for (long k = 0; k < p; ++k)
      if (L.contains(axpy(x, mpq_class(-k, p), m[0]))) return true;
    return false;
  }
  for (long k1 = 0; k1 < p; ++k1)
    for (long k2 = 0; k2 < p; ++k2)
      if (L.contains(axpy(axpy(x, mpq_class(-k1, p), m[0]), mpq_class(-k2, p), m[1]))) return true;
  return false;
}

// the p lifts C~ of C = <c> to cyclic p^2-subgroups of the formal group
std::vector<QVec> formal_lifts(const ModuliPointG& x, const std::vector<QVec>& m) {
  const long p = x.prime();
  std::set<std::string> seen;
  std::vector<QVec> out;
  for (long k1 = 0; k1 < p; ++k1)
    for (long k2 = 0; k2 < p; ++k2) {
      QVec ct = scale(axpy(axpy(x.c, k1, m[0]), k2, m[1]), mpq_class(1, p));
      if (seen.insert(vec_str(canonical_generator(x.lattice, ct))).second) out.push_back(ct);
    }
  return out;
}

void check_ordinary(const ModuliPointG& x, const std::vector<QVec>& m) {
  if (m.size() != 2) throw NonOrdinary("formal part of rank " + std::to_string(m.size()));
  const auto& L = x.lattice;
  if (L.contains(x.c) || !L.contains(scale(x.c, x.prime())) || !in_formal_ptorsion(L, m, x.c))
    throw NonOrdinary("C is not an order-p subgroup of the formal p-torsion");
  // c must be an honest formal vector for the lifts
  std::vector<QVec> span = x.formal;
  span.push_back(x.c);
  if (span_key(span) != span_key(x.formal)) throw NonOrdinary("generator of C outside the formal subspace");
}

// Weil pairing on A[p] with values in F_p
long weil(const ModuliPointG& x, const QVec& a, const QVec& b) {
  const int s = x.similitude_scale();
  return mod_p(pairing(a, b) * qpow(x.prime(), 2 - s), x.prime());
}

}  // namespace

// ---------------------------------------------------------------------------

Lattice Lattice::from_generators(long p, int n, const std::vector<QVec>& gens, int precision) {
  Lattice L;
  L.p_ = p;
  L.n_ = n;
  L.prec_ = precision;
  const mpz_class s = zpow(p, precision);
  auto build = [&](int cap) {
    std::vector<ZRow> rows;
    for (const auto& g : gens) rows.push_back(scale_to_integers(g, s));
    for (int i = 0; i < n; ++i) {
      ZRow e(n, 0);
      e[i] = zpow(p, precision + cap);
      rows.push_back(e);
    }
    int r = echelon(rows, n);
    if (r != n) throw InvariantViolation("lattice of deficient rank");
    rows.resize(n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < j; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][j].get_mpz_t(), rows[j][j].get_mpz_t());
        if (q != 0)
          for (int k = 0; k < n; ++k) rows[i][k] -= q * rows[j][k];
      }
    return rows;
  };
  auto rows = build(precision + 2);
  if (rows != build(precision)) throw PrecisionExceeded("lattice does not contain p^P Z_p^n");
  L.b_.assign(n, QVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) L.b_[i][j] = mpq_class(rows[i][j], s);
  for (auto& r : L.b_)
    for (auto& x : r) x.canonicalize();
  return L;
}

Lattice Lattice::standard(long p, int n, int precision) {
  std::vector<QVec> gens;
  for (int i = 0; i < n; ++i) {
    QVec e(n, 0);
    e[i] = 1;
    gens.push_back(e);
  }
  return from_generators(p, n, gens, precision);
}

QVec Lattice::coordinates(const QVec& v) const {
  QVec y(n_), r = v;
  for (int i = 0; i < n_; ++i) {
    y[i] = r[i] / b_[i][i];
    r = axpy(r, -y[i], b_[i]);
  }
  return y;
}

bool Lattice::contains(const QVec& v) const {
  for (const auto& y : coordinates(v))
    if (y.get_den() != 1) return false;
  return true;
}

QVec Lattice::reduce(const QVec& v) const {
  QVec r = v;
  for (int i = 0; i < n_; ++i) {
    mpz_class q = floor_q(r[i] / b_[i][i]);
    if (q != 0) r = axpy(r, mpq_class(-q), b_[i]);
  }
  return r;
}

Lattice Lattice::plus(const std::vector<QVec>& gens) const {
  std::vector<QVec> all = b_;
  all.insert(all.end(), gens.begin(), gens.end());
  return from_generators(p_, n_, all, prec_);
}

Lattice Lattice::scaled_by_p(int k) const { return from_generators(p_, n_, [&] {
    std::vector<QVec> g;
    for (const auto& b : b_) g.push_back(scale(b, qpow(p_, k)));
    return g;
  }(), prec_); }

bool Lattice::contains(const Lattice& o) const {
  for (const auto& b : o.b_)
    if (!contains(b)) return false;
  return true;
}

std::vector<int> Lattice::quotient_invariants(const Lattice& o) const {
  if (!o.contains(*this)) throw InvariantViolation("quotient of non-nested lattices");
  std::vector<QVec> T;
  for (const auto& b : b_) T.push_back(o.coordinates(b));
  // determinantal divisors via minors
  std::vector<int> d(n_ + 1, 0);
  for (int k = 1; k <= n_; ++k) {
    int best = 1 << 20;
    for (int rm = 0; rm < (1 << n_); ++rm) {
      if (__builtin_popcount(rm) != k) continue;
      for (int cm = 0; cm < (1 << n_); ++cm) {
        if (__builtin_popcount(cm) != k) continue;
        std::vector<QVec> sub;
        for (int i = 0; i < n_; ++i) {
          if (!(rm >> i & 1)) continue;
          QVec row;
          for (int j = 0; j < n_; ++j)
            if (cm >> j & 1) row.push_back(T[i][j]);
          sub.push_back(row);
        }
        best = std::min(best, qval(det(sub), p_));
      }
    }
    d[k] = best;
  }
  std::vector<int> inv;
  for (int k = 1; k <= n_; ++k)
    if (d[k] - d[k - 1] > 0) inv.push_back(d[k] - d[k - 1]);
  std::sort(inv.rbegin(), inv.rend());
  return inv;
}

std::string Lattice::str() const {
  std::string s = "[";
  for (const auto& b : b_) s += vec_str(b);
  return s + "]";
}

// ---------------------------------------------------------------------------

QVec ModuliPointG::canonical_c() const { return canonical_generator(lattice, c); }

std::string ModuliPointG::key() const { return lattice.str() + " W" + span_key(formal) + " C" + vec_str(canonical_c()); }

int ModuliPointG::similitude_scale() const {
  int s = 1 << 20;
  const auto& b = lattice.basis();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) s = std::min(s, qval(pairing(b[i], b[j]), prime()));
  return s;
}

std::vector<QVec> ModuliPointG::formal_lattice() const { return intersect_subspace(lattice, formal); }

std::string ModuliPointH::key() const {
  Lattice L = Lattice::from_generators(prime(), 4,
                                       {embed(l1.basis()[0], 0), embed(l1.basis()[1], 0), embed(l2.basis()[0], 1),
                                        embed(l2.basis()[1], 1)},
                                       l1.precision());
  return l1.str() + l2.str() + " W" + span_key({w1}) + span_key({w2}) + " C" + vec_str(canonical_generator(L, c));
}

ModuliPointH ModuliPointH::make(const Lattice& l1, const Lattice& l2, const QVec& w1, const QVec& w2, long u) {
  ModuliPointH x{l1, l2, w1, w2, {}};
  auto m1 = intersect_subspace(l1, {w1});
  auto m2 = intersect_subspace(l2, {w2});
  if (m1.size() != 1 || m2.size() != 1) throw NonOrdinary("formal line");
  const long p = l1.prime();
  if (u % p == 0) throw InvariantViolation("alpha must be an isomorphism");
  x.c = scale(axpy(embed(m1[0], 0), u, embed(m2[0], 1)), mpq_class(1, p));
  return x;
}

template <class Point>
void Cycle<Point>::add(const Point& x, long mult) {
  auto k = x.key();
  auto it = points.find(k);
  if (it == points.end())
    points.emplace(k, std::make_pair(x, mult));
  else
    it->second.second += mult;
}

template <class Point>
long Cycle<Point>::degree() const {
  long d = 0;
  for (const auto& [k, v] : points) d += v.second;
  return d;
}

template <class Point>
Cycle<Point> Cycle<Point>::scaled(long k) const {
  Cycle r = *this;
  for (auto& [key, v] : r.points) v.second *= k;
  return r;
}

template <class Point>
std::vector<std::string> Cycle<Point>::dump() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : points) out.push_back(std::to_string(v.second) + " x " + k);
  return out;
}

template struct Cycle<ModuliPointG>;
template struct Cycle<ModuliPointH>;

// ---------------------------------------------------------------------------

CycleH up_boxtimes_up(const ModuliPointH& x) {
  const long p = x.prime();
  if (x.l1.precision() < 2) throw PrecisionExceeded("U_p needs precision >= 2");
  auto moves = [&](const Lattice& L, const QVec& w) {
    auto m = intersect_subspace(L, {w});
    std::vector<Lattice> out;
    const auto& b = L.basis();
    std::vector<QVec> lines;
    for (long a = 0; a < p; ++a) lines.push_back(scale(axpy(b[0], a, b[1]), mpq_class(1, p)));
    lines.push_back(scale(b[1], mpq_class(1, p)));
    for (const auto& X : lines)
      if (!in_formal_ptorsion(L, m, X)) out.push_back(L.plus({X}));
    return out;
  };
  CycleH out;
  for (const auto& a : moves(x.l1, x.w1))
    for (const auto& b : moves(x.l2, x.w2)) out.add(ModuliPointH{a, b, x.w1, x.w2, x.c});
  return out;
}

ModuliPointG iota_delta(const ModuliPointH& x) {
  ModuliPointG g;
  g.lattice = Lattice::from_generators(
      x.prime(), 4,
      {embed(x.l1.basis()[0], 0), embed(x.l1.basis()[1], 0), embed(x.l2.basis()[0], 1), embed(x.l2.basis()[1], 1)},
      x.l1.precision());
  g.formal = {embed(x.w1, 0), embed(x.w2, 1)};
  g.c = x.c;
  return g;
}

ModuliPointG diamond_p(const ModuliPointG& x) {
  ModuliPointG y = x;
  y.lattice = x.lattice.scaled_by_p(-1);
  y.c = scale(x.c, mpq_class(1, x.prime()));
  return y;
}

ModuliPointH diamond_p(const ModuliPointH& x) {
  return ModuliPointH{x.l1.scaled_by_p(-1), x.l2.scaled_by_p(-1), x.w1, x.w2, scale(x.c, mpq_class(1, x.prime()))};
}

CycleG z_prime(const ModuliPointG& x) {
  const long p = x.prime();
  const auto& L = x.lattice;
  auto m = intersect_subspace(L, x.formal);
  check_ordinary(x, m);
  if (L.precision() < 2) throw PrecisionExceeded("Z' needs precision >= 2");
  std::vector<Lattice> js;
  for (const auto& v : projective_points(p, 4)) {
    QVec X = from_fp(L, v);
    if (in_formal_ptorsion(L, m, X)) continue;  // J ∩ formal must be C
    if (weil(x, X, x.c) != 0) continue;         // isotropic
    Lattice lj = L.plus({x.c, X});
    if (std::find(js.begin(), js.end(), lj) == js.end()) js.push_back(lj);
  }
  CycleG out;
  auto lifts = formal_lifts(x, m);
  for (const auto& lj : js)
    for (const auto& ct : lifts) out.add(ModuliPointG{lj, x.formal, ct});
  return out;
}

Lattice u2_kernel_lattice(const ModuliPointG& x) {
  const long p = x.prime();
  const auto& L = x.lattice;
  auto m = intersect_subspace(L, x.formal);
  check_ordinary(x, m);
  std::vector<long> a(4);
  for (int i = 0; i < 4; ++i) {
    std::vector<long> e(4, 0);
    e[i] = 1;
    a[i] = weil(x, from_fp(L, e), x.c);
  }
  std::vector<QVec> gens = {scale(m[0], mpq_class(1, p)), scale(m[1], mpq_class(1, p)), scale(x.c, mpq_class(1, p))};
  for (const auto& v : fp_hyperplane(p, a)) gens.push_back(from_fp(L, v));
  return L.plus(gens);
}

CycleG u2_prime(const ModuliPointG& x) {
  const long p = x.prime();
  Lattice j0 = u2_kernel_lattice(x);
  auto m = intersect_subspace(x.lattice, x.formal);
  CycleG out;
  for (const auto& ct : formal_lifts(x, m)) out.add(ModuliPointG{j0, x.formal, scale(ct, mpq_class(1, p))});
  return out;
}

CycleG corr_lhs(const ModuliPointH& x) {
  CycleG out;
  for (const auto& [k, v] : up_boxtimes_up(x).points)
    for (const auto& [k2, w] : u2_prime(iota_delta(v.first)).points) out.add(w.first, v.second * w.second);
  return out;
}

CycleG corr_rhs(const ModuliPointH& x) {
  CycleG out;
  for (const auto& [k, v] : z_prime(iota_delta(x)).points) out.add(diamond_p(v.first), x.prime() * v.second);
  return out;
}

bool CorrReport::all_pass() const {
  for (const auto& r : points)
    if (!r.pass) return false;
  return !points.empty();
}

CorrReport verify_correspondence_identity(long p, const std::vector<ModuliPointH>& sample) {
  CorrReport rep;
  rep.p = p;
  for (const auto& x : sample) {
    CorrPointReport r;
    r.point = x.key();
    try {
      auto lhs = corr_lhs(x), rhs = corr_rhs(x);
      r.lhs_degree = lhs.degree();
      r.rhs_degree = rhs.degree();
      r.pass = lhs == rhs;
      if (!r.pass) {
        r.lhs = lhs.dump();
        r.rhs = rhs.dump();
      }
    } catch (const Error& e) {
      r.pass = false;
      r.lhs = {std::string("error: ") + e.what()};
    }
    rep.points.push_back(std::move(r));
  }
  return rep;
}

std::vector<ModuliPointH> canonical_orbit(long p, int precision) {
  std::vector<Lattice> level0 = {Lattice::standard(p, 2, precision)};
  std::vector<Lattice> level1;
  const QVec e1{1, 0}, e2{0, 1};
  for (long a = 0; a < p; ++a) level1.push_back(level0[0].plus({{mpq_class(1, p), mpq_class(a, p)}}));
  level1.push_back(level0[0].plus({{0, mpq_class(1, p)}}));
  std::vector<QVec> lines;
  for (long a = 0; a < p; ++a) lines.push_back({1, a});
  lines.push_back({0, 1});
  std::vector<ModuliPointH> out;
  for (const auto* level : {&level0, &level1})
    for (const auto& l1 : *level)
      for (const auto& l2 : *level)
        for (const auto& w1 : lines)
          for (const auto& w2 : lines)
            for (long u = 1; u < p; ++u) out.push_back(ModuliPointH::make(l1, l2, w1, w2, u));
  return out;
}

std::vector<ModuliPointH> random_points(long p, int count, std::uint64_t seed, int precision) {
  std::mt19937_64 rng(seed);
  auto uni = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  auto lattice = [&](int a, int d) {
    QVec b1{qpow(p, a), mpq_class(uni(0, p * p - 1)) * qpow(p, std::min(a, d))};
    QVec b2{0, qpow(p, d)};
    return Lattice::from_generators(p, 2, {b1, b2}, precision);
  };
  auto line = [&]() -> QVec {
    if (uni(0, p) == 0) return {0, 1};
    return {1, uni(0, p * p - 1)};
  };
  std::vector<ModuliPointH> out;
  while (int(out.size()) < count) {
    int a1 = int(uni(-1, 1)), d1 = int(uni(-1, 1)), a2 = int(uni(-1, 1));
    int d2 = a1 + d1 - a2;
    if (d2 < -1 || d2 > 1) continue;
    out.push_back(ModuliPointH::make(lattice(a1, d1), lattice(a2, d2), line(), line(), uni(1, p - 1)));
  }
  return out;
}

}  // namespace gsp4
