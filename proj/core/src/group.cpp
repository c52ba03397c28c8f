#include "gsp4/group.hpp"

#include <algorithm>

#include "gsp4/errors.hpp"
#include "gsp4/scalar.hpp"

#include <sstream>

namespace gsp4 {

QMatrix::QMatrix(int n, std::initializer_list<long> rows) : QMatrix(n) {
  if (rows.size() != static_cast<size_t>(n * n)) throw std::invalid_argument("QMatrix: wrong entry count");
  size_t i = 0;
  for (long v : rows) a_[i++] = v;
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::diag(const std::vector<mpq_class>& d) {
  QMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.n_; ++i) m(i, i) = d[static_cast<size_t>(i)];
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  QMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const mpq_class& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < n_; ++j)
        if (o(k, j) != 0) r(i, j) += x * o(k, j);
    }
  return r;
}

QMatrix QMatrix::operator*(const mpq_class& s) const {
  QMatrix r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

QMatrix QMatrix::transpose() const {
  QMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

QMatrix QMatrix::inverse() const {
  QMatrix a = *this, r = identity(n_);
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int i = c; i < n_; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw DivisionByZero("singular matrix");
    if (piv != c)
      for (int j = 0; j < n_; ++j) {
        std::swap(a(c, j), a(piv, j));
        std::swap(r(c, j), r(piv, j));
      }
    mpq_class s = 1 / a(c, c);
    for (int j = 0; j < n_; ++j) {
      a(c, j) *= s;
      r(c, j) *= s;
    }
    for (int i = 0; i < n_; ++i) {
      if (i == c || a(i, c) == 0) continue;
      mpq_class f = a(i, c);
      for (int j = 0; j < n_; ++j) {
        a(i, j) -= f * a(c, j);
        r(i, j) -= f * r(c, j);
      }
    }
  }
  return r;
}

mpq_class QMatrix::det() const {
  QMatrix a = *this;
  mpq_class d = 1;
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int i = c; i < n_; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n_; ++j) std::swap(a(c, j), a(piv, j));
      d = -d;
    }
    d *= a(c, c);
    for (int i = c + 1; i < n_; ++i) {
      if (a(i, c) == 0) continue;
      mpq_class f = a(i, c) / a(c, c);
      for (int j = c; j < n_; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return d;
}

bool QMatrix::is_upper_triangular() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < i; ++j)
      if ((*this)(i, j) != 0) return false;
  return true;
}

bool QMatrix::is_diagonal() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

bool QMatrix::is_integral(long p) const {
  for (const auto& x : a_)
    if (x != 0 && valuation(x, p) < 0) return false;
  return true;
}

std::string QMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < n_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < n_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
  }
  os << ']';
  return os.str();
}

std::string TorusExp::str() const {
  return "(" + std::to_string(e1) + "," + std::to_string(e2) + "," + std::to_string(e0) + ")";
}

const QMatrix& symplectic_form() {
  static const QMatrix j(4, {0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0});
  return j;
}

namespace {

mpq_class ppow(long p, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::abs(e)));
  return e >= 0 ? mpq_class(r) : mpq_class(1) / mpq_class(r);
}

}  // namespace

QMatrix torus_matrix(long p, const TorusExp& t) {
  return QMatrix::diag({ppow(p, t.e1), ppow(p, t.e2), ppow(p, t.e0 - t.e2), ppow(p, t.e0 - t.e1)});
}

TorusExp torus_exp_of(long /*p*/, const std::array<int, 4>& e) {
  if (e[0] + e[3] != e[1] + e[2]) throw InvariantViolation("not a GSp4 torus element");
  return {e[0], e[1], e[0] + e[3]};
}

mpq_class similitude_factor(const QMatrix& g) {
  if (g.size() != 4) return 0;
  const QMatrix& j = symplectic_form();
  QMatrix m = g * j * g.transpose();
  mpq_class nu = m(0, 3);
  if (nu == 0) return 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (m(a, b) != nu * j(a, b)) return 0;
  return nu;
}

bool is_gsp4(const QMatrix& g) { return similitude_factor(g) != 0; }

bool in_gsp4_zp(const QMatrix& g, long p) {
  mpq_class nu = similitude_factor(g);
  return nu != 0 && g.is_integral(p) && valuation(nu, p) == 0;
}

QMatrix root_element(int i, int j, const mpq_class& c) {
  QMatrix m = QMatrix::identity(4);
  auto set = [&](int a, int b, const mpq_class& v) { m(a, b) += v; };
  if (i == 0 && j == 1) {
    set(0, 1, c);
    set(2, 3, -c);
  } else if (i == 0 && j == 2) {
    set(0, 2, c);
    set(1, 3, c);
  } else if (i == 0 && j == 3) {
    set(0, 3, c);
  } else if (i == 1 && j == 2) {
    set(1, 2, c);
  } else if (i == 1 && j == 0) {
    set(1, 0, c);
    set(3, 2, -c);
  } else if (i == 2 && j == 0) {
    set(2, 0, c);
    set(3, 1, c);
  } else if (i == 3 && j == 0) {
    set(3, 0, c);
  } else if (i == 2 && j == 1) {
    set(2, 1, c);
  } else {
    throw std::invalid_argument("root_element: not a root position");
  }
  return m;
}

namespace {

struct WeylData {
  std::vector<QMatrix> mats;
  std::vector<std::array<int, 4>> perm;  // w e_j = +-e_{perm[j]}
  std::vector<int> sign;
};

const WeylData& weyl_data() {
  static const WeylData data = [] {
    WeylData d;
    QMatrix s1(4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    QMatrix s2(4, {1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 1});
    auto pattern = [](const QMatrix& w) {
      std::array<int, 4> pm{};
      for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
          if (w(i, j) != 0) pm[static_cast<size_t>(j)] = i;
      return pm;
    };
    // one signed lift per permutation pattern, in breadth-first (length) order
    d.mats.push_back(QMatrix::identity(4));
    d.perm.push_back(pattern(d.mats[0]));
    for (size_t i = 0; i < d.mats.size(); ++i)
      for (const QMatrix* s : {&s1, &s2}) {
        QMatrix w = d.mats[i] * *s;
        auto pm = pattern(w);
        if (std::find(d.perm.begin(), d.perm.end(), pm) != d.perm.end()) continue;
        d.mats.push_back(w);
        d.perm.push_back(pm);
      }
    for (size_t w = 0; w < d.mats.size(); ++w) {
      // determinant of the induced linear map on (e1, e2, e0)
      auto act = [&](TorusExp t) {
        std::array<int, 4> old = {t.e1, t.e2, t.e0 - t.e2, t.e0 - t.e1}, nw{};
        for (int j = 0; j < 4; ++j) nw[static_cast<size_t>(d.perm[w][static_cast<size_t>(j)])] = old[static_cast<size_t>(j)];
        return TorusExp{nw[0], nw[1], nw[0] + nw[3]};
      };
      TorusExp c1 = act({1, 0, 0}), c2 = act({0, 1, 0}), c3 = act({0, 0, 1});
      long det = static_cast<long>(c1.e1) * (c2.e2 * c3.e0 - c2.e0 * c3.e2) -
                 static_cast<long>(c2.e1) * (c1.e2 * c3.e0 - c1.e0 * c3.e2) +
                 static_cast<long>(c3.e1) * (c1.e2 * c2.e0 - c1.e0 * c2.e2);
      d.sign.push_back(det > 0 ? 1 : -1);
    }
    return d;
  }();
  return data;
}

}  // namespace

const std::vector<QMatrix>& weyl_group() { return weyl_data().mats; }

TorusExp weyl_act(int w, const TorusExp& t) {
  const auto& pm = weyl_data().perm[static_cast<size_t>(w)];
  std::array<int, 4> old = {t.e1, t.e2, t.e0 - t.e2, t.e0 - t.e1}, nw{};
  for (int j = 0; j < 4; ++j) nw[static_cast<size_t>(pm[static_cast<size_t>(j)])] = old[static_cast<size_t>(j)];
  return {nw[0], nw[1], nw[0] + nw[3]};
}

int weyl_sign(int w) { return weyl_data().sign[static_cast<size_t>(w)]; }

Frac frac_part(const mpq_class& x, long p) {
  if (x == 0 || valuation(x, p) >= 0) return {};
  mpz_class den = x.get_den(), pp = p, pm = 1;
  int m = 0;
  while (mpz_divisible_p(den.get_mpz_t(), pp.get_mpz_t())) {
    den /= pp;
    pm *= pp;
    ++m;
  }
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t());
  mpz_class a = x.get_num() * inv;
  mpz_mod(a.get_mpz_t(), a.get_mpz_t(), pm.get_mpz_t());
  if (!a.fits_slong_p()) throw PrecisionExceeded("phase denominator too large");
  return {a.get_si(), m};
}

Frac frac_add(const Frac& x, const Frac& y, long p) {
  int m = std::max(x.m, y.m);
  long pm = 1;
  for (int i = 0; i < m; ++i) pm *= p;
  long sx = 1, sy = 1;
  for (int i = x.m; i < m; ++i) sx *= p;
  for (int i = y.m; i < m; ++i) sy *= p;
  long a = (x.a * sx + y.a * sy) % pm;
  while (m > 0 && a % p == 0) {
    a /= p;
    --m;
  }
  return {m == 0 ? 0 : a, m};
}

TorusExp Iwasawa::torus() const {
  if (exps.size() != 4) throw std::invalid_argument("torus(): not a GSp4 decomposition");
  return torus_exp_of(0, {exps[0], exps[1], exps[2], exps[3]});
}

namespace {

long vmin(const mpq_class& x, long p) { return x == 0 ? std::numeric_limits<long>::max() : valuation(x, p); }

// Right-multiply a (and accumulate in r) by m.
void apply(QMatrix& a, QMatrix& r, const QMatrix& m) {
  a = a * m;
  r = r * m;
}

const QMatrix& weyl_moving(int from, int to) {
  // a Weyl matrix w with w e_to = +-e_from, fixing as much as possible
  for (const auto& w : weyl_group())
    if (w(from, to) != 0) {
      bool keep_last = to == 3 || w(3, 3) != 0;
      bool keep_first = to == 3 || w(0, 0) != 0;
      if (keep_last && keep_first) return w;
    }
  throw InvariantViolation("no Weyl element moves the column");
}

}  // namespace

Iwasawa iwasawa_decompose(const QMatrix& g, long p, int precision) {
  const int n = g.size();
  if (n != 2 && n != 4) throw std::invalid_argument("iwasawa_decompose: size must be 2 or 4");
  if (g.det() == 0) throw DivisionByZero("iwasawa_decompose: singular input");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g(i, j) != 0 && valuation(g(i, j), p) < -precision)
        throw PrecisionExceeded("entry below the configured precision");
  if (n == 4 && !is_gsp4(g)) throw InvariantViolation("iwasawa_decompose: not a similitude");

  Iwasawa out;
  QMatrix a = g, r = QMatrix::identity(n);
  bool integral_unit = g.is_integral(p) && valuation(g.det(), p) == 0;
  if (!integral_unit) {
    if (n == 2) {
      if (vmin(a(1, 0), p) < vmin(a(1, 1), p)) apply(a, r, QMatrix(2, {0, 1, -1, 0}));
      QMatrix x = QMatrix::identity(2);
      x(1, 0) = -a(1, 0) / a(1, 1);
      apply(a, r, x);
    } else {
      int best = 3;
      for (int j = 0; j < 3; ++j)
        if (vmin(a(3, j), p) < vmin(a(3, best), p)) best = j;
      if (best != 3) apply(a, r, weyl_moving(best, 3));
      if (a(3, 2) != 0) apply(a, r, root_element(1, 0, a(3, 2) / a(3, 3)));
      if (a(3, 1) != 0) apply(a, r, root_element(2, 0, -a(3, 1) / a(3, 3)));
      if (a(3, 0) != 0) apply(a, r, root_element(3, 0, -a(3, 0) / a(3, 3)));
      if (vmin(a(2, 1), p) < vmin(a(2, 2), p)) apply(a, r, weyl_moving(1, 2));
      if (a(2, 1) != 0) apply(a, r, root_element(2, 1, -a(2, 1) / a(2, 2)));
    }
    if (!a.is_upper_triangular()) throw InvariantViolation("iwasawa_decompose: reduction failed");
  }

  std::vector<mpq_class> d(static_cast<size_t>(n));
  out.exps.resize(static_cast<size_t>(n));
  out.units.resize(static_cast<size_t>(n));
  if (integral_unit) {
    // g already lies in the maximal compact
    out.n = QMatrix::identity(n);
    out.k = g;
    for (int i = 0; i < n; ++i) out.units[static_cast<size_t>(i)] = 1;
    return out;
  }
  for (int i = 0; i < n; ++i) {
    const mpq_class& x = a(i, i);
    long v = valuation(x, p);
    out.exps[static_cast<size_t>(i)] = static_cast<int>(v);
    out.units[static_cast<size_t>(i)] = x / ppow(p, v);
    d[static_cast<size_t>(i)] = 1 / x;
  }
  out.n = a * QMatrix::diag(d);
  out.k = r.inverse();
  return out;
}

Frac generic_phase(const QMatrix& n, long p) {
  if (n.size() == 2) return frac_part(n(0, 1), p);
  return frac_add(frac_part(n(0, 1), p), frac_part(n(1, 2), p), p);
}

}  // namespace gsp4
