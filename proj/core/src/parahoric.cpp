#include "gsp4/parahoric.hpp"

#include "gsp4/errors.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>

namespace gsp4 {

std::string to_string(Parahoric k) {
  switch (k) {
    case Parahoric::Hyperspecial: return "hyp";
    case Parahoric::Siegel: return "sieg";
    case Parahoric::Klingen: return "kl";
    case Parahoric::Iwahori: return "iw";
    case Parahoric::GL2Max: return "gl2";
  }
  return "?";
}

Parahoric parahoric_from_string(const std::string& s) {
  if (s == "hyp") return Parahoric::Hyperspecial;
  if (s == "sieg") return Parahoric::Siegel;
  if (s == "kl") return Parahoric::Klingen;
  if (s == "iw") return Parahoric::Iwahori;
  if (s == "gl2") return Parahoric::GL2Max;
  throw UnsupportedTag("unknown level '" + s + "'");
}

bool parahoric_contained(Parahoric k1, Parahoric k2) {
  if (k1 == k2 || k2 == Parahoric::Hyperspecial) return k1 != Parahoric::GL2Max;
  return k1 == Parahoric::Iwahori && k2 != Parahoric::GL2Max;
}

int group_dim(Parahoric k) { return k == Parahoric::GL2Max ? 2 : 4; }

std::vector<QMatrix> lattice_chain(Parahoric k, long p) {
  std::vector<QMatrix> out;
  if (k == Parahoric::GL2Max) return {QMatrix::identity(2)};
  out.push_back(QMatrix::identity(4));
  if (k == Parahoric::Klingen || k == Parahoric::Iwahori) out.push_back(QMatrix::diag({1, p, p, p}));
  if (k == Parahoric::Siegel || k == Parahoric::Iwahori) out.push_back(QMatrix::diag({1, 1, p, p}));
  return out;
}

bool in_parahoric(const QMatrix& g, Parahoric k, long p) {
  if (g.size() != group_dim(k)) return false;
  if (g.size() == 4 && !in_gsp4_zp(g, p)) return false;
  if (g.size() == 2 && (!g.is_integral(p) || valuation(g.det(), p) != 0)) return false;
  for (const auto& b : lattice_chain(k, p))
    if (!(b.inverse() * g * b).is_integral(p)) return false;
  return true;
}

namespace {

std::vector<long> unit_generators(long p) {
  if (p == 2) return {-1, 3, 5};
  // a generator of (Z/p^2)^x generates Z_p^x topologically
  long pp = p * p;
  for (long g = 2; g < p; ++g) {
    long x = 1, order = 0;
    do {
      x = x * g % pp;
      ++order;
    } while (x != 1);
    if (order == p * (p - 1)) return {-1, g};
  }
  return {-1};
}

long mod_pos(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long residue(const mpq_class& x, long pk) {
  mpz_class den = x.get_den(), inv, m = pk;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw PrecisionExceeded("entry is not p-integral");
  mpz_class r = x.get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r.get_si();
}

int val_mod(long x, long p, int k) {
  if (x == 0) return k;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return std::min(v, k);
}

long inv_mod(long a, long m) {
  mpz_class r, aa = a, mm = m;
  if (mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t()) == 0) throw DivisionByZero("non-unit");
  return r.get_si();
}

// Hermite form of the span of the columns of m plus p^k Z^n; appends
// (exponent, entries above the pivot) per row to out.
void hnf_append(const QMatrix& m, long p, int k, CosetLabel& out) {
  const int n = m.size();
  long pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  std::vector<std::vector<long>> pool;
  for (int j = 0; j < n; ++j) {
    std::vector<long> col(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) col[static_cast<size_t>(i)] = residue(m(i, j), pk);
    pool.push_back(col);
  }
  std::vector<std::vector<long>> basis(static_cast<size_t>(n), std::vector<long>(static_cast<size_t>(n), 0));
  std::vector<int> expo(static_cast<size_t>(n), k);
  for (int r = n - 1; r >= 0; --r) {
    const auto ri = static_cast<size_t>(r);
    int best = -1, bv = k;
    for (size_t g = 0; g < pool.size(); ++g) {
      int v = val_mod(pool[g][ri], p, k);
      if (v < bv) {
        bv = v;
        best = static_cast<int>(g);
      }
    }
    if (best < 0) continue;  // pivot is p^k e_r
    std::vector<long> piv = pool[static_cast<size_t>(best)];
    pool.erase(pool.begin() + best);
    long pa = 1;
    for (int i = 0; i < bv; ++i) pa *= p;
    long w = inv_mod(piv[ri] / pa, pk);
    for (auto& x : piv) x = mod_pos(x * w % pk, pk);
    for (auto& g : pool) {
      long f = g[ri] / pa;
      if (f == 0) continue;
      for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = mod_pos(g[static_cast<size_t>(i)] - f * piv[static_cast<size_t>(i)] % pk, pk);
    }
    // image of p^k e_r
    std::vector<long> extra(static_cast<size_t>(n));
    long s = pk / pa;
    bool nz = false;
    for (int i = 0; i < n; ++i) {
      extra[static_cast<size_t>(i)] = mod_pos(piv[static_cast<size_t>(i)] * s % pk, pk);
      nz = nz || extra[static_cast<size_t>(i)] != 0;
    }
    if (nz) pool.push_back(extra);
    basis[ri] = piv;
    expo[ri] = bv;
  }
  for (int c = 0; c < n; ++c) {
    auto& b = basis[static_cast<size_t>(c)];
    for (int r = c - 1; r >= 0; --r) {
      const auto ri = static_cast<size_t>(r);
      if (expo[ri] >= k) continue;
      long pa = 1;
      for (int i = 0; i < expo[ri]; ++i) pa *= p;
      long f = b[ri] / pa;
      if (f == 0) continue;
      for (int i = 0; i <= r; ++i)
        b[static_cast<size_t>(i)] = mod_pos(b[static_cast<size_t>(i)] - f * basis[ri][static_cast<size_t>(i)] % pk, pk);
    }
  }
  for (int c = 0; c < n; ++c) {
    out.push_back(expo[static_cast<size_t>(c)]);
    for (int r = 0; r < c; ++r) {
      long pa = 1;
      for (int i = 0; i < expo[static_cast<size_t>(r)]; ++i) pa *= p;
      out.push_back(basis[static_cast<size_t>(c)][static_cast<size_t>(r)] % pa);
    }
  }
}

}  // namespace

std::vector<QMatrix> parahoric_generators(Parahoric k, long p) {
  std::vector<QMatrix> gens;
  auto units = unit_generators(p);
  if (k == Parahoric::GL2Max) {
    for (long u : units) {
      gens.push_back(QMatrix::diag({u, 1}));
      gens.push_back(QMatrix::diag({1, u}));
    }
    gens.push_back(QMatrix(2, {1, 1, 0, 1}));
    gens.push_back(QMatrix(2, {1, 0, 1, 1}));
    return gens;
  }
  for (long u : units) {
    mpq_class ui = mpq_class(1) / u;
    gens.push_back(QMatrix::diag({u, 1, 1, ui}));
    gens.push_back(QMatrix::diag({1, u, ui, 1}));
    gens.push_back(QMatrix::diag({1, 1, u, u}));
  }
  for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}}) gens.push_back(root_element(i, j, 1));
  // negative roots: (1,0) short, (2,1) long lie in the Siegel / Klingen Levis
  auto neg = [&](int i, int j, bool levi) { gens.push_back(root_element(i, j, levi ? mpq_class(1) : mpq_class(p))); };
  bool hyp = k == Parahoric::Hyperspecial;
  neg(1, 0, hyp || k == Parahoric::Siegel);
  neg(2, 1, hyp || k == Parahoric::Klingen);
  neg(2, 0, hyp);
  neg(3, 0, hyp);
  return gens;
}

CosetLabel coset_label(const QMatrix& g, Parahoric k, long p, int precision) {
  CosetLabel out;
  for (const auto& b : lattice_chain(k, p)) hnf_append(g * b, p, precision, out);
  return out;
}

long CosetList::find(const QMatrix& g) const {
  CosetLabel l = coset_label(g, level, p, precision);
  auto it = std::lower_bound(labels.begin(), labels.end(), l);
  if (it == labels.end() || *it != l) return -1;
  return it - labels.begin();
}

namespace {

CosetList orbit(Parahoric label_level, const std::vector<QMatrix>& gens, const QMatrix& start, long p,
                int precision) {
  std::map<CosetLabel, QMatrix> seen;
  std::deque<QMatrix> queue;
  seen.emplace(coset_label(start, label_level, p, precision), start);
  queue.push_back(start);
  while (!queue.empty()) {
    QMatrix u = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      QMatrix v = s * u;
      auto l = coset_label(v, label_level, p, precision);
      if (seen.emplace(l, v).second) queue.push_back(v);
    }
  }
  CosetList out;
  out.level = label_level;
  out.p = p;
  out.precision = precision;
  for (auto& [l, m] : seen) {
    out.labels.push_back(l);
    out.reps.push_back(m);
  }
  return out;
}

int default_precision(const QMatrix& g, long p) {
  long m = 0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      if (g(i, j) != 0) m = std::max(m, valuation(g(i, j), p));
  return static_cast<int>(m) + 1;
}

}  // namespace

CosetList enumerate_cosets(Parahoric k, const QMatrix& g, long p, int precision) {
  if (g.size() != group_dim(k)) throw std::invalid_argument("enumerate_cosets: size mismatch");
  if (!g.is_integral(p)) throw PrecisionExceeded("enumerate_cosets needs an integral element");
  if (precision < 0) precision = default_precision(g, p);
  // p^precision L0 must lie in g L for every chain lattice
  if (precision < default_precision(g, p)) throw PrecisionExceeded("precision too small for the elementary divisors");
  return orbit(k, parahoric_generators(k, p), g, p, precision);
}

const CosetList& compact_quotient(Parahoric k, long p) {
  static std::mutex mu;
  static std::map<std::pair<int, long>, CosetList> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(k), p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Parahoric outer = k == Parahoric::GL2Max ? Parahoric::GL2Max : Parahoric::Hyperspecial;
  return cache.emplace(key, orbit(k, parahoric_generators(outer, p), QMatrix::identity(group_dim(k)), p, 1))
      .first->second;
}

namespace {

int rank_mod_p(std::vector<std::vector<long>> a, long p) {
  int rank = 0;
  const size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (size_t c = 0; c < cols && static_cast<size_t>(rank) < rows; ++c) {
    size_t piv = static_cast<size_t>(rank);
    while (piv < rows && a[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[static_cast<size_t>(rank)]);
    long inv = inv_mod(mod_pos(a[static_cast<size_t>(rank)][c], p), p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == static_cast<size_t>(rank)) continue;
      long f = mod_pos(a[i][c] * inv, p);
      for (size_t j = 0; j < cols; ++j) a[i][j] = mod_pos(a[i][j] - f * a[static_cast<size_t>(rank)][j], p);
    }
    ++rank;
  }
  return rank;
}

std::vector<int> column_blocks(Parahoric k) {
  switch (k) {
    case Parahoric::Klingen: return {1};
    case Parahoric::Siegel: return {2};
    case Parahoric::Iwahori: return {1, 2};
    default: return {};
  }
}

std::vector<int> rank_profile(const QMatrix& kmat, Parahoric level, long p) {
  std::vector<int> out;
  const int n = kmat.size();
  for (int j : column_blocks(level))
    for (int i = 1; i < n; ++i) {
      std::vector<std::vector<long>> sub;
      for (int r = i; r < n; ++r) {
        std::vector<long> row;
        for (int c = 0; c < j; ++c) row.push_back(residue(kmat(r, c), p));
        sub.push_back(row);
      }
      out.push_back(rank_mod_p(sub, p));
    }
  return out;
}

}  // namespace

const CellBasis& cell_basis(Parahoric k, long p) {
  static std::mutex mu;
  static std::map<std::pair<int, long>, CellBasis> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({static_cast<int>(k), p});
    if (it != cache.end()) return it->second;
  }
  if (k == Parahoric::GL2Max) throw UnsupportedTag("no cell basis for the GL2 instance");
  CellBasis cb;
  cb.level = k;
  cb.p = p;
  const auto& w = weyl_group();
  for (size_t i = 0; i < w.size(); ++i) {
    auto l = rank_profile(w[i], k, p);
    if (std::find(cb.labels.begin(), cb.labels.end(), l) == cb.labels.end()) {
      cb.labels.push_back(l);
      cb.weyl_rep.push_back(static_cast<int>(i));
    }
  }
  cb.coset_count.assign(cb.size(), 0);
  const CosetList& q = compact_quotient(k, p);
  for (const auto& r : q.reps) {
    auto l = rank_profile(r, k, p);
    auto it = std::find(cb.labels.begin(), cb.labels.end(), l);
    cb.coset_count[static_cast<size_t>(it - cb.labels.begin())] += 1;
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(static_cast<int>(k), p), cb).first->second;
}

int cell_of(const QMatrix& kmat, Parahoric level, long p) {
  const CellBasis& cb = cell_basis(level, p);
  auto l = rank_profile(kmat, level, p);
  auto it = std::find(cb.labels.begin(), cb.labels.end(), l);
  if (it == cb.labels.end()) throw InvariantViolation("cell_of: unknown rank profile");
  return static_cast<int>(it - cb.labels.begin());
}

InducedCharacter InducedCharacter::from_params(const HeckeParams& params) {
  InducedCharacter c;
  c.p = params.p;
  c.chi1 = params.gamma / params.alpha;
  c.chi2 = params.beta / params.alpha;
  c.sigma = params.alpha * Scalar::u_pow(params.p, -params.weight());
  return c;
}

InducedCharacter InducedCharacter::dual() const {
  InducedCharacter c = *this;
  c.chi1 = chi1.inv();
  c.chi2 = chi2.inv();
  c.sigma = sigma.inv();
  return c;
}

Scalar InducedCharacter::value(const TorusExp& t) const {
  return chi1.pow(t.e1) * chi2.pow(t.e2) * sigma.pow(t.e0) * Scalar::u_pow(p, -(4L * t.e1 + 2L * t.e2 - 3L * t.e0));
}

Scalar OperatorSpec::normalization(const HeckeParams& params) const {
  return Scalar::u_pow(params.p, static_cast<long>(u_r1) * params.r1 + static_cast<long>(u_r2) * params.r2);
}

QMatrix OperatorSpec::matrix(long p) const {
  std::vector<mpq_class> d;
  for (int e : diag) {
    mpz_class x;
    mpz_ui_pow_ui(x.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    d.emplace_back(x);
  }
  return QMatrix::diag(d);
}

namespace {

const std::vector<OperatorSpec>& all_specs() {
  using P = Parahoric;
  static const std::vector<OperatorSpec> specs = {
      {"T1", P::Hyperspecial, {1, 1, 0, 0}, 0, 0},  {"T2", P::Hyperspecial, {2, 1, 1, 0}, 0, 0},
      {"Center", P::Hyperspecial, {1, 1, 1, 1}, 0, 0}, {"U1Sieg", P::Siegel, {1, 1, 0, 0}, 1, 1},
      {"U2Kl", P::Klingen, {2, 1, 1, 0}, 2, 0},     {"UKl0", P::Klingen, {1, 1, 1, 1}, 0, 0},
      {"UKl1", P::Klingen, {1, 1, 0, 0}, 1, 1},     {"UKl1p", P::Klingen, {0, 0, 1, 1}, 1, 1},
      {"UKl2", P::Klingen, {2, 1, 1, 0}, 2, 0},     {"UKl2p", P::Klingen, {0, 1, 1, 2}, 2, 0},
      {"U1Iw", P::Iwahori, {1, 1, 0, 0}, 1, 1},     {"U2Iw", P::Iwahori, {2, 1, 1, 0}, 2, 0},
      {"U2pIw", P::Iwahori, {0, 1, 1, 2}, 2, 0},    {"Zp", P::Iwahori, {0, 1, 0, 1}, 1, 1},
      {"Phi", P::Iwahori, {0, 0, 1, 1}, 1, 1},
  };
  return specs;
}

}  // namespace

const OperatorSpec& operator_spec(const std::string& name) {
  for (const auto& s : all_specs())
    if (s.name == name) return s;
  throw UnsupportedTag("unknown operator '" + name + "'");
}

std::vector<std::string> operator_names() {
  std::vector<std::string> out;
  for (const auto& s : all_specs()) out.push_back(s.name);
  return out;
}

const CosetList& operator_cosets(const OperatorSpec& op, long p) {
  static std::mutex mu;
  static std::map<std::pair<std::string, long>, CosetList> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({op.name, p});
    if (it != cache.end()) return it->second;
  }
  CosetList cl = enumerate_cosets(op.level, op.matrix(p), p);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(op.name, p), std::move(cl)).first->second;
}

ScalarMatrix smat_identity(size_t n) {
  ScalarMatrix m(n, std::vector<Scalar>(n, Scalar(0)));
  for (size_t i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

ScalarMatrix smat_mul(const ScalarMatrix& a, const ScalarMatrix& b) {
  const size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  ScalarMatrix r(n, std::vector<Scalar>(m, Scalar(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

ScalarMatrix smat_add(const ScalarMatrix& a, const ScalarMatrix& b, const Scalar& s) {
  ScalarMatrix r = a;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j) r[i][j] += s * b[i][j];
  return r;
}

ScalarMatrix smat_scale(const ScalarMatrix& a, const Scalar& s) {
  ScalarMatrix r = a;
  for (auto& row : r)
    for (auto& x : row) x *= s;
  return r;
}

ScalarMatrix smat_transpose(const ScalarMatrix& a) {
  ScalarMatrix r(a.empty() ? 0 : a[0].size(), std::vector<Scalar>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
  return r;
}

std::vector<Scalar> smat_apply(const ScalarMatrix& a, const std::vector<Scalar>& v) {
  std::vector<Scalar> r(a.size(), Scalar(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (!a[i][j].is_zero() && !v[j].is_zero()) r[i] += a[i][j] * v[j];
  return r;
}

Scalar smat_trace(const ScalarMatrix& a) {
  Scalar t(0);
  for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

bool smat_equal(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != b[i][j]) return false;
  return true;
}

ScalarMatrix double_coset_matrix(const OperatorSpec& op, const InducedCharacter& chi) {
  const long p = chi.p;
  const CellBasis& cb = cell_basis(op.level, p);
  const CosetList& cl = operator_cosets(op, p);
  ScalarMatrix m(cb.size(), std::vector<Scalar>(cb.size(), Scalar(0)));
  std::map<TorusExp, Scalar> values;
  for (size_t y = 0; y < cb.size(); ++y) {
    const QMatrix& wy = weyl_group()[static_cast<size_t>(cb.weyl_rep[y])];
    std::map<std::pair<int, TorusExp>, long> counts;
    for (const auto& u : cl.reps) {
      Iwasawa iw = iwasawa_decompose(wy * u, p);
      int x = cell_of(iw.k, op.level, p);
      counts[{x, iw.torus()}] += 1;
    }
    for (const auto& [key, cnt] : counts) {
      auto it = values.find(key.second);
      if (it == values.end()) it = values.emplace(key.second, chi.value(key.second)).first;
      m[y][static_cast<size_t>(key.first)] += it->second * Scalar(cnt);
    }
  }
  return m;
}

ScalarMatrix hecke_matrix(const std::string& op, const HeckeParams& params) {
  const OperatorSpec& spec = operator_spec(op);
  return smat_scale(double_coset_matrix(spec, InducedCharacter::from_params(params)), spec.normalization(params));
}

bool eigenvalues_match(const ScalarMatrix& m, const std::vector<Scalar>& roots) {
  const size_t n = m.size();
  if (roots.size() != n) return false;
  ScalarMatrix prod = smat_identity(n);
  for (const auto& r : roots) prod = smat_mul(prod, smat_add(m, smat_identity(n), -r));
  if (!smat_equal(prod, ScalarMatrix(n, std::vector<Scalar>(n, Scalar(0))))) return false;
  ScalarMatrix pw = smat_identity(n);
  for (size_t k = 1; k <= n; ++k) {
    pw = smat_mul(pw, m);
    Scalar s(0);
    for (const auto& r : roots) s += r.pow(static_cast<long>(k));
    if (smat_trace(pw) != s) return false;
  }
  return true;
}

std::vector<Scalar> spherical_vector(Parahoric k, long p) {
  return std::vector<Scalar>(cell_basis(k, p).size(), Scalar(1));
}

Scalar trace_to_spherical(const std::vector<Scalar>& v, Parahoric k, long p) {
  const CellBasis& cb = cell_basis(k, p);
  if (v.size() != cb.size()) throw std::invalid_argument("trace_to_spherical: wrong vector size");
  Scalar t(0);
  for (size_t x = 0; x < v.size(); ++x) t += v[x] * Scalar(cb.coset_count[x]);
  return t;
}

std::vector<Scalar> klingen_eigenvector(const HeckeParams& params, bool transposed) {
  const long p = params.p;
  ScalarMatrix u2 = hecke_matrix(transposed ? "UKl2p" : "U2Kl", params);
  Scalar a = params.alpha, b = params.beta, c = params.gamma, d = params.delta();
  Scalar pr = Scalar::p_pow(p, params.r2 + 1);
  std::vector<Scalar> v = spherical_vector(Parahoric::Klingen, p);
  for (const Scalar& x : {c * d / pr, a * c / pr, b * d / pr}) {
    auto w = smat_apply(u2, v);
    for (size_t i = 0; i < v.size(); ++i) v[i] = w[i] - x * v[i];
  }
  Scalar scale = (Scalar(1) + c / a).inv() * (pr / (a * b)).pow(3);
  for (auto& x : v) x *= scale;
  return v;
}

Scalar klingen_trace_formula(const HeckeParams& params) {
  const long p = params.p;
  Scalar a = params.alpha, b = params.beta, c = params.gamma, d = params.delta(), pp = Scalar(p);
  return Scalar::p_pow(p, 3) * (Scalar(1) - c / (pp * b)) * (Scalar(1) - d / (pp * a)) * (Scalar(1) - d / (pp * b));
}

Scalar klingen_trace_alternative(const HeckeParams& params) {
  const long p = params.p;
  Scalar a = params.alpha, b = params.beta, c = params.gamma, d = params.delta(), pp = Scalar(p);
  return Scalar::p_pow(p, 3) * (Scalar(1) - c / b) * (Scalar(1) - d / (pp * a)) * (Scalar(1) - d / (pp * b));
}

DiscriminatorReport genestier_tilouine_discriminator(const HeckeParams& params) {
  DiscriminatorReport r;
  r.enumerated = trace_to_spherical(klingen_eigenvector(params), Parahoric::Klingen, params.p);
  r.residual_main = r.enumerated - klingen_trace_formula(params);
  r.residual_alternative = r.enumerated - klingen_trace_alternative(params);
  r.main_matches = r.residual_main.is_zero();
  r.alternative_matches = r.residual_alternative.is_zero();
  return r;
}

Scalar casselman_shalika_constant(const InducedCharacter& chi) {
  Scalar out(1);
  Scalar pinv = Scalar::p_pow(chi.p, -1);
  for (const TorusExp& c : {TorusExp{1, -1, 0}, TorusExp{0, 1, 0}, TorusExp{1, 1, 0}, TorusExp{1, 0, 0}})
    out *= Scalar(1) - pinv * chi.chi1.pow(c.e1) * chi.chi2.pow(c.e2) * chi.sigma.pow(c.e0);
  return out;
}

bool phi1_trace_check(const HeckeParams& params) {
  const long p = params.p;
  const CellBasis& cb = cell_basis(Parahoric::Klingen, p);
  int id = cell_of(QMatrix::identity(4), Parahoric::Klingen, p);
  std::vector<Scalar> phi1(cb.size(), Scalar(0));
  phi1[static_cast<size_t>(id)] = Scalar::p_pow(p, 3);
  bool trace_ok = trace_to_spherical(phi1, Parahoric::Klingen, p) == Scalar::p_pow(p, 3);
  Scalar a = params.alpha, b = params.beta, c = params.gamma, d = params.delta(), pp = Scalar(p);
  Scalar expect = (Scalar(1) - b / (pp * a)) * (Scalar(1) - c / (pp * b)) * (Scalar(1) - d / (pp * a)) *
                  (Scalar(1) - d / (pp * b));
  return trace_ok && casselman_shalika_constant(InducedCharacter::from_params(params)) == expect;
}

bool serre_transpose_check(const HeckeParams& params) {
  const long p = params.p;
  InducedCharacter chi = InducedCharacter::from_params(params);
  InducedCharacter dual = chi.dual();
  ScalarMatrix a = double_coset_matrix(operator_spec("UKl1"), chi);
  ScalarMatrix b = smat_scale(double_coset_matrix(operator_spec("UKl1p"), dual), dual.value({1, 1, 2}).inv());
  const CellBasis& cb = cell_basis(Parahoric::Klingen, p);
  ScalarMatrix dm(cb.size(), std::vector<Scalar>(cb.size(), Scalar(0)));
  for (size_t i = 0; i < cb.size(); ++i) dm[i][i] = Scalar(cb.coset_count[i]);
  return smat_equal(smat_mul(dm, a), smat_mul(smat_transpose(b), dm));
}

IwahoriIdentityReport iwahori_commutation_identity(const HeckeParams& params) {
  IwahoriIdentityReport r;
  ScalarMatrix z = hecke_matrix("Zp", params), phi = hecke_matrix("Phi", params);
  ScalarMatrix u2 = hecke_matrix("U2pIw", params);
  r.lhs = smat_mul(z, phi);
  r.rhs = smat_scale(u2, Scalar::p_pow(params.p, params.r2 + 1));
  r.holds = smat_equal(r.lhs, r.rhs);
  r.lhs_commutes = smat_equal(smat_mul(u2, z), smat_mul(z, u2)) && smat_equal(smat_mul(u2, phi), smat_mul(phi, u2));
  return r;
}

}  // namespace gsp4
