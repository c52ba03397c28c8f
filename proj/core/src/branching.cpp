#include "gsp4/branching.hpp"

#include "gsp4/errors.hpp"

#include <sstream>

namespace gsp4 {

namespace {

int var_index(int n, int i, int j) { return i * n + j; }

mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

mpz_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// det of the 2 x 2 minor of rows 1, 2 and columns a, b (1-based)
MatrixFunction minor12(int a, int b) {
  return MatrixFunction::entry(4, 0, a - 1) * MatrixFunction::entry(4, 1, b - 1) -
         MatrixFunction::entry(4, 0, b - 1) * MatrixFunction::entry(4, 1, a - 1);
}

void check_ranges(int r1, int r2, int q, int r) {
  if (r2 < 0 || r1 < r2 || q < 0 || q > r2 || r < 0 || r > r1 - r2)
    throw RangeViolation("need 0 <= q <= r2 and 0 <= r <= r1 - r2");
}

}  // namespace

MatrixFunction MatrixFunction::constant(int n, const mpq_class& c) {
  MatrixFunction f(n);
  f.add_term(Exps{}, c);
  return f;
}

MatrixFunction MatrixFunction::monomial(int n, const Exps& e, const mpq_class& c) {
  MatrixFunction f(n);
  f.add_term(e, c);
  return f;
}

MatrixFunction MatrixFunction::entry(int n, int i, int j) {
  MatrixFunction f(n);
  Exps e{};
  e[static_cast<std::size_t>(var_index(n, i, j))] = 1;
  f.add_term(e, 1);
  return f;
}

void MatrixFunction::add_term(const Exps& e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

std::optional<int> MatrixFunction::degree() const {
  std::optional<int> d;
  for (const auto& [e, c] : t_) {
    int s = 0;
    for (auto x : e) s += x;
    if (d && *d != s) return std::nullopt;
    d = s;
  }
  return d;
}

std::optional<std::pair<int, int>> MatrixFunction::weight() const {
  static const int w4[4][2] = {{1, 0}, {0, 1}, {0, -1}, {-1, 0}};
  static const int w2[2][2] = {{1, 0}, {0, 1}};
  std::optional<std::pair<int, int>> w;
  for (const auto& [e, c] : t_) {
    std::pair<int, int> s{0, 0};
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        int k = e[static_cast<std::size_t>(var_index(n_, i, j))];
        const int* cw = n_ == 4 ? w4[j] : w2[j];
        s.first += k * cw[0];
        s.second += k * cw[1];
      }
    if (w && *w != s) return std::nullopt;
    w = s;
  }
  return w;
}

mpq_class MatrixFunction::coefficient_of(const MatrixFunction& m) const {
  if (m.t_.size() != 1) throw InvariantViolation("coefficient_of needs a monomial");
  auto it = t_.find(m.t_.begin()->first);
  return it == t_.end() ? mpq_class(0) : it->second / m.t_.begin()->second;
}

MatrixFunction& MatrixFunction::operator+=(const MatrixFunction& o) {
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

MatrixFunction& MatrixFunction::operator-=(const MatrixFunction& o) {
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

MatrixFunction& MatrixFunction::operator*=(const mpq_class& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [e, x] : t_) x *= c;
  return *this;
}

MatrixFunction operator*(const MatrixFunction& x, const MatrixFunction& y) {
  MatrixFunction r(x.n_);
  for (const auto& [ex, cx] : x.t_)
    for (const auto& [ey, cy] : y.t_) {
      MatrixFunction::Exps e;
      for (std::size_t i = 0; i < e.size(); ++i) {
        int s = ex[i] + ey[i];
        if (s > 255) throw DegreeBudgetExceeded("exponent overflow");
        e[i] = static_cast<std::uint8_t>(s);
      }
      r.add_term(e, cx * cy);
    }
  return r;
}

MatrixFunction MatrixFunction::pow(int e) const {
  MatrixFunction r = constant(n_, 1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string MatrixFunction::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.get_str() << ")";
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        int k = it->first[static_cast<std::size_t>(var_index(n_, i, j))];
        if (k == 0) continue;
        os << "*g" << i + 1 << j + 1;
        if (k > 1) os << "^" << k;
      }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

bool LieElement::in_lie_algebra() const {
  if (x.size() == 2) return true;
  if (x.size() != 4) return false;
  const QMatrix& J = symplectic_form();
  QMatrix s = x.transpose() * J;
  QMatrix t = J * x;
  // X^t J + J X = lambda J
  mpq_class lambda = (s(0, 3) + t(0, 3)) / J(0, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (s(i, j) + t(i, j) != lambda * J(i, j)) return false;
  return true;
}

LieElement lie_x12() {
  QMatrix m(4);
  m(0, 1) = 1;
  m(2, 3) = -1;
  return {m};
}

LieElement lie_x41() {
  QMatrix m(4);
  m(3, 0) = 1;
  return {m};
}

LieElement lie_x32() {
  QMatrix m(4);
  m(2, 1) = 1;
  return {m};
}

LieElement lie_gl2_x21() {
  QMatrix m(2);
  m(1, 0) = 1;
  return {m};
}

MatrixFunction lie_act(const LieElement& x, const MatrixFunction& f) {
  const int n = f.dim();
  if (x.x.size() != n) throw InvariantViolation("Lie element of the wrong size");
  MatrixFunction out(n);
  for (const auto& [e, c] : f.terms())
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto idx = static_cast<std::size_t>(var_index(n, i, j));
        if (e[idx] == 0) continue;
        // d/dg_ij, times (gX)_ij = sum_k g_ik X_kj
        for (int k = 0; k < n; ++k) {
          const mpq_class& xk = x.x(k, j);
          if (xk == 0) continue;
          MatrixFunction::Exps d = e;
          --d[idx];
          ++d[static_cast<std::size_t>(var_index(n, i, k))];
          out += MatrixFunction::monomial(n, d, c * e[idx] * xk);
        }
      }
  return out;
}

MatrixFunction lie_act_pow(const LieElement& x, const MatrixFunction& f, int k) {
  MatrixFunction r = f;
  for (int i = 0; i < k && !r.is_zero(); ++i) r = lie_act(x, r);
  return r;
}

MatrixFunction model_v(int i) { return MatrixFunction::entry(4, 0, i - 1); }
MatrixFunction model_w() { return minor12(1, 2); }
MatrixFunction model_w_prime() { return minor12(1, 4) - minor12(2, 3); }
MatrixFunction model_w_dprime() { return minor12(4, 2); }
MatrixFunction model_w_minus() { return minor12(1, 3); }
MatrixFunction model_gl2_v() { return MatrixFunction::entry(2, 0, 0); }
MatrixFunction model_gl2_w() { return MatrixFunction::entry(2, 0, 1); }

MatrixFunction branching_vector(int r1, int r2, int q, int r) {
  check_ranges(r1, r2, q, r);
  return model_w().pow(r2 - q) * model_w_prime().pow(q) * model_v(1).pow(r1 - r2 - r) * model_v(2).pow(r);
}

ProjectionResult projection_coefficient(int r1, int r2, int q, int r, BranchSlot slot, int degree_budget) {
  check_ranges(r1, r2, q, r);
  if (r1 + r2 > degree_budget) throw DegreeBudgetExceeded("r1 + r2 exceeds the degree budget");
  const int t = r2 - q, t1 = r1 - q - r, t2 = r2 - q + r;
  const bool first = slot == BranchSlot::First;
  const int ti = first ? t1 : t2;
  const int index = first ? 2 * r2 - q + r : q + r;

  // image of the lowered vector: (ti - t)!/ti! X^t v^{[q,r]}
  MatrixFunction img = lie_act_pow(first ? lie_x41() : lie_x32(), branching_vector(r1, r2, q, r), t);
  mpq_class scale(factorial(ti - t), factorial(ti));
  scale.canonicalize();
  img *= scale;

  MatrixFunction top = lie_act_pow(lie_x12(), img, index);
  MatrixFunction target = model_v(1).pow(r1 - r2) * model_w_minus().pow(r2);
  // read the coefficient on one monomial of the target, then insist on proportionality
  const auto& lead = *target.terms().begin();
  mpq_class c = 0;
  {
    auto it = top.terms().find(lead.first);
    if (it != top.terms().end()) c = it->second / lead.second;
  }
  if (top != target * c) throw InvariantViolation("top piece is not a multiple of v1^{r1-r2} w_-^{r2}");

  ProjectionResult res;
  res.coefficient = c / mpq_class(factorial(index));
  res.coefficient.canonicalize();
  res.index = index;
  mpz_class sgn = 1;
  for (int i = 0; i < q; ++i) sgn *= -2;
  res.closed_form = mpq_class(sgn, binomial(ti, t));
  res.closed_form.canonicalize();
  return res;
}

int killing_depth(const MatrixFunction& f, int max_depth) {
  if (f.is_zero()) throw InvariantViolation("killing depth of 0");
  MatrixFunction g = f;
  for (int m = 0; m <= max_depth; ++m) {
    g = lie_act(lie_x12(), g);
    if (g.is_zero()) return m;
  }
  throw DegreeBudgetExceeded("killing depth above the search bound");
}

}  // namespace gsp4
