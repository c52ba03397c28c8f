#include "gsp4/whittaker.hpp"

#include "gsp4/cyclotomic.hpp"
#include "gsp4/errors.hpp"

#include <mutex>
#include <sstream>
#include <tuple>

namespace gsp4 {

Scalar cs_value_gl2(const HeckeParams& params, int n) {
  if (n < 0) return Scalar(0);
  Scalar s(0);
  for (int k = 0; k <= n; ++k) s += params.alpha.pow(k) * params.beta.pow(n - k);
  return Scalar::u_pow(params.p, -static_cast<long>(n) * (params.r1 + params.r2 + 4)) * s;
}

namespace {

// alpha^{e1+e2-e0} beta^{e0-e2} gamma^{e0-e1}: the dual-torus monomial of t
Scalar dual_monomial(const HeckeParams& h, const TorusExp& t) {
  return h.alpha.pow(t.e1 + t.e2 - t.e0) * h.beta.pow(t.e0 - t.e2) * h.gamma.pow(t.e0 - t.e1);
}

Scalar alternant(const HeckeParams& h, const TorusExp& t) {
  Scalar s(0);
  for (int w = 0; w < 8; ++w) {
    Scalar m = dual_monomial(h, weyl_act(w, t));
    if (weyl_sign(w) > 0)
      s += m;
    else
      s -= m;
  }
  return s;
}

// half-sum of positive roots of the dual group, up to a central shift
constexpr TorusExp kRho{1, 0, -1};

long half_modulus_exp(const TorusExp& t) { return 4L * t.e1 + 2L * t.e2 - 3L * t.e0; }

// Character of highest weight t in the generic parameters a, b, c; a Laurent
// polynomial, so it can be evaluated where the Weyl denominator vanishes.
const Scalar& generic_character(const TorusExp& t, long p) {
  static std::mutex mu;
  static std::map<std::pair<TorusExp, long>, Scalar> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(t, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  HeckeParams g = HeckeParams::symbolic(p, 0, 0);
  return cache.emplace(key, alternant(g, t + kRho) / alternant(g, kRho)).first->second;
}

Scalar character(const HeckeParams& h, const TorusExp& t) {
  const long p = h.p;
  const Scalar& chi = generic_character(t, p);
  if (h.alpha == Scalar::a(p) && h.beta == Scalar::b(p) && h.gamma == Scalar::c(p)) return chi;
  if (chi.den().terms().size() != 1) throw InvariantViolation("character is not a Laurent polynomial");
  const Term& d = chi.den().lead();
  Scalar out(0);
  for (const Term& x : chi.num().terms())
    out += Scalar(mpq_class(x.c)) * h.alpha.pow(x.m.exp(VA) - d.m.exp(VA)) * h.beta.pow(x.m.exp(VB) - d.m.exp(VB)) *
           h.gamma.pow(x.m.exp(VC) - d.m.exp(VC));
  return out / Scalar(mpq_class(d.c));
}

}  // namespace

Scalar cs_value_gsp4(const HeckeParams& params, const TorusExp& t) {
  if (!t.dominant()) return Scalar(0);
  Scalar chi = character(params, t);
  long w = params.weight();
  return Scalar::u_pow(params.p, -half_modulus_exp(t) - w * t.e0) * chi;
}

CsRecursion::CsRecursion(const HeckeParams& params, int bound) : params_(params), bound_(bound) {
  lambda1_ = hecke_matrix("T1", params)[0][0];
  lambda2_ = hecke_matrix("T2", params)[0][0];
  omega_ = hecke_matrix("Center", params)[0][0];
}

CsRecursion::Equation CsRecursion::equation(const OperatorSpec& op, const TorusExp& t) {
  const long p = params_.p;
  std::map<TorusExp, Cyclotomic> acc;
  for (const auto& u : operator_cosets(op, p).reps) {
    Iwasawa iw = iwasawa_decompose(u, p);
    // off the dominant cone the phase depends on the factorization; W vanishes there
    if (!(t + iw.torus()).dominant()) continue;
    mpq_class x = iw.n(0, 1) * Scalar::p_pow(p, t.e1 - t.e2).to_rational() +
                  iw.n(1, 2) * Scalar::p_pow(p, 2 * t.e2 - t.e0).to_rational();
    Frac f = frac_part(x, p);
    long m = 1;
    for (int i = 0; i < f.m; ++i) m *= p;
    auto [it, fresh] = acc.try_emplace(iw.torus(), Cyclotomic(1));
    (void)fresh;
    it->second += Cyclotomic::zeta(static_cast<int>(m), f.a);
  }
  Equation eq;
  for (auto& [tau, z] : acc) {
    if (!z.is_rational()) throw IrrationalResidue("character sum in a Hecke equation is not rational");
    if (z.rational() != 0) eq[tau] = z.rational();
  }
  return eq;
}

Scalar CsRecursion::solve_with(const OperatorSpec& op, const Scalar& eigen, const TorusExp& target) {
  const long p = params_.p;
  TorusExp top = torus_exp_of(p, op.diag);
  TorusExp base = target - top;
  Equation eq = equation(op, base);
  auto it = eq.find(top);
  if (it == eq.end()) throw UnderdeterminedSystem("leading coefficient vanishes");
  Scalar rhs = eigen * value(base);
  for (const auto& [tau, c] : eq)
    if (tau != top) rhs -= Scalar(c) * value(base + tau);
  return rhs / Scalar(it->second);
}

Scalar CsRecursion::value(const TorusExp& t_in) {
  if (!t_in.dominant()) return Scalar(0);
  // shift by the center into e0 in {0, 1}
  int k = t_in.e0 >= 0 ? t_in.e0 / 2 : -((1 - t_in.e0) / 2);
  if (k != 0) return omega_.pow(k) * value(t_in - TorusExp{k, k, 2 * k});
  const TorusExp& t = t_in;
  if (std::abs(t.e1) > bound_ || std::abs(t.e2) > bound_ || std::abs(t.e0) > bound_)
    throw UnderdeterminedSystem("torus point " + t.str() + " outside the recursion box");
  auto it = memo_.find(t);
  if (it != memo_.end()) return it->second;
  Scalar v;
  if (t.central())
    v = Scalar(1);
  else if (2 * t.e2 - t.e0 >= 1)
    v = solve_with(operator_spec("T1"), lambda1_, t);
  else
    v = solve_with(operator_spec("T2"), lambda2_, t);
  memo_.emplace(t, v);
  return v;
}

Scalar CsRecursion::apply_t1(const TorusExp& t) {
  Scalar s(0);
  for (const auto& [tau, c] : equation(operator_spec("T1"), t)) s += Scalar(c) * value(t + tau);
  return s;
}

Scalar cs_recursion_oracle(const HeckeParams& params, const TorusExp& t, int bound) {
  return CsRecursion(params, bound).value(t);
}

HeckeCombination HeckeCombination::identity() {
  HeckeCombination c;
  c.terms.push_back({Scalar(1), {}});
  return c;
}

HeckeCombination HeckeCombination::then(const std::string& op, const Scalar& x) const {
  operator_spec(op);
  HeckeCombination out;
  for (const auto& [c, w] : terms) {
    std::vector<std::string> nw{op};
    nw.insert(nw.end(), w.begin(), w.end());
    out.terms.push_back({c, nw});
    if (!x.is_zero()) out.terms.push_back({-(c * x), w});
  }
  return out;
}

HeckeCombination HeckeCombination::scaled(const Scalar& s) const {
  HeckeCombination out = *this;
  for (auto& t : out.terms) t.first *= s;
  return out;
}

HeckeCombination HeckeCombination::operator+(const HeckeCombination& o) const {
  HeckeCombination out = *this;
  out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
  return out;
}

std::string HeckeCombination::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    os << "(" << terms[i].first.str() << ")[";
    for (size_t j = 0; j < terms[i].second.size(); ++j) os << (j ? " " : "") << terms[i].second[j];
    os << "]";
  }
  return os.str();
}

namespace {

struct Transfer {
  TorusExp tau;
  mpq_class n12, n23;
  long next;
};

Parahoric level_of(const std::string& op) { return operator_spec(op).level; }

// Iwasawa data of k_c u_i for every coset c of G(Z_p)/K_op and every left coset
// u_i of the operator; the compact part is reduced to a coset at next_level.
const std::vector<Transfer>& transfers(const std::string& op, long p, long c, Parahoric next_level) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, long, long, int>, std::vector<Transfer>> cache;
  auto key = std::make_tuple(op, p, c, static_cast<int>(next_level));
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const OperatorSpec& spec = operator_spec(op);
  const CosetList& here = compact_quotient(spec.level, p);
  const CosetList& there = compact_quotient(next_level, p);
  const QMatrix& kc = here.reps[static_cast<size_t>(c)];
  std::vector<Transfer> out;
  for (const auto& u : operator_cosets(spec, p).reps) {
    Iwasawa iw = iwasawa_decompose(kc * u, p);
    QMatrix k = QMatrix::diag(iw.units) * iw.k;
    long nc = there.find(k);
    if (nc < 0) throw InvariantViolation("compact part not found among coset representatives");
    out.push_back({iw.torus(), iw.n(0, 1), iw.n(1, 2), nc});
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(out)).first->second;
}

mpq_class p_power(long p, int e) { return Scalar::p_pow(p, e).to_rational(); }

using Leaves = std::map<TorusExp, Cyclotomic>;

class WordEvaluator {
 public:
  explicit WordEvaluator(long p) : p_(p) {}

  // value of (word w_sph) at t k_c as a combination of spherical values
  const Leaves& eval(const std::vector<std::string>& word, size_t pos, const TorusExp& t, long c) {
    auto key = std::make_tuple(suffix_key(word, pos), t, c);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Leaves out;
    if (pos == word.size()) {
      out.emplace(t, Cyclotomic(1, 1));
    } else {
      Parahoric here = level_of(word[pos]);
      Parahoric next = pos + 1 < word.size() ? level_of(word[pos + 1]) : Parahoric::Hyperspecial;
      if (!parahoric_contained(here, next))
        throw InvariantViolation("operator level " + to_string(here) + " is not inside " + to_string(next));
      mpq_class s12 = p_power(p_, t.e1 - t.e2), s23 = p_power(p_, 2 * t.e2 - t.e0);
      for (const auto& tr : transfers(word[pos], p_, c, next)) {
        Frac f = frac_part(s12 * tr.n12 + s23 * tr.n23, p_);
        long m = 1;
        for (int i = 0; i < f.m; ++i) m *= p_;
        Cyclotomic z = Cyclotomic::zeta(static_cast<int>(m), f.a);
        for (const auto& [leaf, coef] : eval(word, pos + 1, t + tr.tau, tr.next)) {
          auto [jt, fresh] = out.try_emplace(leaf, Cyclotomic(1));
          (void)fresh;
          jt->second += coef * z;
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  static std::string suffix_key(const std::vector<std::string>& word, size_t pos) {
    std::string s;
    for (size_t i = pos; i < word.size(); ++i) s += word[i] + ",";
    return s;
  }

  long p_;
  std::map<std::tuple<std::string, TorusExp, long>, Leaves> memo_;
};

// Parameter-free expansion of a word at t: rational weights of spherical values.
const std::map<TorusExp, mpq_class>& word_table(long p, const std::vector<std::string>& word, const TorusExp& t) {
  static std::mutex mu;
  static std::map<std::tuple<long, std::vector<std::string>, TorusExp>, std::map<TorusExp, mpq_class>> cache;
  auto key = std::make_tuple(p, word, t);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::map<TorusExp, mpq_class> table;
  if (word.empty()) {
    table[t] = 1;
  } else {
    WordEvaluator ev(p);
    const Parahoric first = level_of(word.front());
    long start = compact_quotient(first, p).find(QMatrix::identity(4));
    for (const auto& [leaf, z] : ev.eval(word, 0, t, start)) {
      if (!leaf.dominant()) continue;
      if (!z.is_rational()) throw IrrationalResidue("Hecke translate has an irrational character sum");
      if (z.rational() != 0) table[leaf] = z.rational();
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(table)).first->second;
}

}  // namespace

Scalar evaluate_hecke_translate(const HeckeParams& params, const HeckeCombination& combo, const TorusExp& t) {
  Scalar total(0);
  std::map<TorusExp, Scalar> cs;
  for (const auto& [coef, word] : combo.terms) {
    Scalar norm = coef;
    for (const auto& op : word) norm *= operator_spec(op).normalization(params);
    Scalar s(0);
    for (const auto& [leaf, q] : word_table(params.p, word, t)) {
      auto it = cs.find(leaf);
      if (it == cs.end()) it = cs.emplace(leaf, cs_value_gsp4(params, leaf)).first;
      s += Scalar(q) * it->second;
    }
    total += norm * s;
  }
  return total;
}

HeckeCombination siegel_eigen_combination(const HeckeParams& h) {
  return HeckeCombination::identity()
      .then("U1Sieg", h.delta())
      .then("U1Sieg", h.gamma)
      .then("U1Sieg", h.beta)
      .scaled(h.alpha.pow(-3));
}

HeckeCombination klingen_eigen_combination(const HeckeParams& h) {
  Scalar a = h.alpha, b = h.beta, c = h.gamma, d = h.delta(), pr = Scalar::p_pow(h.p, h.r2 + 1);
  return HeckeCombination::identity()
      .then("U2Kl", b * d / pr)
      .then("U2Kl", a * c / pr)
      .then("U2Kl", c * d / pr)
      .scaled((Scalar(1) + c / a).inv() * (pr / (a * b)).pow(3));
}

HeckeCombination iwahori_combination_from_siegel(const HeckeParams& h) {
  Scalar pr = Scalar::p_pow(h.p, h.r2 + 1);
  return siegel_eigen_combination(h).then("U2Iw", h.alpha * h.gamma / pr).scaled(pr / (h.alpha * h.beta));
}

HeckeCombination iwahori_combination_from_klingen(const HeckeParams& h) {
  return klingen_eigen_combination(h).then("U1Iw", h.beta).scaled(h.alpha.inv());
}

}  // namespace gsp4
