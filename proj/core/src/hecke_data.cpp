#include "gsp4/hecke_data.hpp"

#include "gsp4/errors.hpp"

namespace gsp4 {

HeckeParams HeckeParams::symbolic(long p, int r1, int r2) {
  if (r2 < 0 || r1 < r2) throw RangeViolation("weights must satisfy r1 >= r2 >= 0");
  HeckeParams h;
  h.alpha = Scalar::a(p);
  h.beta = Scalar::b(p);
  h.gamma = Scalar::c(p);
  h.r1 = r1;
  h.r2 = r2;
  h.p = p;
  h.mode = ParamMode::Symbolic;
  return h;
}

HeckeParams HeckeParams::rational(long p, int r1, int r2, const Scalar& alpha, const Scalar& beta,
                                  const Scalar& gamma) {
  if (r2 < 0 || r1 < r2) throw RangeViolation("weights must satisfy r1 >= r2 >= 0");
  if (alpha.is_zero() || beta.is_zero() || gamma.is_zero()) throw DivisionByZero("Hecke parameters must be nonzero");
  HeckeParams h;
  h.alpha = alpha * Scalar::u_pow(p, 0);
  h.beta = beta * Scalar::u_pow(p, 0);
  h.gamma = gamma * Scalar::u_pow(p, 0);
  h.r1 = r1;
  h.r2 = r2;
  h.p = p;
  h.mode = ParamMode::Rational;
  if (h.alpha.depends_on_abc() || h.beta.depends_on_abc() || h.gamma.depends_on_abc())
    throw SymbolicMode("rational parameters must not involve a, b, c");
  return h;
}

HeckeParams HeckeParams::from_quadruple(long p, int r1, int r2, const Scalar& alpha, const Scalar& beta,
                                        const Scalar& gamma, const Scalar& delta) {
  if (alpha * delta != beta * gamma)
    throw InvariantViolation("Hecke parameters violate alpha*delta = beta*gamma");
  return rational(p, r1, r2, alpha, beta, gamma);
}

Scalar HeckeParams::chi_pi() const { return alpha * delta() / Scalar::p_pow(p, weight()); }

HeckeParams HeckeParams::specialize(const mpq_class& a, const mpq_class& b, const mpq_class& c) const {
  return rational(p, r1, r2, alpha.subs_abc(a, b, c), beta.subs_abc(a, b, c), gamma.subs_abc(a, b, c));
}

HeckeParams HeckeParams::with_weights(int r1n, int r2n) const {
  HeckeParams h = *this;
  if (r2n < 0 || r1n < r2n) throw RangeViolation("weights must satisfy r1 >= r2 >= 0");
  h.r1 = r1n;
  h.r2 = r2n;
  return h;
}

TwistData TwistData::trivial_second(const HeckeParams& params) { return from_chi2(params, Scalar(1)); }

TwistData TwistData::from_chi2(const HeckeParams& params, const Scalar& chi2_p) {
  TwistData t;
  t.chi2_p = chi2_p;
  t.chi1_p = params.chi_pi() / chi2_p;
  t.constraint_ok = (t.chi1_p * t.chi2_p == params.chi_pi());
  return t;
}

mpq_class scalar_valuation(const Scalar& x, long p) {
  if (x.depends_on_abc()) throw SymbolicMode("valuation of a symbolic parameter");
  if (x.is_zero()) throw DivisionByZero("valuation of zero");
  if (!x.num().is_monomial()) throw SymbolicMode("valuation needs a rational multiple of a power of u");
  const Term& t = x.num().lead();
  mpq_class c(t.c, x.den().constant_term());
  c.canonicalize();
  mpq_class half(t.m.exp(VU), 2);
  half.canonicalize();
  return mpq_class(valuation(c, p)) + half;
}

Ordinarity ordinarity(const HeckeParams& params) {
  if (params.mode != ParamMode::Rational) throw SymbolicMode("ordinarity needs rational parameters");
  Ordinarity o;
  o.siegel = scalar_valuation(params.alpha, params.p) == 0;
  o.klingen = scalar_valuation(params.alpha * params.beta, params.p) == params.r2 + 1;
  o.borel = o.siegel && o.klingen;
  return o;
}

namespace {

Scalar one_minus(const Scalar& x) { return Scalar(1) - x; }

Scalar four_factor(const std::vector<Scalar>& x, long p, long n) {
  if (x[0].is_zero() || x[1].is_zero()) throw DivisionByZero("alpha or beta vanishes");
  Scalar pn = Scalar::p_pow(p, n), pn1 = Scalar::p_pow(p, n + 1);
  return one_minus(pn / x[0]) * one_minus(pn / x[1]) * one_minus(x[2] / pn1) * one_minus(x[3] / pn1);
}

mpz_class factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

}  // namespace

Scalar euler_factor_E(const HeckeParams& params, long n) { return four_factor(params.quadruple(), params.p, n); }

Scalar euler_factor_E_twisted(const HeckeParams& params, const TwistData& twist, long m) {
  if (twist.chi2_p.is_zero()) throw DivisionByZero("chi2(p) vanishes");
  auto x = params.quadruple();
  for (auto& v : x) v /= twist.chi2_p;
  return four_factor(x, params.p, m);
}

void check_qr(const HeckeParams& params, int q, int r) {
  if (q < 0 || q > params.r2) throw ParityViolation("need 0 <= q <= r2");
  if (r < 0 || r > params.r1 - params.r2) throw ParityViolation("need 0 <= r <= r1 - r2");
  if (((q + r - params.r2) % 2 + 2) % 2 != 0) throw ParityViolation("need q + r = r2 mod 2");
}

Scalar theorem_A_numerator(const HeckeParams& params, int q) {
  mpz_class v = factorial(params.r2 - q);
  mpz_class two;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(q));
  v *= two;
  int sign = (q % 2 == 0 ? 1 : -1) * ((params.r2 - q + 1) % 2 == 0 ? 1 : -1);
  return Scalar(mpz_class(sign * v));
}

Scalar theorem_A_constant(const HeckeParams& params, int q, int r) {
  check_qr(params, q, r);
  Scalar e1 = euler_factor_E(params, q), e2 = euler_factor_E(params, params.r2 + 1 + r);
  if (e1.is_zero() || e2.is_zero()) throw VanishingEulerFactor();
  return theorem_A_numerator(params, q) / (e1 * e2);
}

Scalar klingen_testdata_value(const HeckeParams& params, int q, int r) {
  check_qr(params, q, r);
  Scalar pq1 = Scalar::p_pow(params.p, 1 + q);
  Scalar den = one_minus(params.gamma / pq1) * one_minus(params.delta() / pq1);
  if (den.is_zero()) throw VanishingDenominator();
  return euler_factor_E(params, q) * euler_factor_E(params, params.r2 + 1 + r) / den;
}

Scalar siegel_euler_factor(const HeckeParams& params, int q, int r, int n) {
  const long p = params.p;
  Scalar pq = Scalar::p_pow(p, q), pq1 = Scalar::p_pow(p, q + 1);
  int r2 = params.r2 + n;
  Scalar d = params.delta();
  return one_minus(pq / params.alpha) * one_minus(params.beta / pq1) * one_minus(params.gamma / pq1) *
         one_minus(d / pq1) * one_minus(Scalar::p_pow(p, r2 + r + 1) / params.alpha) *
         one_minus(d / Scalar::p_pow(p, r2 + r + 2));
}

SiegelConstants siegel_euler_and_Cnq(const HeckeParams& params, int q, int r, int n, long c1, long c2) {
  if (c1 <= 1 || c2 <= 1) throw RangeViolation("c1, c2 must exceed 1");
  if (n < 0) throw RangeViolation("n must be non-negative");
  int t1 = params.r1 - q - r, t2 = params.r2 - q + r;
  SiegelConstants out;
  out.E_sieg = siegel_euler_factor(params, q, r, n);
  auto cfac = [](long c, int e) {
    mpq_class c2 = mpq_class(c) * c;
    mpz_class ce;
    mpz_ui_pow_ui(ce.get_mpz_t(), static_cast<unsigned long>(c), static_cast<unsigned long>(std::abs(e)));
    mpq_class inv = e >= 0 ? mpq_class(1, 1) / mpq_class(ce) : mpq_class(ce);
    return Scalar(mpq_class(c2 - inv));
  };
  Scalar m2q = Scalar(-2).pow(q);
  out.C = cfac(c1, t1 + n) * cfac(c2, t2 + n) * out.E_sieg / m2q;
  return out;
}

TrivialZeroReport trivial_zero_check(const HeckeParams& params) {
  if (params.mode != ParamMode::Rational) throw SymbolicMode("trivial_zero_check needs rational parameters");
  TrivialZeroReport rep;
  const char* names[4] = {"alpha", "beta", "gamma", "delta"};
  auto q = params.quadruple();
  for (int i = 0; i < 4; ++i) {
    mpq_class v = scalar_valuation(q[i], params.p);
    rep.valuations.push_back(v);
    // x = +-p^n exactly when x / p^{v} is +-1 (v must be an integer)
    if (v.get_den() == 1) {
      Scalar unit = q[i] / Scalar::p_pow(params.p, v.get_num().get_si());
      if (unit == Scalar(1) || unit == Scalar(-1)) {
        rep.ok = false;
        rep.failing.push_back(names[i]);
      }
    }
  }
  rep.lower_pair_bound = rep.valuations[0] <= params.r2 + 1 && rep.valuations[1] <= params.r2 + 1;
  rep.upper_pair_bound = rep.valuations[2] >= params.r1 + 2 && rep.valuations[3] >= params.r1 + 2;
  return rep;
}

bool frobenius_avoids_small_powers(const HeckeParams& params) {
  for (const auto& x : params.quadruple())
    for (int k = 0; k <= params.r2 + 1; ++k)
      if (x == Scalar::p_pow(params.p, k)) return false;
  return true;
}

}  // namespace gsp4
