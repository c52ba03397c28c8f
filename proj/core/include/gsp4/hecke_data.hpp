#pragma once

#include "gsp4/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gsp4 {

enum class ParamMode { Symbolic, Rational };

// Hecke parameters (alpha, beta, gamma, delta) at p; delta is always
// beta*gamma/alpha.
struct HeckeParams {
  Scalar alpha, beta, gamma;
  int r1 = 0, r2 = 0;
  long p = 2;
  ParamMode mode = ParamMode::Symbolic;

  static HeckeParams symbolic(long p, int r1, int r2);
  static HeckeParams rational(long p, int r1, int r2, const Scalar& alpha, const Scalar& beta,
                              const Scalar& gamma);
  // Checks alpha*delta == beta*gamma; throws InvariantViolation otherwise.
  static HeckeParams from_quadruple(long p, int r1, int r2, const Scalar& alpha, const Scalar& beta,
                                    const Scalar& gamma, const Scalar& delta);

  Scalar delta() const { return beta * gamma / alpha; }
  int weight() const { return r1 + r2 + 3; }
  // chi_Pi(p) = alpha*delta / p^w
  Scalar chi_pi() const;
  std::vector<Scalar> quadruple() const { return {alpha, beta, gamma, delta()}; }
  // Rational-mode copy obtained by substituting rationals for a, b, c.
  HeckeParams specialize(const mpq_class& a, const mpq_class& b, const mpq_class& c) const;
  // Same values with the weights replaced.
  HeckeParams with_weights(int r1n, int r2n) const;
};

// Values at p of unramified characters with chi1*chi2 = chi_Pi.
struct TwistData {
  Scalar chi1_p, chi2_p;
  bool constraint_ok = true;

  static TwistData trivial_second(const HeckeParams& params);  // chi2 = 1
  static TwistData from_chi2(const HeckeParams& params, const Scalar& chi2_p);
};

struct Ordinarity {
  bool siegel = false, klingen = false, borel = false;
};

// p-adic valuation of a rational multiple of a power of u; throws SymbolicMode
// for genuinely symbolic input.
mpq_class scalar_valuation(const Scalar& x, long p);

Ordinarity ordinarity(const HeckeParams& params);

// E_p(Pi, n) = (1 - p^n/alpha)(1 - p^n/beta)(1 - gamma/p^{n+1})(1 - delta/p^{n+1})
Scalar euler_factor_E(const HeckeParams& params, long n);
// Same shape with all four parameters divided by chi2(p).
Scalar euler_factor_E_twisted(const HeckeParams& params, const TwistData& twist, long m);

// Throws ParityViolation unless 0 <= q <= r2, 0 <= r <= r1 - r2 and q + r = r2 mod 2.
void check_qr(const HeckeParams& params, int q, int r);

// (-2)^q (-1)^{r2-q+1} (r2-q)!
Scalar theorem_A_numerator(const HeckeParams& params, int q);
Scalar theorem_A_constant(const HeckeParams& params, int q, int r);
// E(Pi,q) E(Pi,r2+1+r) / ((1 - gamma/p^{1+q})(1 - delta/p^{1+q}))
Scalar klingen_testdata_value(const HeckeParams& params, int q, int r);

struct SiegelConstants {
  Scalar E_sieg;
  Scalar C;
};
// Six-factor Siegel Euler factor with r2 -> r2 + n in its last two factors,
// and C_{n,q} = (c1^2 - c1^{-(t1+n)})(c2^2 - c2^{-(t2+n)}) E_sieg / (-2)^q.
Scalar siegel_euler_factor(const HeckeParams& params, int q, int r, int n = 0);
SiegelConstants siegel_euler_and_Cnq(const HeckeParams& params, int q, int r, int n, long c1, long c2);

struct TrivialZeroReport {
  bool ok = true;                     // no parameter equals +-p^n
  std::vector<std::string> failing;   // names of offending parameters
  std::vector<mpq_class> valuations;  // v(alpha), v(beta), v(gamma), v(delta)
  bool lower_pair_bound = false;      // v(alpha), v(beta) <= r2 + 1
  bool upper_pair_bound = false;      // v(gamma), v(delta) >= r1 + 2
};
TrivialZeroReport trivial_zero_check(const HeckeParams& params);

// {alpha, beta, gamma, delta} avoids {1, p, ..., p^{r2+1}} (bijectivity of
// 1 - phi and 1 - p phi on the relevant twists).
bool frobenius_avoids_small_powers(const HeckeParams& params);

}  // namespace gsp4
