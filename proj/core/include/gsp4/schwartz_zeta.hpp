#pragma once

#include "gsp4/cyclotomic.hpp"
#include "gsp4/hecke_data.hpp"
#include "gsp4/scalar.hpp"

#include <string>
#include <vector>

namespace gsp4 {

// Element of Q(zeta_m) tensor the Scalar field: sum_i z^i * c[i].
class CharValue {
 public:
  CharValue() = default;
  CharValue(const Scalar& s);  // NOLINT(implicit)
  CharValue(const Cyclotomic& z, const Scalar& s);

  CharValue& operator+=(const CharValue& o);
  CharValue operator*(const Scalar& s) const;
  CharValue operator*(const Cyclotomic& z) const;
  friend CharValue operator+(CharValue x, const CharValue& y) { return x += y; }

  bool is_zero() const;
  bool is_scalar() const;
  Scalar scalar() const;  // throws IrrationalResidue unless is_scalar
  std::string str() const;

  friend bool operator==(const CharValue& x, const CharValue& y);
  friend bool operator!=(const CharValue& x, const CharValue& y) { return !(x == y); }

 private:
  CharValue lifted(int m) const;

  int m_ = 1;
  std::vector<Scalar> c_{Scalar(0)};
};

// A subset of Q_p in one coordinate: the shell p^e Z_p^x or the ball p^e Z_p.
struct Region {
  bool ball = false;
  int e = 0;
  friend bool operator==(const Region& x, const Region& y) { return x.ball == y.ball && x.e == y.e; }
  friend bool operator<(const Region& x, const Region& y) {
    return x.e != y.e ? x.e < y.e : x.ball < y.ball;
  }
};

// coeff * ch(x in X) ch(y in Y) mu(unit part of x) nu(unit part of y)
struct SchwartzCell {
  Region x, y;
  DirichletChar mu, nu;
  Scalar coeff;
};

// Locally constant compactly supported function on Q_p^2, kept in a
// canonical form: disjoint cells over a common grid of shells ending in a
// tail ball per coordinate, coarsened as far as possible.
class SchwartzFunction {
 public:
  enum class Storage { Phi, PhiPrime };

  explicit SchwartzFunction(long p, Storage storage = Storage::PhiPrime);
  static SchwartzFunction cell(long p, Region x, Region y, const Scalar& coeff = 1,
                               const DirichletChar* mu = nullptr, const DirichletChar* nu = nullptr,
                               Storage storage = Storage::PhiPrime);

  long prime() const { return p_; }
  Storage storage() const { return storage_; }
  const std::vector<SchwartzCell>& cells() const { return cells_; }
  bool is_zero() const { return cells_.empty(); }
  // value at (0, 0); cells with a nontrivial character there count as 0
  Scalar value_at_origin() const;
  // value at (p^i x0, p^j y0) for units x0, y0
  CharValue value(int i, long x0, int j, long y0) const;

  SchwartzFunction& operator+=(const SchwartzFunction& o);
  SchwartzFunction& operator-=(const SchwartzFunction& o);
  SchwartzFunction scaled(const Scalar& s) const;
  friend SchwartzFunction operator+(SchwartzFunction x, const SchwartzFunction& y) { return x += y; }
  friend SchwartzFunction operator-(SchwartzFunction x, const SchwartzFunction& y) { return x -= y; }
  // (x, y) -> f(p^-a x, p^-b y), i.e. ch(A) -> ch((p^a, p^b) A)
  SchwartzFunction dilated(int a, int b) const;
  // drop the cells on which v(x) + v(y) < 0
  SchwartzFunction integral_part() const;

  friend bool operator==(const SchwartzFunction& x, const SchwartzFunction& y);
  friend bool operator!=(const SchwartzFunction& x, const SchwartzFunction& y) { return !(x == y); }
  std::string str() const;

 private:
  friend SchwartzFunction partial_fourier(const SchwartzFunction& f);
  void add_cell(SchwartzCell c);
  void canonicalize();

  long p_;
  Storage storage_;
  std::vector<SchwartzCell> cells_;
};

// Fourier transform in the second variable (additive Haar measure with
// vol(Z_p) = 1); toggles the storage flag.  Nontrivial characters in the
// second variable throw UnsupportedTag.
SchwartzFunction partial_fourier(const SchwartzFunction& f);

// Named Phi' instances.
SchwartzFunction schwartz_sph(long p);
SchwartzFunction schwartz_crit(long p);
SchwartzFunction schwartz_dep(long p);
SchwartzFunction schwartz_dep_twisted(const DirichletChar& mu, const DirichletChar& nu);
SchwartzFunction schwartz_crit_twisted(const DirichletChar& nu);
// ch(pZ_p x Z_p^x) nu(y)
SchwartzFunction schwartz_phi_shift_crit(const DirichletChar& nu);

enum class SchwartzOp { Up, Phi, Diamond, DiamondInv, DiamondInvPhi, OneMinusPhi, CritDepletion };

// The level-p operators transported to Phi' tables, weight k + 2.  U_p is
// taken modulo functions vanishing on {v(x) + v(y) >= 0}, which do not
// contribute to q-expansion coefficients.
SchwartzFunction schwartz_operator(SchwartzOp op, const SchwartzFunction& f, int k = 0);
SchwartzOp schwartz_op_from_string(const std::string& name);

// Local factor at p of the n-th q-expansion coefficient for n = p^e (times a
// prime-to-p unit), e = 0..N: sum over i of p^{i(k+1)} Phi'(p^i, p^{e-i}).
// Untwisted functions only.
std::vector<Scalar> local_coefficients(const SchwartzFunction& f, int k, int N);

// ---------------------------------------------------------------------------

enum class SlotTag { Sph, Crit, Dep, PhiShiftCrit };

struct SlotData {
  SlotTag tag = SlotTag::Dep;
  DirichletChar mu, nu;  // trivial unless twisted; mu is used by Dep only
  Scalar scale = 1;

  static SlotData make(SlotTag tag, long p);
  static SlotData dep(const DirichletChar& mu, const DirichletChar& nu);
  static SlotData crit(const DirichletChar& nu);
  static SlotData phi_shift_crit(const DirichletChar& nu);
  // restriction to Z_p^x of the character the slot's section is built with
  DirichletChar unit_character() const;
  std::string name() const;
};

SlotTag slot_tag_from_string(const std::string& s);
std::string slot_tag_name(SlotTag t);
// The Phi' table of a slot, including its scale.
SchwartzFunction slot_schwartz(const SlotData& slot);

// W^Phi(diag(p^n x0, 1), s) for the slot's section, s = two_s / 2, from the
// case analysis of the named test data.  chi_p is the unramified value chi(p)
// (it matters for Sph only).
CharValue section_whittaker_value(const SlotData& slot, const Scalar& chi_p, int two_s, int n, long x0 = 1);

// Same value computed from a Phi' table by the torus integral
// |x|^s int Phi'(-xt, -1/t) chi(t) |t|^{2s} d^x t, with chi = chi_p on p and
// chi_units on Z_p^x.
CharValue whittaker_from_table(const SchwartzFunction& f, const Scalar& chi_p, const DirichletChar& chi_units,
                               int two_s, int n, long x0 = 1);

struct ZetaRequest {
  HeckeParams params;
  TwistData twist;
  int q = 0, r = 0;
  SlotData slot1, slot2;
  DirichletChar rho;

  static ZetaRequest untwisted(const HeckeParams& params, int q, int r, SlotTag s1, SlotTag s2);
  bool ramified() const;
};

// int over Q_p^x of w_tau(x) W1(x) W2(x) theta(x) rho(x) / |x| d^x x, with
// w_tau the normalized GL2 spherical function of (alpha, beta) and
// theta(p) = gamma / alpha.  Equals the normalized ratio
// Z~ / (E(pi, q) E(pi x chi2^-1, r2+1+r)).
Scalar klingen_torus_integral(const ZetaRequest& req);
// E(pi, q) E(pi x chi2^-1, r2+1+r) times the torus integral; unramified
// characters only (UnsupportedLocalDatum otherwise).
Scalar klingen_zeta(const ZetaRequest& req);
// The factor E(pi, q) E(pi x chi2^-1, r2+1+r) on its own.
Scalar klingen_euler_prefactor(const ZetaRequest& req);

// Closed six-factor form for the Siegel vector and Siegel test data.
Scalar siegel_zeta_closed(const HeckeParams& params, const TwistData& twist, int q, int r);
// Second path: F_w(X) of the Siegel vector from F of the spherical vector via
// the shift relation, evaluated at X = p^{-1-q}.
Scalar siegel_zeta_series(const HeckeParams& params, const TwistData& twist, int q, int r, int N = 8);
// Both paths; throws InvariantViolation if they disagree.
Scalar siegel_zeta(const HeckeParams& params, const TwistData& twist, int q, int r);

struct ZtildeNormalization {
  Scalar inv_L_sum;   // 1 / L(pi, s1 + s2 - 1/2)
  Scalar inv_L_diff;  // 1 / L(pi x chi2^-1, s1 - s2 + 1/2)
};
ZtildeNormalization ztilde_normalization(const HeckeParams& params, const TwistData& twist, int q, int r);

}  // namespace gsp4
