#pragma once

#include "gsp4/group.hpp"
#include "gsp4/hecke_data.hpp"
#include "gsp4/parahoric.hpp"
#include "gsp4/scalar.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace gsp4 {

// Spherical Whittaker function of the GL2 principal series attached to
// (alpha, beta) at diag(p^n, 1); zero for n < 0.
Scalar cs_value_gl2(const HeckeParams& params, int n);

// Spherical Whittaker function of the GSp4 principal series at the torus point t,
// normalized to 1 at the identity (Weyl character formula).
Scalar cs_value_gsp4(const HeckeParams& params, const TorusExp& t);

// Second path: the values solved from the eigen-equations of [K diag(p,p,1,1) K],
// [K diag(p^2,p,p,1) K] and the center, with eigenvalues read off the induced
// model.  Memoized; |e1|, |e2|, |e0| must stay within bound.
class CsRecursion {
 public:
  CsRecursion(const HeckeParams& params, int bound);
  Scalar value(const TorusExp& t);
  // sum over the diag(p,p,1,1) cosets of the solved table at t
  Scalar apply_t1(const TorusExp& t);
  const Scalar& t1_eigenvalue() const { return lambda1_; }
  const Scalar& t2_eigenvalue() const { return lambda2_; }
  const Scalar& central_value() const { return omega_; }

 private:
  // coefficient of W(t + tau) in [K g K] W at t, dominant t + tau only
  using Equation = std::map<TorusExp, mpq_class>;
  Equation equation(const OperatorSpec& op, const TorusExp& t);
  Scalar solve_with(const OperatorSpec& op, const Scalar& eigen, const TorusExp& target);

  HeckeParams params_;
  int bound_;
  Scalar lambda1_, lambda2_, omega_;
  std::map<TorusExp, Scalar> memo_;
};

Scalar cs_recursion_oracle(const HeckeParams& params, const TorusExp& t, int bound = 8);

// Linear combination of words in the normalized operators, acting on the
// spherical vector.  A word lists operators outermost first.
struct HeckeCombination {
  std::vector<std::pair<Scalar, std::vector<std::string>>> terms;

  static HeckeCombination identity();
  // (op - x) composed after this
  HeckeCombination then(const std::string& op, const Scalar& x) const;
  HeckeCombination scaled(const Scalar& s) const;
  HeckeCombination operator+(const HeckeCombination& o) const;
  std::string str() const;
};

// (op w)(t) for the combination, evaluated by coset-word expansion through
// the Iwasawa decomposition.  Each operator's level must be contained in the
// level of the operator after it.
Scalar evaluate_hecke_translate(const HeckeParams& params, const HeckeCombination& combo, const TorusExp& t);

// The eigenvector combinations.
HeckeCombination siegel_eigen_combination(const HeckeParams& params);
HeckeCombination klingen_eigen_combination(const HeckeParams& params);
// (1 - alpha gamma / (p^{r2+1} U_{2,Iw})) applied to the Siegel vector
HeckeCombination iwahori_combination_from_siegel(const HeckeParams& params);
// (1 - beta / U_{1,Iw}) applied to the Klingen vector
HeckeCombination iwahori_combination_from_klingen(const HeckeParams& params);

}  // namespace gsp4
