#pragma once

#include "gsp4/group.hpp"

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace gsp4 {

// Polynomial with rational coefficients in the entries g_ij of an n x n
// matrix (n = 2 or 4).  No relations are imposed among the entries.
class MatrixFunction {
 public:
  using Exps = std::array<std::uint8_t, 16>;

  explicit MatrixFunction(int n = 4) : n_(n) {}
  static MatrixFunction constant(int n, const mpq_class& c);
  static MatrixFunction entry(int n, int i, int j);  // 0-based
  static MatrixFunction monomial(int n, const Exps& e, const mpq_class& c);

  int dim() const { return n_; }
  const std::map<Exps, mpq_class>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  // total degree when homogeneous, nullopt otherwise (and for 0)
  std::optional<int> degree() const;
  // torus weight (first row model): columns 1..4 carry e1, e2, -e2, -e1
  // (GL2: columns carry e1, e2); nullopt unless all terms agree
  std::optional<std::pair<int, int>> weight() const;
  // coefficient of the monomial of `m`, which must be a single term
  mpq_class coefficient_of(const MatrixFunction& m) const;

  MatrixFunction& operator+=(const MatrixFunction& o);
  MatrixFunction& operator-=(const MatrixFunction& o);
  MatrixFunction& operator*=(const mpq_class& c);
  friend MatrixFunction operator+(MatrixFunction x, const MatrixFunction& y) { return x += y; }
  friend MatrixFunction operator-(MatrixFunction x, const MatrixFunction& y) { return x -= y; }
  friend MatrixFunction operator*(const MatrixFunction& x, const MatrixFunction& y);
  friend MatrixFunction operator*(MatrixFunction x, const mpq_class& c) { return x *= c; }
  MatrixFunction pow(int e) const;

  friend bool operator==(const MatrixFunction& x, const MatrixFunction& y) { return x.n_ == y.n_ && x.t_ == y.t_; }
  friend bool operator!=(const MatrixFunction& x, const MatrixFunction& y) { return !(x == y); }
  std::string str() const;

 private:
  void add_term(const Exps& e, const mpq_class& c);
  int n_;
  std::map<Exps, mpq_class> t_;
};

struct LieElement {
  QMatrix x;
  // Lie(GSp4) for the form antidiag(1, 1, -1, -1), or gl2
  bool in_lie_algebra() const;
};

LieElement lie_x12();  // E12 - E34
LieElement lie_x41();  // E41
LieElement lie_x32();  // E32
LieElement lie_gl2_x21();

// (X f)(g) = d/dt f(g exp(tX)) at t = 0
MatrixFunction lie_act(const LieElement& x, const MatrixFunction& f);
MatrixFunction lie_act_pow(const LieElement& x, const MatrixFunction& f, int k);

// Named vectors of the first-row model.
MatrixFunction model_v(int i);        // g_{1i}, i = 1..4
MatrixFunction model_w();             // [12]
MatrixFunction model_w_prime();       // [14] - [23], the zero-weight vector
MatrixFunction model_w_dprime();      // [42]
MatrixFunction model_w_minus();       // [13]
MatrixFunction model_gl2_v();
MatrixFunction model_gl2_w();

// w^{r2-q} w'^q v1^{r1-r2-r} v2^r
MatrixFunction branching_vector(int r1, int r2, int q, int r);

enum class BranchSlot { First, Second };

struct ProjectionResult {
  mpq_class coefficient;  // from the Lie-action expansion
  int index = 0;          // n = 2 r2 - q + r (first) or m = q + r (second)
  mpq_class closed_form;  // (-2)^q / binom(t_i, t)
  bool match() const { return coefficient == closed_form; }
};

inline constexpr int kDefaultDegreeBudget = 8;

// Image of the v^{t1-t} w^t (x) v^{t2} (first slot) or v^{t1} (x) v^{t2-t} w^t
// (second slot) vector in the top graded piece, as a multiple of the basis
// vector of the given index.
ProjectionResult projection_coefficient(int r1, int r2, int q, int r, BranchSlot slot,
                                        int degree_budget = kDefaultDegreeBudget);

// smallest m with X12^{m+1} f = 0
int killing_depth(const MatrixFunction& f, int max_depth = 64);

}  // namespace gsp4
