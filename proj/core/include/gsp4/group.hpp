#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <string>
#include <vector>

namespace gsp4 {

// Square matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(int n) : n_(n), a_(static_cast<size_t>(n * n)) {}
  QMatrix(int n, std::initializer_list<long> rows);

  static QMatrix identity(int n);
  static QMatrix diag(const std::vector<mpq_class>& d);

  int size() const { return n_; }
  mpq_class& operator()(int i, int j) { return a_[static_cast<size_t>(i * n_ + j)]; }
  const mpq_class& operator()(int i, int j) const { return a_[static_cast<size_t>(i * n_ + j)]; }

  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator*(const mpq_class& s) const;
  QMatrix transpose() const;
  QMatrix inverse() const;  // throws DivisionByZero if singular
  mpq_class det() const;
  bool is_upper_triangular() const;
  bool is_diagonal() const;
  // All entries in Z_(p).
  bool is_integral(long p) const;
  friend bool operator==(const QMatrix& x, const QMatrix& y) = default;
  std::string str() const;

 private:
  int n_ = 0;
  std::vector<mpq_class> a_;
};

// Torus diag(p^e1, p^e2, p^{e0-e2}, p^{e0-e1}); e0 is the similitude exponent.
struct TorusExp {
  int e1 = 0, e2 = 0, e0 = 0;
  bool dominant() const { return e1 >= e2 && 2 * e2 >= e0; }
  bool central() const { return e1 == e2 && 2 * e2 == e0; }
  TorusExp operator+(const TorusExp& o) const { return {e1 + o.e1, e2 + o.e2, e0 + o.e0}; }
  TorusExp operator-(const TorusExp& o) const { return {e1 - o.e1, e2 - o.e2, e0 - o.e0}; }
  auto operator<=>(const TorusExp&) const = default;
  std::string str() const;
};

// The symplectic form antidiag(1, 1, -1, -1).
const QMatrix& symplectic_form();
QMatrix torus_matrix(long p, const TorusExp& t);
// Diagonal GSp4 matrix with p-power entries (a, b, c, d), ad = bc.
TorusExp torus_exp_of(long p, const std::array<int, 4>& exps);

// nu with g J g^t = nu J, or nullopt-like zero when g is not a similitude.
mpq_class similitude_factor(const QMatrix& g);
bool is_gsp4(const QMatrix& g);
// g in GSp4(Z_p): integral with unit similitude.
bool in_gsp4_zp(const QMatrix& g, long p);

// Root elements I + c X for the root vectors X of sp4.  Upper: (0,1), (0,2),
// (0,3), (1,2); lower: (1,0), (2,0), (3,0), (2,1), keyed by the primary entry.
QMatrix root_element(int i, int j, const mpq_class& c);

// The eight signed permutation matrices realizing the Weyl group.
const std::vector<QMatrix>& weyl_group();
// Action of the Weyl group on torus exponents; same order as weyl_group().
TorusExp weyl_act(int w, const TorusExp& t);
int weyl_sign(int w);

// Q_p / Z_p element a / p^m in canonical form (0 <= a < p^m, p does not divide a
// unless m = 0).
struct Frac {
  long a = 0;
  int m = 0;
  auto operator<=>(const Frac&) const = default;
};
Frac frac_part(const mpq_class& x, long p);
Frac frac_add(const Frac& x, const Frac& y, long p);

struct Iwasawa {
  QMatrix n;                    // upper unipotent
  std::vector<int> exps;        // p-adic valuations of the diagonal
  std::vector<mpq_class> units; // unit parts of the diagonal
  QMatrix k;                    // in G(Z_p)
  TorusExp torus() const;       // GSp4 only
};

// g = n * diag(p^exps * units) * k.  Works for GSp4 (4x4) and GL2 (2x2).
// Throws PrecisionExceeded when an entry has valuation below -precision.
Iwasawa iwasawa_decompose(const QMatrix& g, long p, int precision = 64);

// Generic character argument n_{12} + n_{23} of the unipotent part (GSp4) or
// n_{12} (GL2), as an element of Q_p / Z_p.
Frac generic_phase(const QMatrix& n, long p);

}  // namespace gsp4
