#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gsp4 {

using QVec = std::vector<mpq_class>;

// Z_p-lattice of full rank in Q_p^n spanned by vectors of Z[1/p]^n, kept as
// the upper-triangular Hermite basis of L ∩ Z[1/p]^n.  `precision` P bounds
// p^P Z_p^n ⊂ L ⊂ p^-P Z_p^n (PrecisionExceeded otherwise).
class Lattice {
 public:
  Lattice() = default;
  static Lattice from_generators(long p, int n, const std::vector<QVec>& gens, int precision);
  static Lattice standard(long p, int n, int precision);

  long prime() const { return p_; }
  int dim() const { return n_; }
  int precision() const { return prec_; }
  const std::vector<QVec>& basis() const { return b_; }

  bool contains(const QVec& v) const;
  // canonical representative of v + L
  QVec reduce(const QVec& v) const;
  // coordinates of v in the Hermite basis
  QVec coordinates(const QVec& v) const;
  Lattice plus(const std::vector<QVec>& gens) const;
  Lattice scaled_by_p(int k) const;  // p^k L
  bool contains(const Lattice& o) const;
  // elementary divisor exponents of o/this for o ⊃ this, descending
  std::vector<int> quotient_invariants(const Lattice& o) const;

  friend bool operator==(const Lattice& x, const Lattice& y) { return x.b_ == y.b_; }
  std::string str() const;

 private:
  long p_ = 2;
  int n_ = 0;
  int prec_ = 3;
  std::vector<QVec> b_;
};

// Point of the Klingen-level ordinary locus: Tate lattice L ⊂ Q_p^4 with the
// pairing x1 y1' - y1 x1' + x2 y2' - y2 x2', formal subspace W (the formal
// part is M = L ∩ W) and an order-p subgroup C = <c> of (p^-1 M + L)/L.
struct ModuliPointG {
  Lattice lattice;
  std::vector<QVec> formal;  // two vectors spanning W
  QVec c;

  long prime() const { return lattice.prime(); }
  // canonical generator of C; L, W and this generator determine the point
  QVec canonical_c() const;
  std::string key() const;
  // smallest s with pairing(L, L) ⊂ p^s Z_p
  int similitude_scale() const;
  std::vector<QVec> formal_lattice() const;  // Z_p-basis of M
};

// Point of the diagonal H-level locus: lattices L1, L2 ⊂ Q_p^2, formal lines
// w1, w2, and the graph generator c = (m1 + u m2)/p of alpha.
struct ModuliPointH {
  Lattice l1, l2;
  QVec w1, w2;
  QVec c;  // in Q_p^4 = V1 + V2

  long prime() const { return l1.prime(); }
  std::string key() const;
  // alpha(m1) = u m2 on the formal p-torsion, for the canonical generators m_i
  static ModuliPointH make(const Lattice& l1, const Lattice& l2, const QVec& w1, const QVec& w2, long u);
};

template <class Point>
struct Cycle {
  std::map<std::string, std::pair<Point, long>> points;
  void add(const Point& x, long mult = 1);
  long degree() const;
  Cycle scaled(long k) const;
  friend bool operator==(const Cycle& a, const Cycle& b) {
    if (a.points.size() != b.points.size()) return false;
    for (auto ia = a.points.begin(), ib = b.points.begin(); ia != a.points.end(); ++ia, ++ib)
      if (ia->first != ib->first || ia->second.second != ib->second.second) return false;
    return true;
  }
  std::vector<std::string> dump() const;
};
using CycleG = Cycle<ModuliPointG>;
using CycleH = Cycle<ModuliPointH>;

CycleH up_boxtimes_up(const ModuliPointH& x);
ModuliPointG iota_delta(const ModuliPointH& x);
CycleG z_prime(const ModuliPointG& x);
CycleG u2_prime(const ModuliPointG& x);
ModuliPointG diamond_p(const ModuliPointG& x);
ModuliPointH diamond_p(const ModuliPointH& x);
// the (p^2, p, p) subgroup used by U2', as the lattice L + J0
Lattice u2_kernel_lattice(const ModuliPointG& x);

// U2' o iota o (U_p x U_p) and p <p> Z' o iota
CycleG corr_lhs(const ModuliPointH& x);
CycleG corr_rhs(const ModuliPointH& x);

struct CorrPointReport {
  std::string point;
  bool pass = false;
  long lhs_degree = 0, rhs_degree = 0;
  std::vector<std::string> lhs, rhs;  // filled on failure
};

struct CorrReport {
  long p = 2;
  std::vector<CorrPointReport> points;
  bool all_pass() const;
};

CorrReport verify_correspondence_identity(long p, const std::vector<ModuliPointH>& sample);

// Every point with L1, L2 between Z_p^2 and p^-1 Z_p^2 of equal index, every
// pair of formal lines from the p + 1 reductions, and every alpha.
std::vector<ModuliPointH> canonical_orbit(long p, int precision = 3);
// Random points: lattices g Z_p^2 with small exponents, formal lines (1, x)
// with x < p^2, random alpha.
std::vector<ModuliPointH> random_points(long p, int count, std::uint64_t seed, int precision = 4);

}  // namespace gsp4
