#include <doctest.h>

#include "gsp4/errors.hpp"
#include "gsp4/moduli.hpp"

#include <set>

using namespace gsp4;

namespace {

QVec e4(int i, const mpq_class& s = 1) {
  QVec v(4, 0);
  v[i] = s;
  return v;
}

ModuliPointH basepoint(long p, int precision = 3) {
  Lattice z = Lattice::standard(p, 2, precision);
  return ModuliPointH::make(z, z, {1, 0}, {1, 0}, 1);
}

// swap the two elliptic factors
ModuliPointG swap_factors(const ModuliPointG& x) {
  auto sw = [](const QVec& v) { return QVec{v[2], v[3], v[0], v[1]}; };
  std::vector<QVec> gens;
  for (const auto& b : x.lattice.basis()) gens.push_back(sw(b));
  return ModuliPointG{Lattice::from_generators(x.prime(), 4, gens, x.lattice.precision()),
                      {sw(x.formal[1]), sw(x.formal[0])},
                      sw(x.c)};
}

template <class F>
CycleG map_cycle(const CycleG& c, F f) {
  CycleG out;
  for (const auto& [k, v] : c.points) out.add(f(v.first), v.second);
  return out;
}

}  // namespace

TEST_CASE("lattice canonical forms") {
  const long p = 3;
  Lattice a = Lattice::from_generators(p, 2, {{1, 2}, {0, 3}}, 3);
  Lattice b = Lattice::from_generators(p, 2, {{1, 5}, {2, 7}}, 3);  // same Z_3-span
  CHECK(a == b);
  CHECK(a.contains(QVec{2, 1}));
  CHECK_FALSE(a.contains(QVec{1, 0}));
  CHECK(a.reduce(QVec{mpq_class(7, 9), 3}) == a.reduce(QVec{mpq_class(-2, 9), 1}));
  Lattice big = a.plus({{mpq_class(1, 3), mpq_class(2, 3)}});
  CHECK(a.quotient_invariants(a.plus({{mpq_class(1, 3), 0}})) == std::vector<int>{2});
  CHECK(big.contains(a));
  CHECK(a.quotient_invariants(big) == std::vector<int>{1});
  CHECK(Lattice::standard(p, 2, 3).quotient_invariants(Lattice::standard(p, 2, 3).scaled_by_p(-2)) ==
        std::vector<int>{2, 2});
  CHECK_THROWS_AS(Lattice::from_generators(p, 2, {{mpq_class(1, 81), 0}, {0, 1}}, 3), PrecisionExceeded);
  CHECK_THROWS_AS(Lattice::from_generators(p, 2, {{81, 0}, {0, 1}}, 3), PrecisionExceeded);
}

TEST_CASE("iota_delta and the basepoint") {
  for (long p : {2L, 3L, 5L}) {
    auto g = iota_delta(basepoint(p));
    // C is the graph of alpha: <(e1 + e2)/p>
    QVec c = e4(0, mpq_class(1, p));
    c[2] = mpq_class(1, p);
    CHECK(g.canonical_c() == ModuliPointG{g.lattice, g.formal, c}.canonical_c());
    CHECK(g.formal_lattice().size() == 2);
    CHECK(g.similitude_scale() == 0);
    // scaling the factors scales the point
    auto h = basepoint(p);
    ModuliPointH hp{h.l1.scaled_by_p(1), h.l2.scaled_by_p(1), h.w1, h.w2, QVec{1, 0, 1, 0}};
    auto gp = iota_delta(hp);
    CHECK(gp.lattice == g.lattice.scaled_by_p(1));
    CHECK(gp.similitude_scale() == 2);
  }
}

TEST_CASE("degrees and multiplicative outputs") {
  for (long p : {2L, 3L, 5L}) {
    auto pts = random_points(p, 4, 11);
    pts.push_back(basepoint(p));
    for (const auto& x : pts) {
      auto up = up_boxtimes_up(x);
      CHECK(up.degree() == p * p);
      CHECK(up.points.size() == std::size_t(p * p));
      for (const auto& [k, v] : up.points) {
        CHECK(x.l1.quotient_invariants(v.first.l1) == std::vector<int>{1});
        CHECK(x.l2.quotient_invariants(v.first.l2) == std::vector<int>{1});
      }
      auto g = iota_delta(x);
      auto z = z_prime(g);
      CHECK(z.degree() == p * p);
      for (const auto& [k, v] : z.points) {
        // the new C lies in the formal part of the quotient
        CHECK_NOTHROW(z_prime(v.first));
        CHECK(g.lattice.quotient_invariants(v.first.lattice) == std::vector<int>{1, 1});
      }
      CHECK(u2_prime(g).degree() == p);
      CHECK(g.lattice.quotient_invariants(u2_kernel_lattice(g)) == std::vector<int>{2, 1, 1});
      CHECK(corr_lhs(x).degree() == p * p * p);
      CHECK(corr_rhs(x).degree() == p * p * p);
    }
  }
}

TEST_CASE("Z' at the p = 2 basepoint is symmetric in the factors") {
  auto g = iota_delta(basepoint(2));
  CHECK(swap_factors(g).key() == g.key());
  auto z = z_prime(g);
  CHECK(z.points.size() == 4);
  CHECK(map_cycle(z, swap_factors) == z);
}

TEST_CASE("correspondence identity") {
  SUBCASE("p = 2, full canonical orbit") {
    auto orbit = canonical_orbit(2);
    CHECK(orbit.size() == 90);
    auto rep = verify_correspondence_identity(2, orbit);
    CHECK(rep.all_pass());
    for (const auto& r : rep.points) CHECK(r.lhs_degree == 8);
  }
  SUBCASE("p = 3 random") { CHECK(verify_correspondence_identity(3, random_points(3, 12, 20260)).all_pass()); }
  SUBCASE("p = 5 random") { CHECK(verify_correspondence_identity(5, random_points(5, 4, 20260)).all_pass()); }
  SUBCASE("each Z' point is hit p times") {
    for (long p : {2L, 3L}) {
      auto x = basepoint(p);
      auto lhs = corr_lhs(x);
      CHECK(lhs.points.size() == std::size_t(p * p));
      for (const auto& [k, v] : lhs.points) CHECK(v.second == p);
    }
  }
  SUBCASE("dropping <p> breaks it") {
    auto x = basepoint(3);
    CycleG bad;
    for (const auto& [k, v] : z_prime(iota_delta(x)).points) bad.add(v.first, 3 * v.second);
    CHECK_FALSE(bad == corr_lhs(x));
  }
}

TEST_CASE("composed kernel depends on one class of (a1, a2) only") {
  // alpha(e1) = u e2: K = <c, (f1 + a1 e1 + t (f2 + a2 e2))/p> with t = -1/u, so
  // the class is a1 + a2/u^2; u = 2 at p = 5 is the a1 - a2 law
  const long p = 5;
  for (long u : {1L, 2L}) {
    const long uinv = u == 1 ? 1 : 3, t = p - uinv, cls = uinv * uinv % p;
    Lattice z = Lattice::standard(p, 2, 3);
    auto x = ModuliPointH::make(z, z, {1, 0}, {1, 0}, u);
    std::map<long, std::set<std::string>> by_class;
    auto base = iota_delta(x).lattice;
    for (long a1 = 0; a1 < p; ++a1)
      for (long a2 = 0; a2 < p; ++a2) {
        // f_i + a_i e_i over p, e = formal generator, f = complement
        Lattice l1 = z.plus({{mpq_class(a1, p), mpq_class(1, p)}});
        Lattice l2 = z.plus({{mpq_class(a2, p), mpq_class(1, p)}});
        auto g = iota_delta(ModuliPointH{l1, l2, x.w1, x.w2, x.c});
        Lattice j0 = u2_kernel_lattice(g);
        CHECK(j0.contains(base.scaled_by_p(-1)));
        QVec k2{mpq_class(a1, p), mpq_class(1, p), mpq_class(t * a2, p), mpq_class(t, p)};
        CHECK(j0 == base.plus({x.c, k2}).scaled_by_p(-1));
        by_class[(a1 + cls * a2) % p].insert(j0.str());
      }
    CHECK(by_class.size() == std::size_t(p));
    for (const auto& [d, s] : by_class) CHECK(s.size() == 1);
  }
}

TEST_CASE("<p> commutes with the correspondences") {
  for (long p : {2L, 3L}) {
    for (const auto& x : random_points(p, 3, 5)) {
      auto g = iota_delta(x);
      CHECK(iota_delta(diamond_p(x)).key() == diamond_p(g).key());
      CHECK(z_prime(diamond_p(g)) == map_cycle(z_prime(g), [](const ModuliPointG& y) { return diamond_p(y); }));
      CHECK(u2_prime(diamond_p(g)) == map_cycle(u2_prime(g), [](const ModuliPointG& y) { return diamond_p(y); }));
      CycleH a = up_boxtimes_up(diamond_p(x)), b;
      for (const auto& [k, v] : up_boxtimes_up(x).points) b.add(diamond_p(v.first), v.second);
      CHECK(a == b);
    }
  }
}

TEST_CASE("precision 3 and 4 agree") {
  auto o3 = canonical_orbit(2, 3), o4 = canonical_orbit(2, 4);
  REQUIRE(o3.size() == o4.size());
  for (std::size_t i = 0; i < o3.size(); i += 7) {
    CHECK(corr_lhs(o3[i]) == corr_lhs(o4[i]));
    CHECK(corr_rhs(o3[i]) == corr_rhs(o4[i]));
  }
}

TEST_CASE("arbitrary alpha and formal lines") {
  // alpha(e1) = u e2 for every unit u, formal lines away from the coordinate axes
  for (long p : {3L, 5L}) {
    Lattice z = Lattice::standard(p, 2, 3);
    std::vector<ModuliPointH> pts;
    for (long u = 1; u < p; ++u) pts.push_back(ModuliPointH::make(z, z, {1, 1}, {1, mpq_class(p + 2)}, u));
    CHECK(verify_correspondence_identity(p, pts).all_pass());
  }
}

TEST_CASE("errors") {
  auto g = iota_delta(basepoint(3));
  ModuliPointG bad = g;
  bad.c = e4(1, mpq_class(1, 3));  // not formal
  CHECK_THROWS_AS(z_prime(bad), NonOrdinary);
  CHECK_THROWS_AS(u2_prime(bad), NonOrdinary);
  bad.c = e4(0);  // trivial subgroup
  CHECK_THROWS_AS(z_prime(bad), NonOrdinary);
  auto low = basepoint(3, 1);
  CHECK_THROWS_AS(up_boxtimes_up(low), PrecisionExceeded);
  Lattice z = Lattice::standard(3, 2, 3);
  CHECK_THROWS_AS(ModuliPointH::make(z, z, {1, 0}, {1, 0}, 3), InvariantViolation);
  // failures are reported, not thrown
  ModuliPointH h = basepoint(3);
  h.c = QVec{0, mpq_class(1, 3), 0, 0};
  auto rep = verify_correspondence_identity(3, {h});
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(rep.points[0].lhs.empty());
}
