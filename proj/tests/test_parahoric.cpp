#include <doctest.h>

#include "gsp4/errors.hpp"
#include "gsp4/parahoric.hpp"

using namespace gsp4;

namespace {

HeckeParams quad(long p, int r1, int r2, long a, long b, long c, long d) {
  return HeckeParams::from_quadruple(p, r1, r2, Scalar(a), Scalar(b), Scalar(c), Scalar(d));
}

std::vector<Scalar> u2_roots(const HeckeParams& h) {
  Scalar a = h.alpha, b = h.beta, c = h.gamma, d = h.delta(), pr = Scalar::p_pow(h.p, h.r2 + 1);
  return {a * b / pr, a * c / pr, b * d / pr, c * d / pr};
}

bool commute(const ScalarMatrix& x, const ScalarMatrix& y) { return smat_equal(smat_mul(x, y), smat_mul(y, x)); }

}  // namespace

TEST_CASE("GL2 sanity and flag counts") {
  for (long p : {2L, 3L, 5L}) {
    QMatrix g = QMatrix::diag({mpq_class(p), mpq_class(1)});
    CHECK(enumerate_cosets(Parahoric::GL2Max, g, p).size() == static_cast<size_t>(p + 1));
  }
  CHECK(compact_quotient(Parahoric::Klingen, 2).size() == 15);
  CHECK(compact_quotient(Parahoric::Siegel, 2).size() == 15);
  CHECK(compact_quotient(Parahoric::Iwahori, 2).size() == 45);
  CHECK(compact_quotient(Parahoric::Klingen, 3).size() == 40);
  CHECK(cell_basis(Parahoric::Klingen, 2).size() == 4);
  CHECK(cell_basis(Parahoric::Iwahori, 2).size() == 8);
  long total = 0;
  for (long n : cell_basis(Parahoric::Iwahori, 3).coset_count) total += n;
  CHECK(total == static_cast<long>(compact_quotient(Parahoric::Iwahori, 3).size()));
}

TEST_CASE("coset enumeration") {
  const QMatrix central = QMatrix::diag({2, 2, 2, 2});
  CHECK(enumerate_cosets(Parahoric::Klingen, central, 2).size() == 1);
  CHECK(operator_cosets(operator_spec("T1"), 2).size() == 15);
  CHECK(operator_cosets(operator_spec("T2"), 2).size() == 30);
  CHECK(operator_cosets(operator_spec("U2Kl"), 2).size() == 16);
  CHECK(operator_cosets(operator_spec("UKl2p"), 2).size() == 16);
  CHECK(operator_cosets(operator_spec("U1Sieg"), 2).size() == 8);
  CHECK(operator_cosets(operator_spec("U2Kl"), 3).size() == 81);
  CHECK_THROWS_AS(enumerate_cosets(Parahoric::Klingen, operator_spec("U2Kl").matrix(2), 2, 2), PrecisionExceeded);

  // one extra digit of precision changes nothing
  const QMatrix g = operator_spec("U2Kl").matrix(2);
  auto base = enumerate_cosets(Parahoric::Klingen, g, 2);
  auto finer = enumerate_cosets(Parahoric::Klingen, g, 2, base.precision + 1);
  REQUIRE(base.size() == finer.size());
  for (const auto& u : base.reps) CHECK(finer.find(u) >= 0);
  for (const auto& u : finer.reps) CHECK(base.find(u) >= 0);
  for (size_t i = 0; i < base.size(); ++i)
    for (size_t j = i + 1; j < base.size(); ++j) CHECK(base.find(base.reps[i]) != base.find(base.reps[j]));
}

TEST_CASE("degrees multiply for dominant Iwahori double cosets") {
  OperatorSpec prod{"U1U2Iw", Parahoric::Iwahori, {3, 2, 1, 0}, 0, 0};
  const long p = 2;
  CHECK(operator_cosets(prod, p).size() ==
        operator_cosets(operator_spec("U1Iw"), p).size() * operator_cosets(operator_spec("U2Iw"), p).size());
  auto chi = InducedCharacter::from_params(HeckeParams::symbolic(p, 0, 0));
  CHECK(smat_equal(smat_mul(double_coset_matrix(operator_spec("U1Iw"), chi),
                            double_coset_matrix(operator_spec("U2Iw"), chi)),
                   double_coset_matrix(prod, chi)));
}

TEST_CASE("eigenvalues at p = 2 symbolically") {
  auto h = HeckeParams::symbolic(2, 1, 0);
  Scalar a = h.alpha, b = h.beta, c = h.gamma, d = h.delta();
  CHECK(eigenvalues_match(hecke_matrix("U1Sieg", h), {a, b, c, d}));
  CHECK(eigenvalues_match(hecke_matrix("U2Kl", h), u2_roots(h)));
  CHECK(eigenvalues_match(hecke_matrix("UKl2p", h), u2_roots(h)));
  // the product over beta*gamma is not a root
  Scalar pr = Scalar::p_pow(2, 1);
  CHECK_FALSE(eigenvalues_match(hecke_matrix("U2Kl", h), {a * b / pr, a * c / pr, b * d / pr, b * c / pr}));
  auto z = hecke_matrix("UKl0", h);
  CHECK(smat_equal(z, smat_scale(smat_identity(4), h.chi_pi())));
}

TEST_CASE("eigenvalues at p = 3, 5 on rational points") {
  for (auto h : {quad(3, 1, 0, 1, 5, 2, 10), quad(3, 2, 1, 3, 7, 6, 14), quad(5, 0, 0, 2, 3, 6, 9)}) {
    CHECK(eigenvalues_match(hecke_matrix("U2Kl", h), u2_roots(h)));
    CHECK(eigenvalues_match(hecke_matrix("UKl2p", h), u2_roots(h)));
  }
  auto h = quad(3, 1, 1, 2, 3, 4, 6);
  CHECK(eigenvalues_match(hecke_matrix("U1Sieg", h), h.quadruple()));
}

TEST_CASE("Klingen families commute") {
  auto h = HeckeParams::symbolic(2, 2, 1);
  CHECK(commute(hecke_matrix("UKl1", h), hecke_matrix("UKl2", h)));
  CHECK(commute(hecke_matrix("UKl1p", h), hecke_matrix("UKl2p", h)));
  CHECK(commute(hecke_matrix("UKl0", h), hecke_matrix("UKl1", h)));
  CHECK(serre_transpose_check(h));
  CHECK(serre_transpose_check(quad(3, 1, 0, 1, 5, 2, 10)));
}

TEST_CASE("Klingen trace") {
  for (long p : {2L, 3L}) {
    auto h = HeckeParams::symbolic(p, 1, 0);
    CHECK(trace_to_spherical(spherical_vector(Parahoric::Klingen, p), Parahoric::Klingen, p) ==
          Scalar(static_cast<long>(compact_quotient(Parahoric::Klingen, p).size())));
    auto rep = genestier_tilouine_discriminator(h);
    CHECK(rep.main_matches);
    CHECK_FALSE(rep.alternative_matches);
    CHECK_FALSE(rep.residual_alternative.is_zero());
    CHECK(trace_to_spherical(klingen_eigenvector(h, true), Parahoric::Klingen, p) == rep.enumerated);
  }
  auto spot = genestier_tilouine_discriminator(quad(3, 1, 0, 1, 5, 2, 10));
  CHECK(spot.enumerated == Scalar(mpq_class(-91, 5)));

  // eigenvector for the right eigenvalue
  auto h = HeckeParams::symbolic(2, 2, 1);
  auto v = klingen_eigenvector(h);
  auto uv = smat_apply(hecke_matrix("U2Kl", h), v);
  Scalar ev = u2_roots(h)[0];
  for (size_t i = 0; i < v.size(); ++i) CHECK(uv[i] == ev * v[i]);
}

TEST_CASE("discriminator specializations") {
  // gamma = p beta kills the main form; gamma = beta kills the alternative
  auto h1 = quad(2, 1, 0, 1, 3, 6, 18);
  CHECK(klingen_trace_formula(h1).is_zero());
  CHECK_FALSE(klingen_trace_alternative(h1).is_zero());
  auto h2 = HeckeParams::from_quadruple(2, 1, 0, Scalar(2), Scalar(3), Scalar(3), Scalar(mpq_class(9, 2)));
  CHECK(klingen_trace_alternative(h2).is_zero());
  CHECK_FALSE(klingen_trace_formula(h2).is_zero());
}

TEST_CASE("phi1 trace") {
  CHECK(phi1_trace_check(HeckeParams::symbolic(2, 1, 0)));
  CHECK(phi1_trace_check(quad(3, 1, 0, 1, 5, 2, 10)));
}

TEST_CASE("Iwahori operators") {
  auto h = HeckeParams::symbolic(2, 1, 0);
  auto rep = iwahori_commutation_identity(h);
  CHECK(rep.lhs_commutes);
  CHECK(commute(hecke_matrix("U1Iw", h), hecke_matrix("U2Iw", h)));
  Scalar a = h.alpha, b = h.beta, c = h.gamma, d = h.delta();
  CHECK(eigenvalues_match(hecke_matrix("U1Iw", h), {a, a, b, b, c, c, d, d}));
}
