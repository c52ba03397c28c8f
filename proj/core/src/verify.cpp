#include "gsp4/verify.hpp"

#include "gsp4/branching.hpp"
#include "gsp4/eisenstein.hpp"
#include "gsp4/errors.hpp"
#include "gsp4/moduli.hpp"
#include "gsp4/parahoric.hpp"
#include "gsp4/schwartz_zeta.hpp"
#include "gsp4/whittaker.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

namespace gsp4 {

namespace {

using Witness = std::vector<std::string>;

struct Admissible {
  int r1, r2, q, r;
};

std::vector<Admissible> admissible(int bound) {
  std::vector<Admissible> out;
  for (int r2 = 0; r2 <= bound; ++r2)
    for (int r1 = r2; r1 + r2 <= bound; ++r1)
      for (int q = 0; q <= r2; ++q)
        for (int r = 0; r <= r1 - r2; ++r)
          if ((q + r - r2) % 2 == 0) out.push_back({r1, r2, q, r});
  return out;
}

std::string tuple_str(const Admissible& w) {
  return "(r1,r2,q,r)=(" + std::to_string(w.r1) + "," + std::to_string(w.r2) + "," + std::to_string(w.q) + "," +
         std::to_string(w.r) + ")";
}

Scalar one_minus(const Scalar& x) { return Scalar(1) - x; }

mpq_class qpow(long b, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
  return mpq_class(r);
}

// nonzero rationals with small height
std::vector<HeckeParams> rational_points(long p, int r1, int r2, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  auto draw = [&] {
    int n = 0;
    while (n == 0) n = num(rng);
    mpq_class x(n, den(rng));
    x.canonicalize();
    return x;
  };
  std::vector<HeckeParams> out;
  while (int(out.size()) < count) {
    mpq_class a = draw(), b = draw(), c = draw();
    if (a + c == 0) continue;
    out.push_back(HeckeParams::rational(p, r1, r2, Scalar(a), Scalar(b), Scalar(c)));
  }
  return out;
}

class Runner {
 public:
  Runner(const VerifyOptions& opt, std::vector<CheckResult>& out) : opt_(opt), out_(out) {}

  // body fills the witness and returns pass/fail; library errors count as failures
  void check(const std::string& name, int criterion, const std::string& anchor,
             const std::function<bool(Witness&)>& body) {
    CheckResult r;
    r.id = name + ".p" + std::to_string(opt_.p);
    r.criterion = criterion;
    r.anchor = anchor;
    auto t0 = std::chrono::steady_clock::now();
    try {
      r.status = body(r.witness) ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const Error& e) {
      r.status = CheckStatus::Fail;
      r.witness.push_back(std::string("error: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.status == CheckStatus::Pass) r.witness.clear();
    out_.push_back(std::move(r));
  }

  void skip(const std::string& name, int criterion, const std::string& anchor, const std::string& why) {
    CheckResult r;
    r.id = name + ".p" + std::to_string(opt_.p);
    r.criterion = criterion;
    r.anchor = anchor;
    r.witness.push_back(why);
    out_.push_back(std::move(r));
  }

  const VerifyOptions& opt() const { return opt_; }
  long p() const { return opt_.p; }
  int samples(int def) const { return opt_.samples > 0 ? opt_.samples : def; }

 private:
  const VerifyOptions& opt_;
  std::vector<CheckResult>& out_;
};

bool in(long p, std::initializer_list<long> ps) { return std::find(ps.begin(), ps.end(), p) != ps.end(); }

// ---------------------------------------------------------------------------

void suite_trace(Runner& R) {
  const char* anchor = "Klingen trace formula";
  if (!in(R.p(), {2, 3})) {
    R.skip("trace.formula", 1, anchor, "defined for p in {2, 3}");
    R.skip("trace.discriminator", 1, anchor, "defined for p in {2, 3}");
    return;
  }
  auto h = HeckeParams::symbolic(R.p(), 1, 0);
  auto rep = genestier_tilouine_discriminator(h);
  R.check("trace.formula", 1, anchor, [&](Witness& w) {
    w = {"enumerated: " + rep.enumerated.str(), "residual: " + rep.residual_main.str()};
    return rep.main_matches && rep.residual_main.is_zero();
  });
  R.check("trace.discriminator", 1, "competing trace formula is rejected", [&](Witness& w) {
    w = {"residual: " + rep.residual_alternative.str()};
    return !rep.alternative_matches && !rep.residual_alternative.is_zero();
  });
}

void suite_eigenvectors(Runner& R) {
  const char* anchor = "eigenvector normalisations at the identity";
  std::vector<HeckeParams> pts;
  if (R.p() == 2)
    pts = {HeckeParams::symbolic(2, 2, 1)};
  else
    pts = rational_points(R.p(), 1, 1, R.samples(20), R.opt().seed);
  using Maker = HeckeCombination (*)(const HeckeParams&);
  const std::pair<const char*, Maker> combos[] = {{"siegel", siegel_eigen_combination},
                                                  {"klingen", klingen_eigen_combination},
                                                  {"iwahori-from-siegel", iwahori_combination_from_siegel},
                                                  {"iwahori-from-klingen", iwahori_combination_from_klingen}};
  for (const auto& [name, make] : combos)
    R.check(std::string("eigenvectors.") + name, 2, anchor, [&](Witness& w) {
      bool ok = true;
      for (const auto& h : pts) {
        Scalar v = evaluate_hecke_translate(h, make(h), {0, 0, 0});
        if (v != Scalar(1)) {
          ok = false;
          w.push_back(h.alpha.str() + ", " + h.beta.str() + ", " + h.gamma.str() + " -> " + v.str());
        }
      }
      return ok;
    });
}

void suite_zeta(Runner& R) {
  const long p = R.p();
  if (!in(p, {2, 3})) {
    R.skip("zeta.siegel", 3, "Siegel zeta closed form", "defined for p in {2, 3}");
    R.skip("zeta.klingen-table", 4, "Klingen zeta ratios", "defined for p in {2, 3}");
    R.skip("zeta.twisted", 5, "twisted zeta orthogonality", "defined for p in {2, 3}");
    return;
  }
  R.check("zeta.siegel", 3, "Siegel zeta closed form", [&](Witness& w) {
    bool ok = true;
    for (const auto& a : admissible(4)) {
      auto h = HeckeParams::symbolic(p, a.r1, a.r2);
      for (const auto& tw : {TwistData::trivial_second(h), TwistData::from_chi2(h, Scalar(mpq_class(-3, 2)))}) {
        Scalar x = siegel_zeta_closed(h, tw, a.q, a.r), y = siegel_zeta_series(h, tw, a.q, a.r);
        if (x != y) {
          ok = false;
          w.push_back(tuple_str(a) + ": " + x.str() + " vs " + y.str());
        }
      }
    }
    return ok;
  });
  R.check("zeta.klingen-table", 4, "Klingen zeta ratios", [&](Witness& w) {
    bool ok = true;
    for (const auto& a : admissible(6)) {
      auto h = HeckeParams::symbolic(p, a.r1, a.r2);
      Scalar pq1 = Scalar::p_pow(p, 1 + a.q);
      Scalar cc = (one_minus(h.gamma / pq1) * one_minus(h.delta() / pq1)).inv();
      const std::pair<SlotTag, SlotTag> slots[] = {
          {SlotTag::Dep, SlotTag::Crit}, {SlotTag::Crit, SlotTag::Dep}, {SlotTag::Dep, SlotTag::Dep}, {SlotTag::Crit, SlotTag::Crit}};
      for (const auto& [s1, s2] : slots) {
        Scalar v = klingen_torus_integral(ZetaRequest::untwisted(h, a.q, a.r, s1, s2));
        Scalar expect = s1 == SlotTag::Crit && s2 == SlotTag::Crit ? cc : Scalar(1);
        if (v != expect) {
          ok = false;
          w.push_back(tuple_str(a) + " " + slot_tag_name(s1) + "x" + slot_tag_name(s2) + ": " + v.str());
        }
      }
    }
    return ok;
  });
  R.check("zeta.twisted", 5, "twisted zeta orthogonality", [&](Witness& w) {
    auto h = HeckeParams::symbolic(p, 1, 1);
    auto chars = dirichlet_characters(p, 2);
    auto base = ZetaRequest::untwisted(h, 1, 0, SlotTag::Dep, SlotTag::Dep);
    bool ok = true;
    auto expect = [&](const ZetaRequest& req, const Scalar& e, const std::string& what) {
      Scalar v = klingen_torus_integral(req);
      if (v != e) {
        ok = false;
        w.push_back(what + ": " + v.str());
      }
    };
    for (const auto& mu1 : chars)
      for (const auto& nu1 : chars) {
        for (const auto& mu2 : chars) {
          auto req = base;
          auto nu2 = (mu1 * nu1 * mu2).inverse();
          req.slot1 = SlotData::dep(mu1, nu1);
          req.slot2 = SlotData::dep(mu2, nu2);
          req.rho = nu1 * nu2;
          expect(req, Scalar(1), "dep x dep");
        }
        auto req = base;
        req.slot1 = SlotData::dep(mu1, nu1);
        req.slot2 = SlotData::crit((mu1 * nu1).inverse());
        req.rho = mu1.inverse();
        expect(req, Scalar(1), "dep x crit");
        for (const auto& nu2 : chars) {
          auto z = base;
          z.slot1 = SlotData::phi_shift_crit(nu1);
          z.slot2 = SlotData::dep((nu1 * nu2).inverse(), nu2);
          z.rho = nu1 * nu2;
          expect(z, Scalar(0), "shifted crit x dep");
        }
      }
    return ok;
  });
}

void suite_eis(Runner& R) {
  const long p = R.p();
  const int N = R.opt().eis_bound, K = R.opt().eis_max_k;
  auto at = [&](const SchwartzFunction& f) { return GlobalSchwartz::spherical(p).with_p(f); };
  auto report = [](Witness& w, bool ok, const std::string& what) {
    if (!ok) w.push_back(what);
    return ok;
  };
  R.check("eis.theta", 8, "theta^{k+1} E = F", [&](Witness& w) {
    bool ok = true;
    for (int k = 0; k <= K; ++k)
      for (bool crit : {false, true}) {
        if (crit && k == 0) continue;  // F_crit is undefined at k = 0
        auto phi = at(crit ? schwartz_crit(p) : schwartz_dep(p));
        auto E = eisenstein_E_padic(k, phi, N);
        for (int i = 0; i <= k; ++i) E = qexp_operator(QExpOp::Theta, E);
        ok &= report(w, E.agrees(eisenstein_F(k, phi, N), N),
                     std::string(crit ? "crit" : "dep") + " k=" + std::to_string(k));
      }
    return ok;
  });
  R.check("eis.up", 8, "U_p eigenvalues of critical and depleted series", [&](Witness& w) {
    bool ok = true;
    for (int k = 1; k <= K; ++k) {
      auto crit = eisenstein_F(k, at(schwartz_crit(p)), N * int(p));
      ok &= report(w, qexp_operator(QExpOp::Up, crit).agrees(scaled(crit, qpow(p, k + 1)), N),
                   "crit k=" + std::to_string(k));
      auto dep = qexp_operator(QExpOp::Up, eisenstein_F(k, at(schwartz_dep(p)), N * int(p)));
      bool zero = true;
      for (int n = 1; n <= N; ++n) zero = zero && dep.a[n].is_zero();
      ok &= report(w, zero, "dep k=" + std::to_string(k));
    }
    return ok;
  });
  R.check("eis.depletion", 8, "depletion identity", [&](Witness& w) {
    bool ok = true;
    for (int k = 1; k <= K; ++k) {
      auto crit = eisenstein_F(k, at(schwartz_crit(p)), N);
      auto dep = eisenstein_F(k, at(schwartz_dep(p)), N);
      auto vp = qexp_operator(QExpOp::DiamondInv, qexp_operator(QExpOp::Vp, crit));
      ok &= report(w, dep.agrees(crit - scaled(vp, qpow(p, k + 1)), N), "k=" + std::to_string(k));
    }
    return ok;
  });
  R.check("eis.family", 8, "family specializations", [&](Witness& w) {
    bool ok = true;
    auto fam = family_qexp({FamilySpec::Kind::TwoParam, GlobalSchwartz::spherical(p), 0}, N);
    for (int k = 0; k <= K; ++k) {
      auto E = specialize_family(fam, WeightPoint::integer(p, 0), WeightPoint::integer(p, -1 - k));
      ok &= report(w, E.agrees(eisenstein_E_padic(k, at(schwartz_dep(p)), N), N), "E_dep k=" + std::to_string(k));
      auto F = specialize_family(fam, WeightPoint::integer(p, k + 1), WeightPoint::integer(p, 0));
      ok &= report(w, F.agrees(eisenstein_F(k, at(schwartz_dep(p)), N), N), "F_dep k=" + std::to_string(k));
    }
    for (int ell : {0, 3}) {
      auto f1 = family_qexp({FamilySpec::Kind::OneParamCritical, GlobalSchwartz::spherical(p), ell}, N);
      if (ell == 0)
        for (int k = 0; k <= K; ++k)
          ok &= report(w,
                       specialize_family(f1, WeightPoint::integer(p, -1 - k))
                           .agrees(eisenstein_E_padic(k, at(schwartz_crit(p)), N), N),
                       "E_crit k=" + std::to_string(k));
      else
        ok &= report(w,
                     specialize_family(f1, WeightPoint::integer(p, 0))
                         .agrees(eisenstein_F(ell - 1, at(schwartz_crit(p)), N), N),
                     "F_crit ell=" + std::to_string(ell));
    }
    return ok;
  });
}

void suite_corr(Runner& R) {
  const long p = R.p();
  const char* anchor = "U2' iota (U_p x U_p) = p <p> Z' iota";
  if (!in(p, {2, 3, 5})) {
    R.skip("corr-identity", 6, anchor, "defined for p in {2, 3, 5}");
    return;
  }
  R.check("corr-identity", 6, anchor, [&](Witness& w) {
    auto sample = p == 2 && R.opt().samples == 0 ? canonical_orbit(2)
                                                 : random_points(p, R.samples(p == 3 ? 10 : 3), R.opt().seed);
    auto rep = verify_correspondence_identity(p, sample);
    for (const auto& pt : rep.points) {
      if (pt.pass) continue;
      w.push_back("point " + pt.point);
      for (const auto& s : pt.lhs) w.push_back("  lhs " + s);
      for (const auto& s : pt.rhs) w.push_back("  rhs " + s);
    }
    w.push_back(std::to_string(rep.points.size()) + " points");
    return rep.all_pass();
  });
}

void suite_branching(Runner& R) {
  for (auto slot : {BranchSlot::First, BranchSlot::Second})
    R.check(slot == BranchSlot::First ? "branching.first" : "branching.second", 7,
            "branching coefficients (-2)^q / binom(t_i, t)", [&](Witness& w) {
              bool ok = true;
              for (int r2 = 0; r2 <= kDefaultDegreeBudget; ++r2)
                for (int r1 = r2; r1 + r2 <= kDefaultDegreeBudget; ++r1)
                  for (int q = 0; q <= r2; ++q)
                    for (int r = 0; r <= r1 - r2; ++r) {
                      auto res = projection_coefficient(r1, r2, q, r, slot);
                      if (!res.match()) {
                        ok = false;
                        w.push_back(tuple_str({r1, r2, q, r}) + ": " + res.coefficient.get_str() + " vs " +
                                    res.closed_form.get_str());
                      }
                    }
              return ok;
            });
}

void suite_constants(Runner& R) {
  const long p = R.p();
  R.check("constants.product", 9, "constant x test data x Euler pair = (-2)^q (-1)^{r2-q+1} (r2-q)!",
          [&](Witness& w) {
            bool ok = true;
            for (const auto& a : admissible(6)) {
              auto h = HeckeParams::symbolic(p, a.r1, a.r2);
              Scalar pq1 = Scalar::p_pow(p, 1 + a.q);
              Scalar ee = one_minus(h.gamma / pq1) * one_minus(h.delta() / pq1);
              Scalar lhs = theorem_A_constant(h, a.q, a.r) * klingen_testdata_value(h, a.q, a.r) * ee;
              mpz_class f;
              mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(a.r2 - a.q));
              mpz_class rhs = f;
              for (int i = 0; i < a.q; ++i) rhs *= -2;
              if ((a.r2 - a.q + 1) % 2) rhs = -rhs;
              if (lhs != Scalar(rhs)) {
                ok = false;
                w.push_back(tuple_str(a) + ": " + lhs.str());
              }
            }
            return ok;
          });
  if (p != 2) {
    R.skip("constants.iwahori-identity", 9, "Z' Phi = p^{r2+1} U'_{Iw,2}", "defined for p = 2");
    return;
  }
  R.check("constants.iwahori-identity", 9, "Z' Phi = p^{r2+1} U'_{Iw,2}", [&](Witness& w) {
    auto rep = iwahori_commutation_identity(HeckeParams::symbolic(2, 1, 0));
    if (!rep.holds) {
      w.push_back("Z' Phi differs from p^{r2+1} U'_{Iw,2}");
      w.push_back("lhs[0][0] = " + rep.lhs[0][0].str());
      w.push_back("rhs[0][0] = " + rep.rhs[0][0].str());
    }
    return rep.holds;
  });
}

void suite_whittaker(Runner& R) {
  const long p = R.p();
  R.check("whittaker.cross-path", 10, "Casselman-Shalika values against the Hecke recursion", [&](Witness& w) {
    std::vector<HeckeParams> pts;
    if (p == 2)
      pts = {HeckeParams::symbolic(2, 2, 1)};
    else
      pts = rational_points(p, 2, 1, R.samples(2), R.opt().seed);
    bool ok = true;
    for (const auto& h : pts) {
      CsRecursion rec(h, 8);
      for (int e1 = -3; e1 <= 3; ++e1)
        for (int e2 = -3; e2 <= 3; ++e2)
          for (int e0 = -3; e0 <= 3; ++e0) {
            TorusExp t{e1, e2, e0};
            Scalar a = cs_value_gsp4(h, t), b = rec.value(t);
            if (a != b) {
              ok = false;
              w.push_back(t.str() + ": " + a.str() + " vs " + b.str());
            }
          }
    }
    return ok;
  });
}

using Suite = void (*)(Runner&);
const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> s = {
      {"trace", suite_trace},         {"eigenvectors", suite_eigenvectors}, {"zeta", suite_zeta},
      {"eis", suite_eis},             {"corr-identity", suite_corr},        {"branching", suite_branching},
      {"constants", suite_constants}, {"whittaker", suite_whittaker}};
  return s;
}

void sort_results(std::vector<CheckResult>& v) {
  std::sort(v.begin(), v.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suites()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt) {
  for (const auto& [name, fn] : suites())
    if (name == suite) {
      std::vector<CheckResult> out;
      Runner R(opt, out);
      fn(R);
      sort_results(out);
      return out;
    }
  throw ConfigError("unknown suite '" + suite + "'");
}

std::vector<CheckResult> run_all_suites(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  Runner R(opt, out);
  for (const auto& [name, fn] : suites()) fn(R);
  sort_results(out);
  return out;
}

}  // namespace gsp4
