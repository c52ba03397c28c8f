#include "gsp4/branching.hpp"
#include "gsp4/eisenstein.hpp"
#include "gsp4/errors.hpp"
#include "gsp4/hecke_data.hpp"
#include "gsp4/parahoric.hpp"
#include "gsp4/schwartz_zeta.hpp"
#include "gsp4/verify.hpp"
#include "gsp4/whittaker.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace gsp4;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

mpq_class parse_rational(const std::string& s) {
  mpq_class x;
  if (x.set_str(s, 10) != 0 || x.get_den() == 0) throw ConfigError("not a rational number: '" + s + "'");
  x.canonicalize();
  return x;
}

struct ParamArgs {
  long p = 2;
  int r1 = 0, r2 = 0;
  std::string alpha, beta, gamma;

  void add(CLI::App* app) {
    app->add_option("--p", p, "prime")->check(CLI::IsMember({2, 3, 5, 7, 11, 13}));
    app->add_option("--r1", r1, "weight r1")->check(CLI::NonNegativeNumber);
    app->add_option("--r2", r2, "weight r2")->check(CLI::NonNegativeNumber);
    app->add_option("--alpha", alpha, "rational alpha (default: symbolic)");
    app->add_option("--beta", beta, "rational beta");
    app->add_option("--gamma", gamma, "rational gamma");
  }

  HeckeParams params() const {
    if (r1 < r2) throw ConfigError("need r1 >= r2");
    int given = !alpha.empty() + !beta.empty() + !gamma.empty();
    if (given == 0) return HeckeParams::symbolic(p, r1, r2);
    if (given != 3) throw ConfigError("give all of --alpha, --beta, --gamma or none");
    return HeckeParams::rational(p, r1, r2, Scalar(parse_rational(alpha)), Scalar(parse_rational(beta)),
                                 Scalar(parse_rational(gamma)));
  }
};

json params_json(const HeckeParams& h) {
  return {{"p", h.p},
          {"r1", h.r1},
          {"r2", h.r2},
          {"alpha", h.alpha.str()},
          {"beta", h.beta.str()},
          {"gamma", h.gamma.str()},
          {"delta", h.delta().str()}};
}

std::string cyc_str(const Cyclotomic& c) {
  if (c.is_rational()) return c.rational().get_str();
  std::string s = "[zeta_" + std::to_string(c.order()) + "]";
  for (const auto& x : c.coeffs()) s += " " + x.get_str();
  return s;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_constants(const ParamArgs& pa, int q, int r, const std::string& chi2) {
  auto h = pa.params();
  if (q > h.r2 || r > h.r1 - h.r2) throw ConfigError("need 0 <= q <= r2 and 0 <= r <= r1 - r2");
  json out = {{"schema_version", kSchemaVersion}, {"command", "constants"}, {"params", params_json(h)}, {"q", q}, {"r", r}};
  // parity-dependent values carry an error entry instead
  out["parity_ok"] = (q + r - h.r2) % 2 == 0;
  out["euler_E_q"] = euler_factor_E(h, q).str();
  out["euler_E_r2_1_r"] = euler_factor_E(h, h.r2 + 1 + r).str();
  auto guarded = [](auto f) -> json {
    try {
      return f().str();
    } catch (const Error& e) {
      return json{{"error", e.what()}};
    }
  };
  out["theorem_A_numerator"] = theorem_A_numerator(h, q).str();
  out["theorem_A_constant"] = guarded([&] { return theorem_A_constant(h, q, r); });
  out["klingen_testdata_value"] = guarded([&] { return klingen_testdata_value(h, q, r); });
  out["siegel_euler_factor"] = guarded([&] { return siegel_euler_factor(h, q, r); });
  auto tw = chi2.empty() ? TwistData::trivial_second(h) : TwistData::from_chi2(h, Scalar(parse_rational(chi2)));
  out["twisted_euler_E"] = euler_factor_E_twisted(h, tw, h.r2 + 1 + r).str();
  // both need valuations, i.e. rational parameters
  if (h.mode == ParamMode::Rational) {
    auto ord = ordinarity(h);
    out["ordinarity"] = {{"siegel", ord.siegel}, {"klingen", ord.klingen}, {"borel", ord.borel}};
    auto tz = trivial_zero_check(h);
    out["trivial_zero_check"] = {{"ok", tz.ok}, {"failing", tz.failing}};
  }
  emit(out);
  return 0;
}

int cmd_whittaker(const ParamArgs& pa, int box, bool oracle) {
  auto h = pa.params();
  std::optional<CsRecursion> rec;
  if (oracle) rec.emplace(h, std::max(8, box + 5));
  std::cout << "e1,e2,e0,cs_value" << (oracle ? ",oracle,match" : "") << "\n";
  for (int e1 = -box; e1 <= box; ++e1)
    for (int e2 = -box; e2 <= box; ++e2)
      for (int e0 = -box; e0 <= box; ++e0) {
        TorusExp t{e1, e2, e0};
        Scalar v = cs_value_gsp4(h, t);
        std::cout << e1 << "," << e2 << "," << e0 << ",\"" << v.str() << "\"";
        if (rec) {
          Scalar o = rec->value(t);
          std::cout << ",\"" << o.str() << "\"," << (o == v ? "true" : "false");
        }
        std::cout << "\n";
      }
  return 0;
}

int cmd_hecke_matrix(const ParamArgs& pa, const std::string& op, const std::string& format) {
  auto h = pa.params();
  const auto& spec = operator_spec(op);
  auto m = hecke_matrix(op, h);
  if (format == "csv") {
    for (const auto& row : m) {
      for (size_t j = 0; j < row.size(); ++j) std::cout << (j ? "," : "") << "\"" << row[j].str() << "\"";
      std::cout << "\n";
    }
    return 0;
  }
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.str());
    rows.push_back(r);
  }
  emit({{"schema_version", kSchemaVersion},
        {"command", "hecke-matrix"},
        {"operator", op},
        {"level", to_string(spec.level)},
        {"params", params_json(h)},
        {"size", m.size()},
        {"trace", smat_trace(m).str()},
        {"matrix", rows}});
  return 0;
}

int cmd_zeta_table(long p, int bound, const std::string& format) {
  const std::pair<SlotTag, SlotTag> slots[] = {
      {SlotTag::Dep, SlotTag::Crit}, {SlotTag::Crit, SlotTag::Dep}, {SlotTag::Dep, SlotTag::Dep}, {SlotTag::Crit, SlotTag::Crit}};
  json rows = json::array();
  if (format == "csv") std::cout << "r1,r2,q,r,dep_crit,crit_dep,dep_dep,crit_crit\n";
  for (int r2 = 0; r2 <= bound; ++r2)
    for (int r1 = r2; r1 + r2 <= bound; ++r1)
      for (int q = 0; q <= r2; ++q)
        for (int r = 0; r <= r1 - r2; ++r) {
          if ((q + r - r2) % 2) continue;
          auto h = HeckeParams::symbolic(p, r1, r2);
          std::vector<std::string> vals;
          for (const auto& [a, b] : slots) vals.push_back(klingen_torus_integral(ZetaRequest::untwisted(h, q, r, a, b)).str());
          if (format == "csv") {
            std::cout << r1 << "," << r2 << "," << q << "," << r;
            for (const auto& v : vals) std::cout << ",\"" << v << "\"";
            std::cout << "\n";
          } else {
            rows.push_back({{"r1", r1}, {"r2", r2}, {"q", q}, {"r", r},
                            {"dep_crit", vals[0]}, {"crit_dep", vals[1]}, {"dep_dep", vals[2]}, {"crit_crit", vals[3]}});
          }
        }
  if (format != "csv") emit({{"schema_version", kSchemaVersion}, {"command", "zeta-table"}, {"p", p}, {"rows", rows}});
  return 0;
}

void emit_qexp(const QExpansion& f, const std::string& format, const json& meta) {
  if (format == "csv") {
    std::cout << f.csv();
    return;
  }
  json a = json::array();
  for (const auto& c : f.a) a.push_back(a.empty() && !f.constant_known ? json(nullptr) : json(cyc_str(c)));
  json out = meta;
  out["schema_version"] = kSchemaVersion;
  out["weight"] = f.weight;
  out["constant_known"] = f.constant_known;
  out["diamond"] = f.diamond ? json(cyc_str(*f.diamond)) : json(nullptr);
  out["coefficients"] = a;
  emit(out);
}

SchwartzFunction named_table(const std::string& name, long p) {
  if (name == "sph") return schwartz_sph(p);
  if (name == "crit") return schwartz_crit(p);
  if (name == "dep") return schwartz_dep(p);
  throw ConfigError("unknown table '" + name + "' (sph, crit, dep)");
}

int cmd_eis_qexp(long p, int k, const std::string& phi, const std::string& kind, int N,
                 const std::vector<std::string>& ops, const std::string& format) {
  auto g = GlobalSchwartz::spherical(p).with_p(named_table(phi, p));
  // U_p needs N p coefficients to keep N
  int need = N;
  for (const auto& o : ops)
    if (qexp_op_from_string(o) == QExpOp::Up) need *= int(p);
  QExpansion f;
  if (kind == "F")
    f = eisenstein_F(k, g, need);
  else if (kind == "E")
    f = eisenstein_E_padic(k, g, need);
  else
    throw ConfigError("--kind must be F or E");
  for (const auto& o : ops) f = qexp_operator(qexp_op_from_string(o), f);
  f.a.resize(std::min<size_t>(f.a.size(), size_t(N) + 1));
  emit_qexp(f, format, {{"command", "eis-qexp"}, {"p", p}, {"k", k}, {"phi", phi}, {"kind", kind}, {"ops", ops}});
  return 0;
}

int cmd_family_eval(long p, const std::string& family, int a1, int a2, int ell, int N, const std::string& format) {
  QExpansion f;
  json meta = {{"command", "family-eval"}, {"p", p}, {"family", family}};
  if (family == "two") {
    auto fam = family_qexp({FamilySpec::Kind::TwoParam, GlobalSchwartz::spherical(p), 0}, N);
    f = specialize_family(fam, WeightPoint::integer(p, a1), WeightPoint::integer(p, a2));
    meta["kappa"] = {a1, a2};
  } else if (family == "one") {
    auto fam = family_qexp({FamilySpec::Kind::OneParamCritical, GlobalSchwartz::spherical(p), ell}, N);
    f = specialize_family(fam, WeightPoint::integer(p, a1));
    meta["ell"] = ell;
    meta["kappa"] = a1;
  } else {
    throw ConfigError("--family must be two or one");
  }
  emit_qexp(f, format, meta);
  return 0;
}

int cmd_branching(int r1, int r2, int q, int r, const std::string& slot, int budget) {
  if (slot != "first" && slot != "second") throw ConfigError("--slot must be first or second");
  auto res = projection_coefficient(r1, r2, q, r, slot == "first" ? BranchSlot::First : BranchSlot::Second, budget);
  emit({{"schema_version", kSchemaVersion},
        {"command", "branching"},
        {"tuple", {{"r1", r1}, {"r2", r2}, {"q", q}, {"r", r}}},
        {"slot", slot},
        {"index", res.index},
        {"closed_form", res.closed_form.get_str()},
        {"brute_force", res.coefficient.get_str()},
        {"match", res.match()}});
  return res.match() ? 0 : 1;
}

int cmd_verify(const std::string& suite, const std::vector<long>& primes, int samples, std::uint64_t seed,
               bool timings, const std::string& out_path) {
  json checks = json::array();
  int pass = 0, fail = 0, skipped = 0;
  for (long p : primes) {
    VerifyOptions opt;
    opt.p = p;
    opt.samples = samples;
    opt.seed = seed;
    auto results = suite == "all" ? run_all_suites(opt) : run_suite(suite, opt);
    for (const auto& r : results) {
      json c = {{"id", r.id},
                {"criterion", r.criterion},
                {"anchor", r.anchor},
                {"status", to_string(r.status)},
                {"witness", r.witness}};
      if (timings) c["wall_seconds"] = r.seconds;
      checks.push_back(c);
      (r.status == CheckStatus::Pass ? pass : r.status == CheckStatus::Fail ? fail : skipped)++;
    }
  }
  json report = {{"schema_version", kSchemaVersion},
                 {"command", "verify"},
                 {"suite", suite},
                 {"primes", primes},
                 {"seed", seed},
                 {"samples", samples},
                 {"checks", checks},
                 {"summary", {{"pass", pass}, {"fail", fail}, {"skipped", skipped}}}};
  if (out_path.empty()) {
    emit(report);
  } else {
    std::ofstream os(out_path);
    if (!os) throw ConfigError("cannot write " + out_path);
    os << report.dump(2) << "\n";
    std::cerr << "pass " << pass << ", fail " << fail << ", skipped " << skipped << "\n";
  }
  return fail == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gsp4: exact local computations for GSp4 ordinary data"};
  app.require_subcommand(1);
  std::string format = "json";
  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };

  ParamArgs pa;
  int q = 0, r = 0;
  std::string chi2;
  auto* constants = app.add_subcommand("constants", "Euler factors and constants for (r1, r2, q, r)");
  pa.add(constants);
  constants->add_option("--q", q)->check(CLI::NonNegativeNumber);
  constants->add_option("--r", r)->check(CLI::NonNegativeNumber);
  constants->add_option("--chi2", chi2, "rational chi2(p) for the twisted factor");

  int box = 2;
  bool oracle = false;
  auto* whittaker = app.add_subcommand("whittaker", "spherical Whittaker values on an exponent box (CSV)");
  pa.add(whittaker);
  whittaker->add_option("--box", box, "|e_i| <= box")->check(CLI::Range(0, 6));
  whittaker->add_flag("--oracle", oracle, "also print the recursion oracle");

  std::string op;
  auto* hecke = app.add_subcommand("hecke-matrix", "normalized Hecke operator on parahoric invariants");
  pa.add(hecke);
  hecke->add_option("--op", op, "operator name")->required();
  add_format(hecke);

  long zp = 2;
  int bound = 6;
  auto* zeta = app.add_subcommand("zeta-table", "normalized Klingen zeta ratios");
  zeta->add_option("--p", zp)->check(CLI::IsMember({2, 3, 5}));
  zeta->add_option("--bound", bound, "r1 + r2 <= bound")->check(CLI::Range(0, 8));
  add_format(zeta);

  long ep = 2;
  int k = 2, N = 30;
  std::string phi = "sph", kind = "F";
  std::vector<std::string> ops;
  auto* eis = app.add_subcommand("eis-qexp", "Eisenstein q-expansions");
  eis->add_option("--p", ep)->check(CLI::IsMember({2, 3, 5, 7}));
  eis->add_option("--k", k);
  eis->add_option("--phi", phi, "table at p: sph, crit, dep");
  eis->add_option("--kind", kind, "F or E");
  eis->add_option("--N", N, "truncation")->check(CLI::Range(1, 5000));
  eis->add_option("--op", ops, "operators applied in order: U_p, V_p, diamond, diamond_inv, theta");
  add_format(eis);

  std::string family = "two";
  int a1 = 0, a2 = -1, ell = 0;
  auto* fam = app.add_subcommand("family-eval", "specialize a Eisenstein family");
  fam->add_option("--p", ep)->check(CLI::IsMember({2, 3, 5, 7}));
  fam->add_option("--family", family, "two or one");
  fam->add_option("--a1", a1, "first weight (or the weight of the one-parameter family)");
  fam->add_option("--a2", a2, "second weight");
  fam->add_option("--ell", ell, "fixed exponent of the one-parameter family");
  fam->add_option("--N", N)->check(CLI::Range(1, 5000));
  add_format(fam);

  int br1 = 2, br2 = 1, bq = 0, br = 0, budget = kDefaultDegreeBudget;
  std::string slot = "first";
  auto* branch = app.add_subcommand("branching", "branching coefficient, closed form against Lie-action expansion");
  branch->add_option("--r1", br1);
  branch->add_option("--r2", br2);
  branch->add_option("--q", bq);
  branch->add_option("--r", br);
  branch->add_option("--slot", slot, "first or second");
  branch->add_option("--budget", budget, "degree budget for r1 + r2");

  std::vector<long> primes = {2};
  int samples = 0;
  std::uint64_t seed = 1;
  bool timings = false;
  std::string out_path;
  auto* verify = app.add_subcommand("verify", "run verification suites, JSON report");
  verify->require_subcommand(1);
  std::string suite;
  std::vector<std::string> suite_list = verify_suite_names();
  suite_list.push_back("all");
  for (const auto& name : suite_list) {
    auto* s = verify->add_subcommand(name, "verify " + name);
    s->add_option("--p", primes, "primes")->check(CLI::IsMember({2, 3, 5}));
    s->add_option("--samples", samples, "sample count (0: suite default)")->check(CLI::NonNegativeNumber);
    s->add_option("--seed", seed, "seed for random specializations and sample points");
    s->add_flag("--timings", timings, "include wall times (output is then not reproducible)");
    s->add_option("--out", out_path, "write the report here instead of stdout");
    s->callback([&suite, name] { suite = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*constants) return cmd_constants(pa, q, r, chi2);
    if (*whittaker) return cmd_whittaker(pa, box, oracle);
    if (*hecke) return cmd_hecke_matrix(pa, op, format);
    if (*zeta) return cmd_zeta_table(zp, bound, format);
    if (*eis) return cmd_eis_qexp(ep, k, phi, kind, N, ops, format);
    if (*fam) return cmd_family_eval(ep, family, a1, a2, ell, N, format);
    if (*branch) return cmd_branching(br1, br2, bq, br, slot, budget);
    if (*verify) return cmd_verify(suite, primes, samples, seed, timings, out_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const RangeViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
