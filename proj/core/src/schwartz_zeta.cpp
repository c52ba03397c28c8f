#include "gsp4/schwartz_zeta.hpp"

#include "gsp4/errors.hpp"
#include "gsp4/series.hpp"
#include "gsp4/whittaker.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

namespace gsp4 {

namespace {

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Scalar one_minus(const Scalar& x) { return Scalar(1) - x; }

}  // namespace

// ---------------------------------------------------------------------------
// CharValue

CharValue::CharValue(const Scalar& s) : c_{s} {}

CharValue::CharValue(const Cyclotomic& z, const Scalar& s) : m_(z.order()) {
  c_.clear();
  for (const auto& x : z.coeffs()) c_.push_back(Scalar(x) * s);
}

CharValue CharValue::lifted(int m) const {
  if (m == m_) return *this;
  CharValue r;
  r.m_ = m;
  r.c_.assign(Cyclotomic(m).coeffs().size(), Scalar(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    const auto& z = Cyclotomic::zeta(m_, long(i)).lift(m).coeffs();
    for (std::size_t j = 0; j < z.size(); ++j)
      if (z[j] != 0) r.c_[j] += Scalar(z[j]) * c_[i];
  }
  return r;
}

CharValue& CharValue::operator+=(const CharValue& o) {
  int m = std::lcm(m_, o.m_);
  CharValue a = lifted(m), b = o.lifted(m);
  for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return *this = a;
}

CharValue CharValue::operator*(const Scalar& s) const {
  CharValue r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

CharValue CharValue::operator*(const Cyclotomic& z) const {
  int m = std::lcm(m_, z.order());
  Cyclotomic zl = z.lift(m);
  CharValue r;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) r += CharValue(Cyclotomic::zeta(m_, long(i)).lift(m) * zl, c_[i]);
  return r;
}

bool CharValue::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Scalar& x) { return x.is_zero(); });
}

bool CharValue::is_scalar() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Scalar& x) { return x.is_zero(); });
}

Scalar CharValue::scalar() const {
  if (!is_scalar()) throw IrrationalResidue("character value is not in the base field: " + str());
  return c_[0];
}

std::string CharValue::str() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[i].str() + ")";
    if (i > 0) s += "*z" + std::to_string(m_) + "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

bool operator==(const CharValue& x, const CharValue& y) {
  int m = std::lcm(x.m_, y.m_);
  CharValue a = x.lifted(m), b = y.lifted(m);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// SchwartzFunction

namespace {

// character at its conductor with the order shrunk to the true order
DirichletChar minimal(const DirichletChar& c) {
  if (c.is_trivial()) return DirichletChar::trivial(c.p);
  int t = c.conductor_exponent();
  DirichletChar r;
  r.p = c.p;
  r.t = t;
  long M = ipow(c.p, t);
  r.exps.assign(c.exps.begin(), c.exps.begin() + M);
  int g = c.order;
  for (int e : r.exps)
    if (e > 0) g = std::gcd(g, e);
  for (int& e : r.exps)
    if (e > 0) e /= g;
  r.order = c.order / g;
  return r;
}

using CharKey = std::tuple<int, int, std::vector<int>>;
CharKey char_key(const DirichletChar& c) { return {c.t, c.order, c.exps}; }

struct CellKey {
  Region x, y;
  CharKey mu, nu;
  bool operator<(const CellKey& o) const { return std::tie(x, y, mu, nu) < std::tie(o.x, o.y, o.mu, o.nu); }
  bool operator==(const CellKey& o) const { return !(*this < o) && !(o < *this); }
};

struct Table {
  std::map<CellKey, Scalar> coeff;
  std::map<CharKey, DirichletChar> chars;

  void add(const Region& x, const Region& y, const DirichletChar& mu, const DirichletChar& nu, const Scalar& c) {
    if (c.is_zero()) return;
    DirichletChar m = minimal(mu), n = minimal(nu);
    CharKey km = char_key(m), kn = char_key(n);
    chars.emplace(km, m);
    chars.emplace(kn, n);
    auto [it, fresh] = coeff.emplace(CellKey{x, y, km, kn}, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) coeff.erase(it);
    }
  }
};

// top of the grid in one coordinate: every ball lower than this is split
int grid_top(const std::map<CellKey, Scalar>& cells, bool xcoord) {
  int M = std::numeric_limits<int>::min();
  for (const auto& [k, c] : cells) {
    const Region& g = xcoord ? k.x : k.y;
    M = std::max(M, g.ball ? g.e : g.e + 1);
  }
  return M;
}

Table refine(const Table& t, bool xcoord, int M) {
  Table r;
  r.chars = t.chars;
  for (const auto& [k, c] : t.coeff) {
    const Region& g = xcoord ? k.x : k.y;
    const DirichletChar& mu = t.chars.at(k.mu);
    const DirichletChar& nu = t.chars.at(k.nu);
    std::vector<Region> pieces;
    if (g.ball && g.e < M) {
      for (int e = g.e; e < M; ++e) pieces.push_back({false, e});
      pieces.push_back({true, M});
    } else {
      pieces.push_back(g);
    }
    for (const auto& piece : pieces) {
      if (xcoord)
        r.add(piece, k.y, mu, nu, c);
      else
        r.add(k.x, piece, mu, nu, c);
    }
  }
  return r;
}

// merge shell M-1 into ball M while the two rows agree
Table coarsen(Table t, bool xcoord) {
  for (;;) {
    int M = std::numeric_limits<int>::min();
    bool has_ball = false;
    for (const auto& [k, c] : t.coeff) {
      const Region& g = xcoord ? k.x : k.y;
      if (g.ball) {
        M = g.e;
        has_ball = true;
      }
    }
    if (!has_ball) return t;
    using Row = std::map<std::tuple<Region, CharKey, CharKey>, Scalar>;
    Row ball_row, shell_row;
    for (const auto& [k, c] : t.coeff) {
      const Region& g = xcoord ? k.x : k.y;
      const Region& other = xcoord ? k.y : k.x;
      if (g.ball && g.e == M) ball_row[{other, k.mu, k.nu}] = c;
      if (!g.ball && g.e == M - 1) shell_row[{other, k.mu, k.nu}] = c;
    }
    if (ball_row != shell_row) return t;
    Table r;
    r.chars = t.chars;
    for (const auto& [k, c] : t.coeff) {
      Region g = xcoord ? k.x : k.y;
      if (!g.ball && g.e == M - 1) continue;
      if (g.ball) g.e = M - 1;
      const DirichletChar& mu = t.chars.at(k.mu);
      const DirichletChar& nu = t.chars.at(k.nu);
      if (xcoord)
        r.add(g, k.y, mu, nu, c);
      else
        r.add(k.x, g, mu, nu, c);
    }
    t = std::move(r);
  }
}

bool contains(const Region& g, int v) { return g.ball ? v >= g.e : v == g.e; }

}  // namespace

SchwartzFunction::SchwartzFunction(long p, Storage storage) : p_(p), storage_(storage) {}

SchwartzFunction SchwartzFunction::cell(long p, Region x, Region y, const Scalar& coeff, const DirichletChar* mu,
                                        const DirichletChar* nu, Storage storage) {
  SchwartzFunction f(p, storage);
  DirichletChar triv = DirichletChar::trivial(p);
  f.add_cell({x, y, mu ? *mu : triv, nu ? *nu : triv, coeff});
  f.canonicalize();
  return f;
}

void SchwartzFunction::add_cell(SchwartzCell c) {
  if (c.mu.p != p_ || c.nu.p != p_) throw CharacterConductorMismatch("character at the wrong prime");
  cells_.push_back(std::move(c));
}

void SchwartzFunction::canonicalize() {
  Table t;
  for (const auto& c : cells_) t.add(c.x, c.y, c.mu, c.nu, c.coeff);
  if (!t.coeff.empty()) {
    t = refine(t, true, grid_top(t.coeff, true));
    if (!t.coeff.empty()) t = refine(t, false, grid_top(t.coeff, false));
    t = coarsen(std::move(t), true);
    t = coarsen(std::move(t), false);
  }
  cells_.clear();
  for (const auto& [k, c] : t.coeff) cells_.push_back({k.x, k.y, t.chars.at(k.mu), t.chars.at(k.nu), c});
}

Scalar SchwartzFunction::value_at_origin() const {
  Scalar s(0);
  for (const auto& c : cells_)
    if (c.x.ball && c.y.ball && c.mu.is_trivial() && c.nu.is_trivial()) s += c.coeff;
  return s;
}

CharValue SchwartzFunction::value(int i, long x0, int j, long y0) const {
  CharValue s;
  for (const auto& c : cells_)
    if (contains(c.x, i) && contains(c.y, j)) s += CharValue(c.mu.at(x0) * c.nu.at(y0), c.coeff);
  return s;
}

SchwartzFunction& SchwartzFunction::operator+=(const SchwartzFunction& o) {
  if (o.p_ != p_ || o.storage_ != storage_) throw InvariantViolation("adding Schwartz functions of different kinds");
  for (const auto& c : o.cells_) cells_.push_back(c);
  canonicalize();
  return *this;
}

SchwartzFunction& SchwartzFunction::operator-=(const SchwartzFunction& o) { return *this += o.scaled(-1); }

SchwartzFunction SchwartzFunction::scaled(const Scalar& s) const {
  SchwartzFunction r = *this;
  for (auto& c : r.cells_) c.coeff *= s;
  r.canonicalize();
  return r;
}

SchwartzFunction SchwartzFunction::dilated(int a, int b) const {
  SchwartzFunction r = *this;
  for (auto& c : r.cells_) {
    c.x.e += a;
    c.y.e += b;
  }
  return r;
}

SchwartzFunction SchwartzFunction::integral_part() const {
  if (cells_.empty()) return *this;
  int lox = std::numeric_limits<int>::max(), loy = lox;
  Table t;
  for (const auto& c : cells_) {
    t.add(c.x, c.y, c.mu, c.nu, c.coeff);
    lox = std::min(lox, c.x.e);
    loy = std::min(loy, c.y.e);
  }
  // past these tops every ball cell lies inside v(x) + v(y) >= 0
  t = refine(t, true, std::max(grid_top(t.coeff, true), -loy));
  t = refine(t, false, std::max(grid_top(t.coeff, false), -lox));
  SchwartzFunction r(p_, storage_);
  for (const auto& [k, c] : t.coeff) {
    if (!k.x.ball && !k.y.ball && k.x.e + k.y.e < 0) continue;
    r.cells_.push_back({k.x, k.y, t.chars.at(k.mu), t.chars.at(k.nu), c});
  }
  r.canonicalize();
  return r;
}

bool operator==(const SchwartzFunction& x, const SchwartzFunction& y) {
  if (x.p_ != y.p_ || x.storage_ != y.storage_) return false;
  return (x - y).is_zero();
}

std::string SchwartzFunction::str() const {
  auto reg = [&](const Region& g) {
    std::string base = g.e == 0 ? "Z_p" : "p^" + std::to_string(g.e) + "Z_p";
    return g.ball ? base : base + "^x";
  };
  std::string s;
  for (const auto& c : cells_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.coeff.str() + ")*ch(" + reg(c.x) + " x " + reg(c.y) + ")";
    if (!c.mu.is_trivial()) s += "*mu" + c.mu.str();
    if (!c.nu.is_trivial()) s += "*nu" + c.nu.str();
  }
  return s.empty() ? "0" : s;
}

SchwartzFunction partial_fourier(const SchwartzFunction& f) {
  using S = SchwartzFunction::Storage;
  SchwartzFunction r(f.p_, f.storage_ == S::Phi ? S::PhiPrime : S::Phi);
  const long p = f.p_;
  for (const auto& c : f.cells_) {
    if (!c.nu.is_trivial()) throw UnsupportedTag("Fourier transform of a twisted second variable");
    // ch(p^e Z_p) -> p^-e ch(p^-e Z_p); a shell is the difference of two balls
    auto ball = [&](int e, const Scalar& w) {
      r.cells_.push_back({c.x, Region{true, -e}, c.mu, c.nu, c.coeff * w * Scalar::p_pow(p, -e)});
    };
    ball(c.y.e, 1);
    if (!c.y.ball) ball(c.y.e + 1, -1);
  }
  r.canonicalize();
  return r;
}

SchwartzFunction schwartz_sph(long p) { return SchwartzFunction::cell(p, {true, 0}, {true, 0}); }
SchwartzFunction schwartz_crit(long p) { return SchwartzFunction::cell(p, {true, 0}, {false, 0}); }
SchwartzFunction schwartz_dep(long p) { return SchwartzFunction::cell(p, {false, 0}, {false, 0}); }

SchwartzFunction schwartz_dep_twisted(const DirichletChar& mu, const DirichletChar& nu) {
  return SchwartzFunction::cell(mu.p, {false, 0}, {false, 0}, 1, &mu, &nu);
}

SchwartzFunction schwartz_crit_twisted(const DirichletChar& nu) {
  return SchwartzFunction::cell(nu.p, {true, 0}, {false, 0}, 1, nullptr, &nu);
}

SchwartzFunction schwartz_phi_shift_crit(const DirichletChar& nu) {
  return SchwartzFunction::cell(nu.p, {true, 1}, {false, 0}, 1, nullptr, &nu);
}

SchwartzFunction schwartz_operator(SchwartzOp op, const SchwartzFunction& f0, int k) {
  const SchwartzFunction f =
      f0.storage() == SchwartzFunction::Storage::PhiPrime ? f0 : partial_fourier(f0);
  const Scalar pk = Scalar::p_pow(f.prime(), k + 1);
  switch (op) {
    case SchwartzOp::Up:
      return f.dilated(0, -1).integral_part();
    case SchwartzOp::Phi:
      return f.dilated(0, 1);
    case SchwartzOp::Diamond:
      return f.dilated(-1, 1).scaled(pk);
    case SchwartzOp::DiamondInv:
      return f.dilated(1, -1).scaled(pk.inv());
    case SchwartzOp::DiamondInvPhi:
      return f.dilated(1, 0).scaled(pk.inv());
    case SchwartzOp::OneMinusPhi:
      return f - f.dilated(0, 1);
    case SchwartzOp::CritDepletion:
      return f - f.dilated(1, 0);
  }
  throw UnsupportedTag("unknown Schwartz operator");
}

SchwartzOp schwartz_op_from_string(const std::string& name) {
  static const std::map<std::string, SchwartzOp> ops = {
      {"U_p", SchwartzOp::Up},
      {"phi", SchwartzOp::Phi},
      {"diamond_p", SchwartzOp::Diamond},
      {"diamond_p_inv", SchwartzOp::DiamondInv},
      {"diamond_p_inv_phi", SchwartzOp::DiamondInvPhi},
      {"one_minus_phi", SchwartzOp::OneMinusPhi},
      {"crit_depletion", SchwartzOp::CritDepletion},
  };
  auto it = ops.find(name);
  if (it == ops.end()) throw UnsupportedTag("unknown Schwartz operator " + name);
  return it->second;
}

std::vector<Scalar> local_coefficients(const SchwartzFunction& f, int k, int N) {
  std::vector<Scalar> out;
  if (f.is_zero()) return std::vector<Scalar>(N + 1, Scalar(0));
  int lox = std::numeric_limits<int>::max(), loy = lox;
  for (const auto& c : f.cells()) {
    if (!c.mu.is_trivial() || !c.nu.is_trivial()) throw UnsupportedTag("local coefficients of a twisted function");
    lox = std::min(lox, c.x.e);
    loy = std::min(loy, c.y.e);
  }
  for (int e = 0; e <= N; ++e) {
    Scalar s(0);
    for (int i = lox; i <= e - loy; ++i) s += Scalar::p_pow(f.prime(), long(i) * (k + 1)) * f.value(i, 1, e - i, 1).scalar();
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// sections

SlotData SlotData::make(SlotTag tag, long p) {
  SlotData s;
  s.tag = tag;
  s.mu = s.nu = DirichletChar::trivial(p);
  return s;
}

SlotData SlotData::dep(const DirichletChar& mu, const DirichletChar& nu) {
  SlotData s = make(SlotTag::Dep, mu.p);
  s.mu = mu;
  s.nu = nu;
  return s;
}

SlotData SlotData::crit(const DirichletChar& nu) {
  SlotData s = make(SlotTag::Crit, nu.p);
  s.nu = nu;
  return s;
}

SlotData SlotData::phi_shift_crit(const DirichletChar& nu) {
  SlotData s = make(SlotTag::PhiShiftCrit, nu.p);
  s.nu = nu;
  return s;
}

DirichletChar SlotData::unit_character() const {
  switch (tag) {
    case SlotTag::Dep:
      return mu.inverse() * nu;
    case SlotTag::Crit:
    case SlotTag::PhiShiftCrit:
      return nu;
    case SlotTag::Sph:
      return DirichletChar::trivial(mu.p);
  }
  throw UnsupportedTag();
}

std::string SlotData::name() const {
  std::string s = slot_tag_name(tag);
  bool twisted = !mu.is_trivial() || !nu.is_trivial();
  if (twisted) s += "(" + (tag == SlotTag::Dep ? mu.str() + "," : std::string()) + nu.str() + ")";
  return s;
}

SlotTag slot_tag_from_string(const std::string& s) {
  if (s == "sph") return SlotTag::Sph;
  if (s == "crit") return SlotTag::Crit;
  if (s == "dep") return SlotTag::Dep;
  if (s == "phi_shift_crit") return SlotTag::PhiShiftCrit;
  throw UnsupportedTag("unknown slot tag " + s);
}

std::string slot_tag_name(SlotTag t) {
  switch (t) {
    case SlotTag::Sph:
      return "sph";
    case SlotTag::Crit:
      return "crit";
    case SlotTag::Dep:
      return "dep";
    case SlotTag::PhiShiftCrit:
      return "phi_shift_crit";
  }
  return "?";
}

SchwartzFunction slot_schwartz(const SlotData& slot) {
  SchwartzFunction f(slot.mu.p);
  switch (slot.tag) {
    case SlotTag::Sph:
      f = schwartz_sph(slot.mu.p);
      break;
    case SlotTag::Crit:
      f = schwartz_crit_twisted(slot.nu);
      break;
    case SlotTag::Dep:
      f = schwartz_dep_twisted(slot.mu, slot.nu);
      break;
    case SlotTag::PhiShiftCrit:
      f = schwartz_phi_shift_crit(slot.nu);
      break;
  }
  return f.scaled(slot.scale);
}

namespace {

// n -> W(diag(p^n, 1)) on x0 = 1 without the character factor: explicit
// values below head.size(), then sum_j A_j ratio_j^n
struct SlotSeries {
  std::vector<Scalar> head;
  std::vector<std::pair<Scalar, Scalar>> tail;

  Scalar at(int n) const {
    if (n < 0) return 0;
    if (n < int(head.size())) return head[n];
    Scalar s(0);
    for (const auto& [a, r] : tail) s += a * r.pow(n);
    return s;
  }
};

SlotSeries slot_series(const SlotData& slot, long p, const Scalar& chi_p, int two_s) {
  const Scalar step = Scalar::u_pow(p, -two_s);  // p^{-s}
  SlotSeries g;
  switch (slot.tag) {
    case SlotTag::Dep:
      g.head = {Scalar(1)};
      break;
    case SlotTag::Crit:
      g.tail = {{Scalar(1), step}};
      break;
    case SlotTag::PhiShiftCrit:
      g.head = {Scalar(0)};
      g.tail = {{Scalar(1), step}};
      break;
    case SlotTag::Sph: {
      // p^{-ns} (1 + R + ... + R^n), R = p^{2s} / chi(p)
      Scalar R = Scalar::p_pow(p, two_s) / chi_p;
      Scalar d = one_minus(R);
      if (d.is_zero()) throw PoleDetected("spherical section with chi(p) = p^{2s}");
      g.tail = {{d.inv(), step}, {-R / d, step * R}};
      break;
    }
  }
  for (auto& h : g.head) h *= slot.scale;
  for (auto& t : g.tail) t.first *= slot.scale;
  return g;
}

Cyclotomic unit_factor(const SlotData& slot, long x0) {
  switch (slot.tag) {
    case SlotTag::Dep:
      return slot.mu.at(-x0) * slot.nu.at(-1);
    case SlotTag::Crit:
    case SlotTag::PhiShiftCrit:
      return slot.nu.at(-1);
    case SlotTag::Sph:
      return Cyclotomic(1, 1);
  }
  throw UnsupportedTag();
}

}  // namespace

CharValue section_whittaker_value(const SlotData& slot, const Scalar& chi_p, int two_s, int n, long x0) {
  const long p = slot.mu.p;
  if (x0 % p == 0) throw InvariantViolation("x0 must be a unit");
  Scalar g = slot_series(slot, p, chi_p, two_s).at(n);
  return CharValue(unit_factor(slot, x0), g);
}

CharValue whittaker_from_table(const SchwartzFunction& f, const Scalar& chi_p, const DirichletChar& chi_units,
                               int two_s, int n, long x0) {
  const long p = f.prime();
  if (f.storage() != SchwartzFunction::Storage::PhiPrime)
    return whittaker_from_table(partial_fourier(f), chi_p, chi_units, two_s, n, x0);
  CharValue total;
  for (const auto& c : f.cells()) {
    // the unit integral keeps only mu nu^-1 chi = 1
    if (!(c.mu * c.nu.inverse() * chi_units).is_trivial()) continue;
    // t = p^v t0: first coordinate has valuation n + v, second -v
    int lo = c.x.e - n, hi = -c.y.e;
    if (!c.x.ball) hi = std::min(hi, lo);
    if (!c.y.ball) lo = std::max(lo, -c.y.e);
    Scalar w(0);
    for (int v = lo; v <= hi; ++v) w += chi_p.pow(v) * Scalar::p_pow(p, -long(two_s) * v);
    total += CharValue(c.mu.at(-x0) * c.nu.at(-1), c.coeff * w);
  }
  return total * Scalar::u_pow(p, -long(n) * two_s);
}

// ---------------------------------------------------------------------------
// zeta integrals

ZetaRequest ZetaRequest::untwisted(const HeckeParams& params, int q, int r, SlotTag s1, SlotTag s2) {
  ZetaRequest z;
  z.params = params;
  z.twist = TwistData::trivial_second(params);
  z.q = q;
  z.r = r;
  z.slot1 = SlotData::make(s1, params.p);
  z.slot2 = SlotData::make(s2, params.p);
  z.rho = DirichletChar::trivial(params.p);
  return z;
}

bool ZetaRequest::ramified() const {
  return !(slot1.mu.is_trivial() && slot1.nu.is_trivial() && slot2.mu.is_trivial() && slot2.nu.is_trivial() &&
           rho.is_trivial());
}

Scalar klingen_euler_prefactor(const ZetaRequest& req) {
  const auto& h = req.params;
  return euler_factor_E(h, req.q) * euler_factor_E_twisted(h, req.twist, h.r2 + 1 + req.r);
}

Scalar klingen_torus_integral(const ZetaRequest& req) {
  const HeckeParams& h = req.params;
  const long p = h.p;
  check_qr(h, req.q, req.r);
  for (const auto* c : {&req.slot1.mu, &req.slot1.nu, &req.slot2.mu, &req.slot2.nu, &req.rho})
    if (c->p != p) throw CharacterConductorMismatch("character at the wrong prime");
  if (!slot_schwartz(req.slot1).value_at_origin().is_zero())
    throw InvariantViolation("first Schwartz function must vanish at the origin after the partial transform");
  if (!(req.slot1.unit_character() * req.slot2.unit_character() == req.rho * req.rho))
    throw CharacterConductorMismatch("chi1 chi2 must equal rho^2 on Z_p^x");
  if (2 * req.r == h.r1 - h.r2 + 1 && euler_factor_E_twisted(h, req.twist, h.r2 + 1 + req.r).is_zero())
    throw PoleDetected("integrand has a pole at the evaluation point");

  // average over Z_p^x of the unit parts
  int T = std::max({req.slot1.mu.t, req.slot1.nu.t, req.slot2.mu.t, req.slot2.nu.t, req.rho.t, 1});
  long M = ipow(p, T);
  Cyclotomic avg(1, 0);
  long units = 0;
  for (long x0 = 1; x0 < M; ++x0) {
    if (x0 % p == 0) continue;
    avg += unit_factor(req.slot1, x0) * unit_factor(req.slot2, x0) * req.rho.at(x0);
    ++units;
  }
  avg *= mpq_class(1, units);
  if (!avg.is_rational()) throw IrrationalResidue("unit average is not rational");
  if (avg.is_zero()) return 0;

  const int two_s1 = -(h.r1 - req.q - req.r), two_s2 = -(h.r2 - req.q + req.r);
  SlotSeries g1 = slot_series(req.slot1, p, req.twist.chi1_p, two_s1);
  SlotSeries g2 = slot_series(req.slot2, p, req.twist.chi2_p, two_s2);

  // w_tau(p^n) |p^n|^-1 theta(p^n) = h_n(alpha, beta) kappa^n
  const Scalar kappa = Scalar::u_pow(p, -(h.weight() + 1)) * Scalar(p) * h.gamma / h.alpha;
  auto hn = [&](int n, const Scalar& y) {
    Scalar s(0);
    for (int i = 0; i <= n; ++i) s += h.alpha.pow(i) * h.beta.pow(n - i);
    return s * y.pow(n);
  };
  const int n0 = int(std::max(g1.head.size(), g2.head.size()));
  Scalar total(0);
  for (int n = 0; n < n0; ++n) total += hn(n, kappa) * g1.at(n) * g2.at(n);
  for (const auto& [a1, q1] : g1.tail)
    for (const auto& [a2, q2] : g2.tail) {
      Scalar y = kappa * q1 * q2;
      Scalar den = one_minus(h.alpha * y) * one_minus(h.beta * y);
      if (den.is_zero()) throw PoleDetected("geometric ratio equals 1");
      Scalar s = den.inv();
      for (int n = 0; n < n0; ++n) s -= hn(n, y);
      total += a1 * a2 * s;
    }
  return Scalar(avg.rational()) * total;
}

Scalar klingen_zeta(const ZetaRequest& req) {
  if (req.ramified()) throw UnsupportedLocalDatum("Euler prefactor for ramified twists is not modelled");
  return klingen_euler_prefactor(req) * klingen_torus_integral(req);
}

ZtildeNormalization ztilde_normalization(const HeckeParams& params, const TwistData& twist, int q, int r) {
  check_qr(params, q, r);
  if (twist.chi2_p.is_zero()) throw DivisionByZero("chi2(p) vanishes");
  ZtildeNormalization z{1, 1};
  Scalar a = Scalar::p_pow(params.p, q + 1), b = twist.chi2_p * Scalar::p_pow(params.p, r + params.r2 + 2);
  for (const auto& x : params.quadruple()) {
    z.inv_L_sum *= one_minus(x / a);
    z.inv_L_diff *= one_minus(x / b);
  }
  return z;
}

Scalar siegel_zeta_closed(const HeckeParams& params, const TwistData& twist, int q, int r) {
  check_qr(params, q, r);
  const long p = params.p;
  Scalar pq1 = Scalar::p_pow(p, 1 + q), chi2 = twist.chi2_p;
  if (chi2.is_zero() || params.alpha.is_zero()) throw VanishingDenominator();
  return Scalar(mpq_class(1, (p + 1) * (p + 1))) * one_minus(params.beta / pq1) * one_minus(params.gamma / pq1) *
         one_minus(params.delta() / pq1) * one_minus(params.delta() / (Scalar::p_pow(p, params.r2 + 2 + r) * chi2)) *
         one_minus(chi2 * Scalar::p_pow(p, params.r2 + 1 + r) / params.alpha);
}

Scalar siegel_zeta_series(const HeckeParams& params, const TwistData& twist, int q, int r, int N) {
  check_qr(params, q, r);
  const long p = params.p;
  // F of the spherical vector
  Scalar A = twist.chi1_p * Scalar::p_pow(p, params.r1 + 1 - r);
  Scalar B = twist.chi2_p * Scalar::p_pow(p, params.r2 + 1 + r);
  std::vector<Scalar> num = {Scalar(1), -(A + B), A * B};
  std::vector<Scalar> den = {Scalar(1)};
  for (const auto& x : params.quadruple()) {
    std::vector<Scalar> next(den.size() + 1, Scalar(0));
    for (std::size_t i = 0; i < den.size(); ++i) {
      next[i] += den[i];
      next[i + 1] -= x * den[i];
    }
    den = std::move(next);
  }
  TruncatedSeries F = TruncatedSeries::rational("X", num, den, N);

  // F_{Uw} = (F_w - F_w(0)) / X, applied along the eigenvector's operator words
  HeckeCombination combo = siegel_eigen_combination(params);
  std::size_t longest = 0;
  for (const auto& [c, word] : combo.terms) longest = std::max(longest, word.size());
  const int bound = N - int(longest);
  if (bound < 2) throw TruncationTooShort("series too short for the eigenvector");
  TruncatedSeries G("X", bound);
  for (const auto& [c, word] : combo.terms) {
    TruncatedSeries s = F;
    for (const auto& op : word) {
      if (op != "U1Sieg") throw UnsupportedTag("Siegel vector with a non-Siegel operator");
      s = series_shift_divide(s);
    }
    G += s.truncated(bound).scaled(c);
  }
  // must be c / (1 - alpha X)
  const Scalar c0 = G[0];
  for (int n = 1; n <= bound; ++n)
    if (G[n] != c0 * params.alpha.pow(n)) throw InvariantViolation("Siegel vector series is not geometric in alpha");
  // L(pi, s1 + s2 - 1/2)^-1 F_w(X) at X = p^{-1-q}, with 1 - alpha X cancelled
  Scalar rest = c0;
  for (const auto& x : {params.beta, params.gamma, params.delta()}) rest *= one_minus(x / Scalar::p_pow(p, 1 + q));
  return Scalar(mpq_class(1, (p + 1) * (p + 1))) * rest;
}

Scalar siegel_zeta(const HeckeParams& params, const TwistData& twist, int q, int r) {
  Scalar a = siegel_zeta_closed(params, twist, q, r);
  Scalar b = siegel_zeta_series(params, twist, q, r);
  if (a != b) throw InvariantViolation("Siegel zeta paths disagree");
  return a;
}

}  // namespace gsp4
