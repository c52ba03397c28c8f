#include "gsp4/series.hpp"

#include "gsp4/errors.hpp"

#include <algorithm>

namespace gsp4 {

TruncatedSeries::TruncatedSeries(std::string var, int N) : var_(std::move(var)), c_(std::max(N, 0) + 1) {}

TruncatedSeries::TruncatedSeries(std::string var, std::vector<Scalar> coeffs)
    : var_(std::move(var)), c_(std::move(coeffs)) {
  if (c_.empty()) c_.resize(1);
}

TruncatedSeries TruncatedSeries::rational(std::string var, const std::vector<Scalar>& num,
                                          const std::vector<Scalar>& den, int N) {
  if (den.empty() || den[0].is_zero()) throw DivisionByZero("series denominator has no constant term");
  TruncatedSeries s(std::move(var), N);
  Scalar d0inv = den[0].inv();
  for (int n = 0; n <= N; ++n) {
    Scalar acc = n < int(num.size()) ? num[n] : Scalar(0);
    for (int k = 1; k <= n && k < int(den.size()); ++k) acc -= den[k] * s.c_[n - k];
    s.c_[n] = acc * d0inv;
  }
  return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  int N = std::min(bound(), o.bound());
  c_.resize(N + 1);
  for (int n = 0; n <= N; ++n) c_[n] += o.c_[n];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  int N = std::min(bound(), o.bound());
  c_.resize(N + 1);
  for (int n = 0; n <= N; ++n) c_[n] -= o.c_[n];
  return *this;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  int N = std::min(bound(), o.bound());
  TruncatedSeries r(var_, N);
  for (int i = 0; i <= N; ++i) {
    if (c_[i].is_zero()) continue;
    for (int j = 0; i + j <= N; ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  return r;
}

TruncatedSeries TruncatedSeries::scaled(const Scalar& s) const {
  TruncatedSeries r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

TruncatedSeries TruncatedSeries::truncated(int N) const {
  TruncatedSeries r = *this;
  r.c_.resize(std::min(N, bound()) + 1);
  return r;
}

bool operator==(const TruncatedSeries& x, const TruncatedSeries& y) {
  return x.var_ == y.var_ && x.c_ == y.c_;
}

TruncatedSeries series_shift_divide(const TruncatedSeries& F) {
  if (F.bound() < 1) return TruncatedSeries(F.var(), 0);
  std::vector<Scalar> c(F.coeffs().begin() + 1, F.coeffs().end());
  return TruncatedSeries(F.var(), std::move(c));
}

TruncatedSeries GeometricSpec::expand(const std::string& var, int N) const {
  TruncatedSeries s(var, N);
  for (const auto& [amp, ratio] : terms) {
    Scalar pw = amp;
    for (int n = 0; n <= N; ++n) {
      s[n] += pw;
      pw *= ratio;
    }
  }
  return s;
}

Scalar geometric_sum(const GeometricSpec& spec) {
  Scalar total;
  for (const auto& [amp, ratio] : spec.terms) {
    if (ratio.is_zero()) throw std::invalid_argument("geometric ratio must be nonzero");
    Scalar d = Scalar(1) - ratio;
    if (d.is_zero()) throw PoleAtOne();
    total += amp / d;
  }
  return total;
}

}  // namespace gsp4
