#pragma once

#include "gsp4/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gsp4 {

// Power series in one variable truncated at degree N (coefficients 0..N).
class TruncatedSeries {
 public:
  TruncatedSeries(std::string var, int N);
  TruncatedSeries(std::string var, std::vector<Scalar> coeffs);

  // Expansion of a Scalar-coefficient rational function num(X)/den(X) given by
  // coefficient lists (den[0] must be invertible).
  static TruncatedSeries rational(std::string var, const std::vector<Scalar>& num,
                                  const std::vector<Scalar>& den, int N);

  const std::string& var() const { return var_; }
  int bound() const { return int(c_.size()) - 1; }
  const Scalar& operator[](int n) const { return c_.at(n); }
  Scalar& operator[](int n) { return c_.at(n); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries scaled(const Scalar& s) const;
  TruncatedSeries truncated(int N) const;

  friend bool operator==(const TruncatedSeries& x, const TruncatedSeries& y);

 private:
  std::string var_;
  std::vector<Scalar> c_;
};

// (F - F(0)) / X, truncated one degree lower.
TruncatedSeries series_shift_divide(const TruncatedSeries& F);

// c_n = sum_j A_j lambda_j^n
struct GeometricSpec {
  std::vector<std::pair<Scalar, Scalar>> terms;  // (amplitude, ratio)
  TruncatedSeries expand(const std::string& var, int N) const;
};

// sum_{n >= 0} c_n in closed form; throws PoleAtOne if some ratio is 1.
Scalar geometric_sum(const GeometricSpec& spec);

}  // namespace gsp4
