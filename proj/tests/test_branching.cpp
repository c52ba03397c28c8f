#include <doctest.h>

#include "gsp4/branching.hpp"
#include "gsp4/errors.hpp"

#include <random>

using namespace gsp4;

namespace {

MatrixFunction random_poly(std::mt19937& rng, int terms, int deg) {
  std::uniform_int_distribution<int> var(0, 7), coef(-5, 5), len(0, deg);
  MatrixFunction f(4);
  for (int k = 0; k < terms; ++k) {
    MatrixFunction m = MatrixFunction::constant(4, coef(rng));
    for (int d = len(rng); d > 0; --d) {
      int v = var(rng);
      m = m * MatrixFunction::entry(4, v / 4, v % 4);
    }
    f += m;
  }
  return f;
}

mpz_class fact(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace

TEST_CASE("Lie elements and the GL2 model") {
  CHECK(lie_x12().in_lie_algebra());
  CHECK(lie_x41().in_lie_algebra());
  CHECK(lie_x32().in_lie_algebra());
  QMatrix bad(4);
  bad(0, 1) = 1;
  CHECK_FALSE(LieElement{bad}.in_lie_algebra());

  auto v = model_gl2_v(), w = model_gl2_w();
  CHECK(lie_act(lie_gl2_x21(), v.pow(3)) == v.pow(2) * w * mpq_class(3));
  for (int k = 0; k <= 6; ++k)
    for (int i = 0; i <= k; ++i)
      CHECK(lie_act_pow(lie_gl2_x21(), v.pow(k), i) == v.pow(k - i) * w.pow(i) * mpq_class(fact(k) / fact(k - i)));
}

TEST_CASE("actions on the named vectors") {
  auto X = lie_x12();
  CHECK(lie_act(X, model_v(2)) == model_v(1));
  CHECK(lie_act(X, model_v(1)).is_zero());
  CHECK(lie_act(X, model_v(4)) == model_v(3) * mpq_class(-1));
  CHECK(lie_act(X, model_v(3)).is_zero());
  CHECK(lie_act(X, model_w()).is_zero());
  CHECK(lie_act(X, model_w_dprime()) == model_w_prime() * mpq_class(-1));
  CHECK(lie_act(X, model_w_prime()) == model_w_minus() * mpq_class(-2));
  CHECK(lie_act(X, model_w_minus()).is_zero());

  CHECK(lie_act(lie_x41(), model_v(1)) == model_v(4));
  for (int i : {2, 3, 4}) CHECK(lie_act(lie_x41(), model_v(i)).is_zero());
  CHECK(lie_act(lie_x41(), model_w()) == model_w_dprime());
  CHECK(lie_act(lie_x41(), model_w_prime()).is_zero());
  CHECK(lie_act(lie_x41(), model_w_dprime()).is_zero());
  CHECK(lie_act(lie_x32(), model_w()) == model_w_minus());

  CHECK(killing_depth(model_v(2)) == 1);
  CHECK(killing_depth(model_v(1)) == 0);
  CHECK(killing_depth(model_w()) == 0);
  CHECK(killing_depth(model_w_dprime()) == 2);
  CHECK_THROWS_AS(killing_depth(MatrixFunction(4)), InvariantViolation);
}

TEST_CASE("Leibniz rule and X^n f^n = n! (X f)^n") {
  std::mt19937 rng(20201);
  const LieElement gens[] = {lie_x12(), lie_x41(), lie_x32()};
  for (int trial = 0; trial < 40; ++trial) {
    auto f1 = random_poly(rng, 4, 3), f2 = random_poly(rng, 4, 3);
    for (const auto& X : gens) {
      auto lhs = lie_act(X, f1 * f2);
      CHECK((lhs - lie_act(X, f1) * f2 - f1 * lie_act(X, f2)).is_zero());
    }
  }
  const std::pair<LieElement, MatrixFunction> cases[] = {
      {lie_x12(), model_w_prime()}, {lie_x12(), model_v(2)}, {lie_x12(), model_v(4)},
      {lie_x41(), model_w()},       {lie_x41(), model_v(1)}, {lie_x32(), model_w()}};
  for (const auto& [X, f] : cases) {
    REQUIRE(lie_act_pow(X, f, 2).is_zero());
    for (int n = 1; n <= 5; ++n) CHECK(lie_act_pow(X, f.pow(n), n) == lie_act(X, f).pow(n) * mpq_class(fact(n)));
  }
}

TEST_CASE("branching vectors") {
  CHECK(branching_vector(0, 0, 0, 0) == MatrixFunction::constant(4, 1));
  CHECK(branching_vector(1, 1, 1, 0) == model_w_prime());
  CHECK(branching_vector(2, 1, 0, 1) == model_w() * model_v(2));
  CHECK_THROWS_AS(branching_vector(1, 2, 0, 0), RangeViolation);
  CHECK_THROWS_AS(branching_vector(3, 1, 2, 0), RangeViolation);
  CHECK_THROWS_AS(branching_vector(3, 1, 0, 3), RangeViolation);
}

TEST_CASE("weights follow the monomial content") {
  using W = std::pair<int, int>;
  CHECK(model_w().weight() == W{1, 1});
  CHECK(model_w_prime().weight() == W{0, 0});
  CHECK(model_w_dprime().weight() == W{-1, 1});
  CHECK(model_w_minus().weight() == W{1, -1});
  for (int r1 = 0; r1 <= 5; ++r1)
    for (int r2 = 0; r2 <= r1 && r1 + r2 <= 6; ++r2)
      for (int q = 0; q <= r2; ++q)
        for (int r = 0; r <= r1 - r2; ++r) {
          auto f = branching_vector(r1, r2, q, r);
          auto w = f.weight();
          REQUIRE(w);
          CHECK(*w == W{r1 - q - r, r2 - q + r});
          CHECK(f.degree() == r1 + r2);
          // each application of X12 shifts by (1, -1), X41 by (-2, 0)
          auto g = lie_act(lie_x12(), f);
          if (!g.is_zero()) CHECK(*g.weight() == W{w->first + 1, w->second - 1});
          auto h = lie_act(lie_x41(), f);
          if (!h.is_zero()) CHECK(*h.weight() == W{w->first - 2, w->second});
        }
}

TEST_CASE("projection coefficients against the closed form") {
  CHECK(projection_coefficient(1, 1, 0, 0, BranchSlot::First).coefficient == 1);
  CHECK(projection_coefficient(1, 1, 0, 0, BranchSlot::First).index == 2);
  CHECK(projection_coefficient(1, 1, 1, 0, BranchSlot::First).coefficient == -2);
  CHECK(projection_coefficient(1, 1, 1, 0, BranchSlot::First).index == 1);
  CHECK(projection_coefficient(2, 1, 0, 0, BranchSlot::First).coefficient == mpq_class(1, 2));
  int count = 0;
  for (int r2 = 0; r2 <= 4; ++r2)
    for (int r1 = r2; r1 + r2 <= 8; ++r1)
      for (int q = 0; q <= r2; ++q)
        for (int r = 0; r <= r1 - r2; ++r)
          for (auto slot : {BranchSlot::First, BranchSlot::Second}) {
            auto res = projection_coefficient(r1, r2, q, r, slot);
            CHECK_MESSAGE(res.match(), r1, " ", r2, " ", q, " ", r);
            CHECK(res.index == (slot == BranchSlot::First ? 2 * r2 - q + r : q + r));
            ++count;
          }
  CHECK(count > 100);
  // image of the lowered vector has killing depth n
  for (int r1 = 1; r1 <= 4; ++r1)
    for (int r2 = 0; r2 <= r1 && r1 + r2 <= 6; ++r2)
      for (int q = 0; q <= r2; ++q)
        for (int r = 0; r <= r1 - r2; ++r) {
          auto img = lie_act_pow(lie_x41(), branching_vector(r1, r2, q, r), r2 - q);
          CHECK(killing_depth(img) == 2 * r2 - q + r);
        }
  CHECK_THROWS_AS(projection_coefficient(5, 4, 0, 0, BranchSlot::First), DegreeBudgetExceeded);
}
