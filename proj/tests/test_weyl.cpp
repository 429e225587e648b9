#include <gtest/gtest.h>

#include "bsarr/weyl.hpp"
#include "support.hpp"

using namespace bsarr;

namespace {

// Applies a left-normal operator to a polynomial in (x, s) by plain differentiation.
MultiPoly act(const WeylOp& op, const MultiPoly& f) {
  MultiPoly out(op.context());
  for (const auto& [gamma, c] : op.terms()) {
    MultiPoly g = f;
    for (std::size_t i = 0; i < op.n(); ++i)
      for (unsigned k = 0; k < gamma[i]; ++k) g = g.derivative(i);
    out += c * g;
  }
  return out;
}

}  // namespace

TEST(WeylMul, CommutationRelation) {
  auto d = WeylOp::d(1, 0, 0), x = WeylOp::x(1, 0, 0);
  EXPECT_EQ((d * x).to_string(), "x1*d1 + 1");
  EXPECT_EQ((d * d * x * x).to_string(), "x1^2*d1^2 + 4*x1*d1 + 2");
}

TEST(WeylMul, SecondOrderAgreesWithActionOnPowers) {
  auto d = WeylOp::d(1, 0, 0), x = WeylOp::x(1, 0, 0);
  WeylOp a = d * d * x * x;
  auto ctx = weyl_context(1, 0);
  auto xv = MultiPoly::variable(ctx, 0);
  for (unsigned m = 0; m <= 3; ++m) {
    MultiPoly f = xv.pow(m);
    MultiPoly direct = act(WeylOp::d(1, 0, 0), act(WeylOp::d(1, 0, 0), xv * xv * f));
    EXPECT_EQ(act(a, f), direct);
  }
}

TEST(WeylMul, ParametersAreCentral) {
  auto s = WeylOp::s(1, 1, 0), d = WeylOp::d(1, 1, 0);
  EXPECT_EQ(s * d, d * s);
  EXPECT_EQ((s * d).to_string(), "s1*d1");
}

TEST(WeylMul, DimensionMismatchThrows) {
  EXPECT_THROW(weyl_mul(WeylOp::d(1, 0, 0), WeylOp::d(2, 0, 0)), DimensionMismatch);
}

TEST(WeylMul, ProductIsCompositionOfActions) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 3, p = trial % 2;
    auto a = gen::random_op(rng, n, p, 3, 2, 2);
    auto b = gen::random_op(rng, n, p, 3, 2, 2);
    auto c = gen::random_op(rng, n, p, 2, 2, 1);
    auto f = gen::random_poly(rng, weyl_context(n, p), 3, 3);
    EXPECT_EQ(act(a * b, f), act(a, act(b, f)));
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Transpose, BasicsAndAntiAutomorphism) {
  EXPECT_EQ(weyl_transpose(WeylOp::d(1, 0, 0)), -WeylOp::d(1, 0, 0));
  auto xd = WeylOp::x(1, 0, 0) * WeylOp::d(1, 0, 0);
  EXPECT_EQ(weyl_transpose(xd).to_string(), "-x1*d1 - 1");
  std::mt19937 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 3;
    auto a = gen::random_op(rng, n, 1, 3, 3, 2);
    auto b = gen::random_op(rng, n, 1, 3, 2, 2);
    EXPECT_EQ(weyl_transpose(weyl_transpose(a)), a);
    EXPECT_EQ(weyl_transpose(a * b), weyl_transpose(b) * weyl_transpose(a));
  }
}

TEST(RightNormal, RoundTrip) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + trial % 3;
    auto a = gen::random_op(rng, n, 1, 4, 3, 3);
    EXPECT_EQ(WeylOp::from_right_normal(n, 1, a.right_normal_form()), a);
  }
  // x d = d x - 1, so the right constant term is -1.
  auto xd = WeylOp::x(1, 0, 0) * WeylOp::d(1, 0, 0);
  EXPECT_EQ(xd.right_constant_term(), MultiPoly::constant(weyl_context(1, 0), -1));
}

TEST(SharpSymbol, TopWeightPart) {
  auto op = WeylOp::s(1, 1, 0) + WeylOp::x(1, 1, 0);
  auto sym = sharp_symbol(op);
  EXPECT_EQ(sym.to_string(), "s1");
  EXPECT_THROW(sharp_symbol(WeylOp(1, 1)), ZeroOperator);
}

TEST(SharpSymbol, MultiplicativeWithoutCancellation) {
  std::mt19937 rng(13);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 1 + trial % 2;
    auto a = gen::random_op(rng, n, 2, 3, 2, 2);
    auto b = gen::random_op(rng, n, 2, 3, 2, 2);
    if (a.is_zero() || b.is_zero()) continue;
    auto ab = a * b;
    if (ab.is_zero() || ab.sharp_weight() != a.sharp_weight() + b.sharp_weight()) continue;
    EXPECT_EQ(sharp_symbol(ab), sharp_symbol(a) * sharp_symbol(b));
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

TEST(Parse, RoundTripsCanonicalText) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + trial % 3, p = trial % 3;
    auto a = gen::random_op(rng, n, p, 4, 3, 2);
    EXPECT_EQ(parse_weyl(a.to_string(), n, p), a);
  }
  EXPECT_EQ(parse_weyl("d1*x1", 1, 0).to_string(), "x1*d1 + 1");
  EXPECT_EQ(parse_weyl("(x1 + 1)*(x1 - 1)", 1, 0).to_string(), "x1^2 - 1");
  EXPECT_EQ(parse_weyl("0", 2, 1), WeylOp(2, 1));
  EXPECT_THROW(parse_weyl("x3", 2, 0), std::invalid_argument);
  EXPECT_THROW(parse_weyl("x1 +", 2, 0), std::invalid_argument);
}

TEST(CkTable, SmallValues) {
  auto t1 = ck_table(3, 1);
  EXPECT_EQ(t1.entries.size(), 3u);
  for (const auto& [i, v] : t1.entries) EXPECT_EQ(v, 1);
  auto t2 = ck_table(2, 2);
  EXPECT_EQ(t2.entries.at({1, 1}), 2);
  EXPECT_EQ(t2.entries.at({2, 0}), 1);
  EXPECT_EQ(t2.entries.at({0, 2}), 1);
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_EQ(ck_table(1, k).entries.at({static_cast<unsigned>(k)}), 1);
}

TEST(EulerExpand, SmallCases) {
  EXPECT_EQ(euler_expand(1, 1, EulerOffset::MinusJ).to_string(), "x1*d1");
  EXPECT_EQ(euler_expand(2, 2, EulerOffset::MinusJ).to_string(), "x1^2*d1^2 + 2*x1*x2*d1*d2 + x2^2*d2^2");
}

TEST(EulerExpand, MatchesCkTable) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t k = 1; k <= 4; ++k) {
      auto t = ck_table(n, k);
      EXPECT_EQ(euler_expand(n, k, EulerOffset::MinusJ), ck_operator(t, EulerOffset::MinusJ)) << n << "," << k;
      EXPECT_EQ(euler_expand(n, k, EulerOffset::PlusJPlusN), ck_operator(t, EulerOffset::PlusJPlusN))
          << n << "," << k;
      Rational sign = k % 2 ? -1 : 1;
      EXPECT_EQ(weyl_transpose(euler_expand(n, k, EulerOffset::MinusJ)),
                sign * euler_expand(n, k, EulerOffset::PlusJPlusN));
    }
}

TEST(ChangeCoordinates, PreservesActionUnderSubstitution) {
  // y = M x with M = [[1,1],[0,1]]; d_x f(y(x)) computed both ways.
  std::vector<std::vector<Rational>> m{{1, 1}, {0, 1}};
  auto op = WeylOp::d(2, 0, 0) + WeylOp::x(2, 0, 1) * WeylOp::d(2, 0, 1);
  auto y = op.change_coordinates(m);
  // d_x1 = d_y1, x2 = y2, d_x2 = d_y1 + d_y2.
  EXPECT_EQ(y.to_string(), "x2*d1 + d1 + x2*d2");
}
