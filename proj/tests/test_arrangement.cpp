#include <gtest/gtest.h>

#include "bsarr/arrangement.hpp"
#include "bsarr/ls_module.hpp"
#include "support.hpp"

using namespace bsarr;

namespace {

Arrangement xy_sum() { return Arrangement(2, {{1, 0}, {0, 1}, {1, 1}}); }

WeylOp mult(const Arrangement& a, const MultiPoly& c) { return WeylOp::multiplication(a.n, a.p(), c); }

}  // namespace

TEST(CheckGeneric, Examples) {
  auto c = check_generic(xy_sum());
  EXPECT_TRUE(c.generic);
  ASSERT_EQ(c.determinants.size(), 3u);
  EXPECT_EQ(c.determinants[0].second, 1);
  EXPECT_EQ(c.determinants[1].second, 1);
  EXPECT_EQ(c.determinants[2].second, -1);

  auto bad = check_generic(Arrangement(2, {{1, 0}, {0, 1}, {2, 0}}));
  EXPECT_FALSE(bad.generic);
  EXPECT_FALSE(bad.pairwise_distinct);
  EXPECT_EQ(bad.witness, (std::vector<std::size_t>{0, 2}));

  auto four = check_generic(Arrangement(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}}));
  EXPECT_TRUE(four.generic);
  EXPECT_EQ(four.determinants.size(), 6u);
  for (const auto& [rows, d] : four.determinants) EXPECT_NE(d, 0);
}

TEST(CheckGeneric, FewFormsNeedIndependence) {
  EXPECT_TRUE(check_generic(Arrangement(3, {{1, 0, 0}, {0, 1, 1}})).generic);
  EXPECT_FALSE(check_generic(Arrangement(3, {{1, 2, 3}, {2, 4, 6}})).generic);
  EXPECT_THROW(Arrangement(2, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(Arrangement(2, {{1, 0, 0}}), std::invalid_argument);
}

TEST(DualField, Examples) {
  auto a = xy_sum();
  Vec u12 = dual_field_pair(a, 0, 1);
  EXPECT_EQ(u12, (Vec{1, -1}));
  EXPECT_EQ(field_apply(u12, a.forms[1]), -1);
  Vec u21 = dual_field_pair(a, 1, 0);
  EXPECT_EQ(u21, (Vec{-1, 1}));
  Arrangement basis(2, {{1, 0}, {0, 1}});
  EXPECT_EQ(dual_field(basis, 0, {1}), (Vec{1, 0}));
}

TEST(DualField, PairIdentities) {
  std::mt19937_64 rng(101);
  for (std::size_t n = 2; n <= 3; ++n)
    for (int trial = 0; trial < 4; ++trial) {
      auto a = random_generic_arrangement(n, n + 1, rng);
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) {
          if (i == j) continue;
          Vec uij = dual_field_pair(a, i, j), uji = dual_field_pair(a, j, i);
          Rational c = field_apply(uij, a.forms[j]);
          EXPECT_EQ(c * field_apply(uji, a.forms[i]), 1);
          for (std::size_t t = 0; t < n; ++t) EXPECT_EQ(uij[t], c * uji[t]);
        }
    }
}

TEST(Identities, EulerDecompositionAndFormRelation) {
  std::mt19937_64 rng(102);
  for (std::size_t n = 2; n <= 3; ++n)
    for (int trial = 0; trial < 3; ++trial) {
      auto a = random_generic_arrangement(n, n + 1, rng);
      for (std::size_t k = 0; k <= n; ++k) {
        WeylOp sum(n, n + 1);
        MultiPoly lin(weyl_context(n, n + 1));
        WeylOp lkE = mult(a, form_poly(a, k)) * tilde_E(a);
        WeylOp usum(n, n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == k) continue;
          Vec u = dual_field_pair(a, i, k);
          sum += WeylOp::field(n, n + 1, u).left_multiply(form_poly(a, i));
          lin += form_poly(a, i) * field_apply(u, a.forms[k]);
          usum += tilde_U_pair(a, i, k);
        }
        EXPECT_EQ(sum, euler_field(n, n + 1));
        EXPECT_EQ(lin, form_poly(a, k));
        EXPECT_EQ(lkE, usum);
      }
    }
}

TEST(AnnGenerators, ExampleShapes) {
  auto a = xy_sum();
  auto gens = ann_generators(a);
  ASSERT_EQ(gens.size(), 2u);
  EXPECT_EQ(gens[0].label, "E~");
  EXPECT_EQ(gens[0].op.to_string(), "x1*d1 + x2*d2 - s1 - s2 - s3");
  EXPECT_EQ(gens[1].label, "U~[2,3]");
  // U_{2,3}(y) = 1 and U_{2,3}(x) = 0 give U_{2,3} = d_y and U_{2,3}(l_3) = 1.
  EXPECT_EQ(gens[1].op, parse_weyl("(x2*x1 + x2^2)*d2 - (x1 + x2)*s2 - x2*s3", 2, 3));
  EXPECT_THROW(ann_generators(Arrangement(2, {{1, 0}, {0, 1}, {2, 0}})), NotGeneric);
  EXPECT_THROW(ann_generators(Arrangement(3, {{1, 0, 0}})), WrongP);
}

TEST(AnnGenerators, GeneralPartitionCount) {
  std::mt19937_64 rng(5);
  auto a = random_generic_arrangement(2, 4, rng);
  // i: 4 choices, J: 2 of the other 3.
  EXPECT_EQ(ann_generators(a).size(), 1u + 4 * 3);
  for (const auto& g : ann_generators(a)) EXPECT_TRUE(annihilates(g.op, a)) << g.label;
}

TEST(AdaptedFrame, FirstFormsBecomeCoordinates) {
  std::mt19937_64 rng(9);
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t p = 1; p <= n + 2; ++p) {
      if (n == 1 && p > 1) continue;
      auto a = random_generic_arrangement(n, p, rng);
      auto f = adapted_frame(a);
      for (std::size_t k = 0; k < std::min(n, p); ++k)
        for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(f.in_y.forms[k][j], j == k ? 1 : 0);
    }
}
