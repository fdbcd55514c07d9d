#include <gtest/gtest.h>

#include "fqlin/comp_series.hpp"
#include "support/gen.hpp"

using namespace fqlin;
using fqlin::testing::Gen;
using fqlin::testing::make_field;

namespace {

PerfSeries x_pow(const FieldPtr& f, Rational e) { return PerfSeries::monomial(f, f->one(), e); }

// Brute-force sum over all compositions of l into k positive parts.
PerfSeries multinomial_oracle(int l, int k, const std::vector<PerfSeries>& c, int prefix, PerfSeries acc) {
  const FieldPtr& f = c.front().field();
  if (k == 0) return l == 0 ? acc : PerfSeries::zero(f);
  PerfSeries sum = PerfSeries::zero(f);
  for (int n = 1; n <= l - (k - 1); ++n) {
    PerfSeries term = acc * frobenius(c[n], prefix);
    sum = sum + multinomial_oracle(l - n, k - 1, c, prefix + n, term);
  }
  return sum;
}

}  // namespace

TEST(CompSeries, IdentityAndCharacteristic) {
  auto f = make_field(2, 1);
  CompSeries t = CompSeries::identity(f);
  EXPECT_TRUE((t + t).is_zero());
  CompSeries a = CompSeries::from_terms(f, {{0, x_pow(f, 1)}, {2, x_pow(f, 3)}});
  EXPECT_EQ(compose(a, t), a);
  EXPECT_EQ(compose(t, a), a);
  EXPECT_EQ(a + CompSeries::zero(f), a);
}

TEST(CompSeries, GoldenComposition) {
  auto f = make_field(2, 1);
  CompSeries a = CompSeries::t_power(f, 1);
  CompSeries b = CompSeries::from_terms(f, {{0, x_pow(f, 1)}, {1, PerfSeries::one(f)}});
  EXPECT_EQ(compose(a, b).to_string(), "x^2*t^[q^1] + t^[q^2]");
}

TEST(CompSeries, TruncationOrder) {
  auto f = make_field(3, 1);
  CompSeries a = CompSeries::from_terms(f, {{1, PerfSeries::one(f)}}, 5);
  CompSeries b = CompSeries::from_terms(f, {{2, PerfSeries::one(f)}}, 4);
  CompSeries ab = compose(a, b);
  EXPECT_EQ(ab.order(), std::min(5 + 2, 4 + 1));
  EXPECT_EQ(ab.min_k(), 3);
}

TEST(CompSeries, MeromorphicComposition) {
  auto f = make_field(2, 1);
  CompSeries r = CompSeries::t_power(f, -1);
  CompSeries a = CompSeries::from_terms(f, {{1, x_pow(f, 1)}});
  // t^(1/2) o (x t^2) = x^(1/2) t
  EXPECT_EQ(compose(r, a).to_string(), "x^{1/2}*t");
  EXPECT_EQ(compose(a, r).to_string(), "x*t");
}

TEST(CompSeries, RingLawsRandom) {
  Gen gen(31);
  for (int q : {2, 3, 4}) {
    auto f = q == 4 ? make_field(2, 2) : make_field(q, 1);
    for (int it = 0; it < 60; ++it) {
      CompSeries a = gen.comp(f, gen.uniform(0, 2), 8, 8, -1, 3);
      CompSeries b = gen.comp(f, gen.uniform(0, 2), 8, 8, -1, 3);
      CompSeries c = gen.comp(f, gen.uniform(0, 2), 8, 8, -1, 3);
      EXPECT_TRUE(equal_to_precision(compose(compose(a, b), c), compose(a, compose(b, c))));
      EXPECT_TRUE(equal_to_precision(compose(a, b + c), compose(a, b) + compose(a, c)));
      EXPECT_TRUE(equal_to_precision(compose(a + b, c), compose(a, c) + compose(b, c)));
      CompSeries ab = compose(a, b);
      ASSERT_TRUE(ab.min_k().has_value());
      EXPECT_EQ(*ab.min_k(), *a.min_k() + *b.min_k());
    }
  }
}

TEST(CompSeries, SelfPower) {
  auto f = make_field(2, 1);
  CompSeries t = CompSeries::identity(f);
  EXPECT_EQ(self_power(t, 5), t);
  CompSeries z = CompSeries::from_terms(f, {{1, x_pow(f, 1)}, {2, PerfSeries::one(f)}}, 6);
  EXPECT_EQ(self_power(z, 2), compose(z, z));
}

TEST(CompSeries, MultinomialMatchesSelfPowerAndOracle) {
  Gen gen(32);
  for (int q : {2, 3}) {
    auto f = make_field(q, 1);
    std::vector<PerfSeries> c{PerfSeries::zero(f)};
    std::vector<CompTerm> terms;
    for (int n = 1; n <= 10; ++n) {
      c.push_back(gen.coin(0.8) ? gen.series(f, -1, 2, 2) : PerfSeries::zero(f));
      terms.push_back({n, c.back()});
    }
    CompSeries z = CompSeries::from_terms(f, terms, 10);
    for (int k = 1; k <= 4; ++k) {
      CompSeries zk = self_power(z, k);
      for (int l = 0; l <= 10; ++l) {
        PerfSeries m = multinomial_coeff(l, k, c);
        EXPECT_TRUE(equal_to_precision(m, zk.coef(l))) << "l=" << l << " k=" << k;
        if (l >= k && l <= 7) EXPECT_TRUE(equal_to_precision(m, multinomial_oracle(l, k, c, 0, PerfSeries::one(f))));
      }
    }
  }
}

TEST(CompSeries, MultinomialSmallCases) {
  auto f = make_field(2, 1);
  std::vector<PerfSeries> c{PerfSeries::zero(f), x_pow(f, 1), x_pow(f, 2), x_pow(f, 5)};
  EXPECT_TRUE(multinomial_coeff(1, 2, c).is_exact_zero());
  EXPECT_EQ(multinomial_coeff(3, 1, c), c[3]);
  PerfSeries expect = c[1] * frobenius(c[2], 1) + c[2] * frobenius(c[1], 2);
  EXPECT_EQ(multinomial_coeff(3, 2, c), expect);
}
