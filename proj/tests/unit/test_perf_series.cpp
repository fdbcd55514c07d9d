#include <gtest/gtest.h>

#include "fqlin/perf_series.hpp"
#include "support/gen.hpp"

using namespace fqlin;
using fqlin::testing::Gen;
using fqlin::testing::make_field;

namespace {

PerfSeries x_pow(const FieldPtr& f, Rational e) { return PerfSeries::monomial(f, f->one(), e); }

}  // namespace

TEST(PerfSeries, InverseOfOnePlusX) {
  PrecisionOptions opts;
  opts.rel_prec = 4;
  auto f = make_field(2, 1, 1, opts);
  PerfSeries a = PerfSeries::one(f) + x_pow(f, 1);
  PerfSeries inv = inverse(a);
  EXPECT_EQ(inv.to_string(), "1 + x + x^2 + x^3 + O(x^4)");
  EXPECT_EQ((a * inv).to_string(), "1 + O(x^4)");
}

TEST(PerfSeries, InexactInversePrecision) {
  auto f = make_field(3, 1);
  PerfSeries a = (x_pow(f, 2) + x_pow(f, 3)).truncated(to_scaled(*f, 6));
  PerfSeries inv = inverse(a);
  EXPECT_EQ(inv.prec(), to_scaled(*f, 6 - 4));
  EXPECT_TRUE(equal_to_precision(a * inv, PerfSeries::one(f)));
}

TEST(PerfSeries, CharacteristicTwoDoubling) {
  auto f = make_field(2, 1);
  PerfSeries a = x_pow(f, 1) + x_pow(f, Rational(1, 2));
  EXPECT_TRUE((a + a).is_exact_zero());
}

TEST(PerfSeries, FrobeniusAndRoots) {
  auto f = make_field(2, 1);
  PerfSeries a = x_pow(f, 1) + x_pow(f, 2);
  EXPECT_EQ(frobenius(a, 1).to_string(), "x^2 + x^4");
  EXPECT_EQ(frobenius(x_pow(f, 1), -2).to_string(), "x^{1/4}");
  EXPECT_EQ(root_q(x_pow(f, 2) + x_pow(f, 1)).to_string(), "x^{1/2} + x");
  EXPECT_TRUE(root_q(PerfSeries::zero(f)).is_exact_zero());
  EXPECT_EQ(frobenius(frobenius(a, 3), -3), a);
}

TEST(PerfSeries, FrobeniusDepthExceeded) {
  PrecisionOptions opts;
  opts.perf_depth = 2;
  auto f = make_field(2, 1, 1, opts);
  EXPECT_NO_THROW(frobenius(x_pow(f, 1), -2));
  EXPECT_THROW(frobenius(x_pow(f, 1), -3), PerfectionDepthExceeded);
}

TEST(PerfSeries, Valuation) {
  auto f = make_field(2, 1);
  auto v = valuation(x_pow(f, 2) + x_pow(f, 3));
  EXPECT_EQ(v.kind, Valuation::Kind::Exact);
  EXPECT_EQ(v.value, 2);
  EXPECT_EQ(valuation(x_pow(f, Rational(1, 4))).value, Rational(1, 4));
  auto o = valuation(PerfSeries::big_o(f, to_scaled(*f, 5)));
  EXPECT_EQ(o.kind, Valuation::Kind::AtLeast);
  EXPECT_EQ(o.value, 5);
  EXPECT_TRUE(valuation(PerfSeries::zero(f)).is_infinite());
}

TEST(PerfSeries, RingPropertiesRandom) {
  Gen gen(21);
  for (auto [p, v] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    auto f = make_field(p, v);
    for (int it = 0; it < 150; ++it) {
      PerfSeries a = gen.nonzero_series(f, -2, 6, 5, 1, gen.coin());
      PerfSeries b = gen.series(f, -2, 6, 5, 1, gen.coin());
      PerfSeries c = gen.series(f, -2, 6, 5, 1, gen.coin());
      EXPECT_TRUE(equal_to_precision((a + b) + c, a + (b + c)));
      EXPECT_TRUE(equal_to_precision(a * (b + c), a * b + a * c));
      EXPECT_TRUE(equal_to_precision((a * b) * c, a * (b * c)));
      auto va = valuation(a), vb = valuation(b), vab = valuation(a * b);
      if (va.kind == Valuation::Kind::Exact && vb.kind == Valuation::Kind::Exact) {
        EXPECT_EQ(vab.value, va.value + vb.value);
        if (va.value != vb.value) EXPECT_EQ(valuation(a + b).value, std::min(va.value, vb.value));
      }
      PerfSeries ia = inverse(a);
      EXPECT_TRUE(equal_to_precision(a * ia, PerfSeries::one(f)));
      EXPECT_TRUE(equal_to_precision(frobenius(a * b, 1), frobenius(a, 1) * frobenius(b, 1)));
      EXPECT_TRUE(equal_to_precision(frobenius(a + b, -1), root_q(a) + root_q(b)));
      EXPECT_TRUE(equal_to_precision(frobenius(root_q(a), 1), a));
    }
  }
}

TEST(PerfSeries, Formatting) {
  auto f = make_field(2, 2);
  PerfSeries a = PerfSeries::monomial(f, f->add(f->gen(), f->one()), Rational(2)) + x_pow(f, -1);
  EXPECT_EQ(a.to_string(), "x^{-1} + (g+1)*x^2");
  EXPECT_EQ(PerfSeries::big_o(f, to_scaled(*f, 4)).to_string(), "O(x^4)");
}

TEST(PerfSeries, PerfExpNormalization) {
  PerfExp e = PerfExp::from_rational(Rational(6, 4), 2);
  EXPECT_EQ(e.num, 3);
  EXPECT_EQ(e.den_exp, 1);
  EXPECT_EQ(e.to_rational(2), Rational(3, 2));
}
