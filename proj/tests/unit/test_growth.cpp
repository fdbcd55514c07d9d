#include <gtest/gtest.h>

#include "fqlin/growth.hpp"
#include "support/gen.hpp"

using namespace fqlin;
using fqlin::testing::Gen;
using fqlin::testing::make_field;

namespace {

PerfSeries x_pow(const FieldPtr& f, Rational e) { return PerfSeries::monomial(f, f->one(), e); }

}  // namespace

TEST(Growth, NonNegativeValuationsGiveZeroKappa) {
  auto f = make_field(3, 1);
  CompSeries c = CompSeries::from_terms(f, {{1, x_pow(f, 0)}, {2, x_pow(f, 5)}});
  EXPECT_EQ(growth_certificate(c).kappa, 0);
}

TEST(Growth, ExactFit) {
  auto f = make_field(2, 1);
  std::vector<CompTerm> terms;
  for (int n = 1; n <= 5; ++n) terms.push_back({n, x_pow(f, -(1 << n))});
  GrowthCertificate cert = growth_certificate(CompSeries::from_terms(f, terms));
  EXPECT_EQ(cert.kappa, 1);
  EXPECT_EQ(cert.range, 5);
}

TEST(Growth, EvalMonomialAndIdentity) {
  auto f = make_field(2, 1);
  PerfSeries x = x_pow(f, 1);
  CompSeries t2 = CompSeries::t_power(f, 1);
  EXPECT_EQ(cs_eval(t2, x, growth_certificate(t2)).to_string(), "x^2");
  CompSeries t = CompSeries::identity(f);
  PerfSeries t0 = x + x_pow(f, Rational(7, 2));
  EXPECT_EQ(cs_eval(t, t0, growth_certificate(t)), t0);
}

TEST(Growth, OutsideDomainAndBadCertificate) {
  auto f = make_field(2, 1);
  CompSeries c = CompSeries::from_terms(f, {{1, x_pow(f, -2)}});
  GrowthCertificate cert = growth_certificate(c);
  EXPECT_EQ(cert.kappa, 1);
  EXPECT_THROW(cs_eval(c, x_pow(f, 1), cert), OutsideConvergenceDomain);
  EXPECT_NO_THROW(cs_eval(c, x_pow(f, 2), cert));
  GrowthCertificate weak{0, 1};
  EXPECT_THROW(cs_eval(c, x_pow(f, 2), weak), InvalidProblem);
}

TEST(Growth, TruncatedSeriesReportsTailBound) {
  auto f = make_field(2, 1);
  CompSeries c = CompSeries::from_terms(f, {{0, x_pow(f, 0)}, {1, x_pow(f, 0)}}, 3);
  PerfSeries val = cs_eval(c, x_pow(f, 1), growth_certificate(c));
  // tail: q^4 * (1 - 0) = 16
  EXPECT_EQ(val.to_string(), "x + x^2 + O(x^16)");
}

TEST(Growth, CompositionEvaluatesInEitherOrder) {
  Gen gen(41);
  for (int q : {2, 3}) {
    auto f = make_field(q, 1);
    for (int it = 0; it < 40; ++it) {
      CompSeries a = gen.comp(f, 0, 4, CompSeries::kExact, -1, 3);
      CompSeries b = gen.comp(f, 1, 4, CompSeries::kExact, -1, 3);
      GrowthCertificate ca = growth_certificate(a), cb = growth_certificate(b);
      GrowthCertificate cab{ca.kappa + cb.kappa, 8};
      PerfSeries t0 = gen.series(f, 4, 6, 2).shifted(0);
      PerfSeries lhs = cs_eval(compose(a, b), t0, cab);
      PerfSeries rhs = cs_eval(a, cs_eval(b, t0, cb), ca);
      EXPECT_TRUE(equal_to_precision(lhs, rhs));
    }
  }
}

TEST(Growth, EvaluationIsFqLinear) {
  Gen gen(42);
  auto f = make_field(2, 2);
  for (int it = 0; it < 40; ++it) {
    CompSeries a = gen.comp(f, 0, 3, CompSeries::kExact, -1, 2);
    GrowthCertificate c = growth_certificate(a);
    PerfSeries t1 = gen.series(f, 3, 5, 2), t2 = gen.series(f, 3, 5, 2);
    if (t1.is_zero() || t2.is_zero() || (t1 + t2).is_zero()) continue;
    EXPECT_TRUE(equal_to_precision(cs_eval(a, t1 + t2, c), cs_eval(a, t1, c) + cs_eval(a, t2, c)));
    for (FieldElem alpha : f->base_field_elements()) {
      if (alpha == f->zero()) continue;
      EXPECT_TRUE(equal_to_precision(cs_eval(a, t1.scaled(alpha), c), cs_eval(a, t1, c).scaled(alpha)));
    }
  }
}
