#include <gtest/gtest.h>

#include "fqlin/field.hpp"
#include "support/gen.hpp"

using namespace fqlin;
using fqlin::testing::Gen;
using fqlin::testing::make_field;

namespace {

// Schoolbook product of coordinate vectors reduced by a monic modulus.
std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                       const std::vector<std::uint32_t>& mod, int p) {
  std::size_t n = mod.size() - 1;
  std::vector<long long> prod(2 * n, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + 1LL * a[i] * b[j]) % p;
  for (std::size_t d = prod.size(); d-- > n;) {
    long long c = prod[d];
    if (!c) continue;
    for (std::size_t i = 0; i <= n; ++i) prod[d - n + i] = ((prod[d - n + i] - c * mod[i]) % p + p) % p;
  }
  return std::vector<std::uint32_t>(prod.begin(), prod.begin() + static_cast<long>(n));
}

}  // namespace

TEST(Field, CharacteristicTwoAddition) {
  auto f = make_field(2, 1);
  EXPECT_EQ(f->add(f->one(), f->one()), f->zero());
}

TEST(Field, DefaultModuli) {
  EXPECT_EQ(Field::default_modulus(2, 2), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(Field::default_modulus(2, 3), (std::vector<std::uint32_t>{1, 1, 0, 1}));
  EXPECT_EQ(Field::default_modulus(3, 2), (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(Field, F4GeneratorSquared) {
  auto f = make_field(2, 2);
  FieldElem g = f->gen();
  EXPECT_EQ(f->format(f->mul(g, g)), "g+1");
  EXPECT_EQ(f->frob(g, 1), f->mul(g, g));
  EXPECT_EQ(f->frob(f->frob(g, 1), -1), g);
}

TEST(Field, MultiplicationMatchesPolynomialOracle) {
  Gen gen(11);
  for (auto [p, deg] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}, {2, 4}}) {
    auto f = make_field(p, deg);
    for (int it = 0; it < 200; ++it) {
      FieldElem a = gen.elem(*f), b = gen.elem(*f);
      auto expect = poly_mulmod(f->coords(a), f->coords(b), f->modulus(), p);
      EXPECT_EQ(f->coords(f->mul(a, b)), expect);
    }
  }
}

TEST(Field, AxiomsAndInverse) {
  Gen gen(12);
  auto f = make_field(3, 1, 2);
  for (int it = 0; it < 300; ++it) {
    FieldElem a = gen.elem(*f), b = gen.elem(*f), c = gen.elem(*f);
    EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
    EXPECT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
    if (a != f->zero()) EXPECT_EQ(f->mul(a, f->inv(a)), f->one());
    for (long long e : {1LL, 2LL, -1LL, -3LL}) EXPECT_EQ(f->frob(f->frob(a, e), -e), a);
  }
  EXPECT_THROW(f->inv(f->zero()), DivisionByZero);
}

TEST(Field, RejectsReducibleModulus) {
  FieldConfig cfg;
  cfg.p = 2;
  cfg.v = 2;
  cfg.modulus = {1, 0, 1};  // (g+1)^2
  EXPECT_THROW(Field::create(cfg), InvalidConfig);
  cfg.p = 4;
  cfg.modulus.clear();
  EXPECT_THROW(Field::create(cfg), InvalidConfig);
}

TEST(Field, BaseFieldElements) {
  auto f = make_field(2, 1, 2);
  auto base = f->base_field_elements();
  ASSERT_EQ(base.size(), 2u);
  for (auto e : base) EXPECT_TRUE(f->in_base_field(e));
}

TEST(Field, AdditiveResidueSolve) {
  Gen gen(13);
  auto f = make_field(2, 1, 3);
  for (int it = 0; it < 200; ++it) {
    FieldElem gamma = gen.elem(*f), rhs = gen.elem(*f);
    auto w = solve_additive_residue(*f, gamma, rhs);
    if (w) {
      EXPECT_EQ(f->sub(*w, f->mul(gamma, f->frob_q(*w, 1))), rhs);
    } else {
      int s = required_extension_for_residue(*f, gamma, rhs);
      EXPECT_TRUE(s == 0 || s % 3 == 0);
      EXPECT_GT(s, 3);
    }
  }
}

TEST(Field, ResidueNeedsExtension) {
  // w - w^2 = 1 has no root in F_2 but does in F_4.
  auto f = make_field(2, 1);
  EXPECT_FALSE(solve_additive_residue(*f, f->one(), f->one()).has_value());
  EXPECT_EQ(required_extension_for_residue(*f, f->one(), f->one()), 2);
}
