#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fqlin/cli.hpp"
#include "fqlin/io.hpp"
#include "support/gen.hpp"

using namespace fqlin;
using fqlin::testing::Gen;
using fqlin::testing::make_field;

namespace {

struct CliRun {
  int code;
  std::string out, err;
  io::json doc() const { return io::json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Parse, Identity) {
  auto f = make_field(2, 1);
  EXPECT_EQ(io::parse_comp(f, "t"), CompSeries::identity(f));
  EXPECT_EQ(io::parse_comp(f, " t ^ [ q ^ 0 ] "), CompSeries::identity(f));
  EXPECT_EQ(io::parse_comp(f, "0"), CompSeries::zero(f));
}

TEST(Parse, MeromorphicTerm) {
  auto f = make_field(2, 1);
  CompSeries s = io::parse_comp(f, "x^{1/2}*t^[q^-1]");
  ASSERT_EQ(s.terms().size(), 1u);
  EXPECT_EQ(s.terms()[0].k, -1);
  EXPECT_EQ(s.terms()[0].coef, PerfSeries::monomial(f, f->one(), Rational(1, 2)));
  EXPECT_EQ(io::emit(s), "x^{1/2}*t^[q^-1]");
}

TEST(Parse, SumsAndTruncation) {
  auto f = make_field(3, 1);
  CompSeries s = io::parse_comp(f, "(1 + 2*x^{-1/3} + O(x^4))*t + x^2*t^[q^2] + O(t^[q^3])");
  EXPECT_EQ(s.order(), 2);
  EXPECT_EQ(s.coef(2), PerfSeries::monomial(f, f->one(), Rational(2)));
  EXPECT_FALSE(s.coef(0).is_exact());
  EXPECT_EQ(io::parse_comp(f, io::emit(s)), s);
  EXPECT_EQ(io::parse_comp(f, "x*t - x*t"), CompSeries::zero(f));
}

TEST(Parse, GeneratorCoefficients) {
  auto f = make_field(2, 1, 2);
  PerfSeries a = io::parse_perf(f, "(g+1)*x + g^2");
  EXPECT_EQ(a.coef_at(0), f->mul(f->gen(), f->gen()));
  EXPECT_EQ(io::parse_perf(f, io::emit(a)), a);
}

TEST(Parse, Errors) {
  auto f = make_field(2, 1);
  try {
    io::parse_comp(f, "x*t + ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
  try {
    io::parse_comp(f, "x^{1/3}*t");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_NE(e.expected().find("power of 2"), std::string::npos);
  }
  try {
    io::parse_comp(f, "x*t^[q^1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.expected(), "']'");
  }
  EXPECT_THROW(io::parse_comp(f, "x^2"), ParseError);
  EXPECT_THROW(io::parse_comp(f, "t t"), ParseError);
  EXPECT_THROW(io::parse_perf(f, "x^{1/1024}"), ParseError);
}

TEST(RoundTrip, RandomDocuments) {
  Gen gen(404);
  for (auto [p, v, s] : {std::tuple{2, 1, 1}, {3, 1, 1}, {2, 2, 1}, {2, 1, 3}, {5, 1, 2}}) {
    auto f = make_field(p, v, s);
    for (int i = 0; i < 60; ++i) {
      CompSeries c = gen.any_comp(f);
      EXPECT_EQ(io::parse_comp(f, io::emit(c)), c) << io::emit(c);
      EXPECT_EQ(io::comp_from_json(f, io::to_json(c)), c);
      EXPECT_EQ(io::comp_from_json(f, io::json::parse(io::to_json(c).dump())), c);
      PerfSeries a = gen.any_series(f);
      EXPECT_EQ(io::parse_perf(f, io::emit(a)), a) << io::emit(a);
      EXPECT_EQ(io::perf_from_json(f, io::to_json(a)), a);
    }
    FieldConfig cfg = io::field_config_from_json(io::to_json(f->config()));
    EXPECT_TRUE(Field::create(cfg)->same_as(*f));
  }
}

TEST(Json, DocumentShape) {
  auto f = make_field(2, 1);
  PerfSeries a = PerfSeries::from_terms(f, {{to_scaled(*f, Rational(1, 4)), f->one()}}, to_scaled(*f, Rational(8)));
  EXPECT_EQ(io::to_json(a).dump(), R"({"prec":{"den_exp":0,"num":8},"terms":[{"c":[1],"e":{"den_exp":2,"num":1}}]})");
  EXPECT_EQ(io::to_json(f->config()).dump(), R"({"modulus":[0,1],"p":2,"s":1,"v":1})");
  EXPECT_THROW(io::perf_from_json(f, io::json::parse(R"({"prec":"inf","terms":[{"e":1,"c":[1]}]})")), InvalidConfig);
  EXPECT_THROW(io::perf_from_json(f, io::json::parse(R"({"prec":"inf","terms":[{"e":{"num":1,"den_exp":0},"c":[2]}]})")),
               InvalidConfig);
}

TEST(Cli, ComposeIdentity) {
  CliRun r = run({"compose", "--p", "2", "t", "t"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["result"]["text"], "t");
  EXPECT_EQ(r.doc()["manifest"]["command"], "compose");
  EXPECT_EQ(r.doc()["manifest"]["input_sha256"]["a"].get<std::string>().size(), 64u);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"invert", "--p", "2", "--order", "6", "t + x*t^[q^1]"};
  CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"compose", "--p", "2", "t +", "t"}).code, 2);
  EXPECT_EQ(run({"nope"}).code, 2);
  EXPECT_EQ(run({"invert", "--p", "2", "t^[q^1]"}).code, 3);
  EXPECT_EQ(run({"eval", "--p", "2", "x^{-2}*t^[q^1]", "x^{1/2}"}).code, 3);
  EXPECT_EQ(run({"solve-riccati", "--p", "2", "--branch", "nonzero", "--order", "2", "--xprec", "4", "x^{1/4}"}).code, 5);
  EXPECT_EQ(run({"compose", "--p", "4", "t", "t"}).code, 2);
}

TEST(Cli, SolveOdeGolden) {
  std::string path = ::testing::TempDir() + "ode.json";
  {
    std::ofstream f(path);
    f << R"({"a":[{"j":0,"k":0,"coef":"x"}]})";
  }
  CliRun r = run({"solve-ode", "--p", "2", "--order", "3", "--xprec", "6", "--check", "-i", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto f = make_field(2, 1);
  CompSeries z = io::comp_from_json(f, r.doc()["result"]["series"]);
  PerfSeries c1 = z.coef(1);
  PerfSeries expect = PerfSeries::from_terms(
      f, {{to_scaled(*f, Rational(1)), f->one()}, {to_scaled(*f, Rational(2)), f->one()},
          {to_scaled(*f, Rational(3)), f->one()}, {to_scaled(*f, Rational(4)), f->one()}},
      to_scaled(*f, Rational(5)));
  EXPECT_TRUE(equal_to_precision(c1, expect)) << c1.to_string();
  EXPECT_TRUE(r.doc()["result"]["check"]["zero"].get<bool>());
}

TEST(Cli, ResidualCheckInjection) {
  std::string path = ::testing::TempDir() + "bad.json";
  {
    std::ofstream f(path);
    f << R"js({"problem":{"kind":"ode","a":[{"j":0,"k":0,"coef":"x"}]},"solution":"(x + x^2)*t^[q^1] + O(t^[q^2])"})js";
  }
  EXPECT_EQ(run({"residual-check", "--p", "2", "--order", "0", "--check", "-i", path}).code, 4);
  EXPECT_EQ(run({"residual-check", "--p", "2", "--order", "0", "-i", path}).code, 0);
}
