#pragma once

#include <random>
#include <vector>

#include "fqlin/comp_series.hpp"

namespace fqlin::testing {

// Hand-rolled generators driven by a fixed-seed engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  FieldElem elem(const Field& f) { return {static_cast<std::uint32_t>(uniform(0, static_cast<int>(f.order()) - 1))}; }
  FieldElem nonzero_elem(const Field& f) {
    return {static_cast<std::uint32_t>(uniform(1, static_cast<int>(f.order()) - 1))};
  }

  // Exponent in [lo, hi] with denominator dividing p^den.
  Rational exponent(const Field& f, int lo, int hi, int den) {
    int d = 1;
    for (int i = 0; i < den; ++i) d *= f.p();
    int num = uniform(lo * d, hi * d);
    return Rational(num, d);
  }

  // Random series: up to max_terms terms with exponents in [lo, hi], exact or
  // with precision hi + 1.
  PerfSeries series(const FieldPtr& f, int lo, int hi, int max_terms, int den = 0, bool exact = true) {
    std::vector<PerfTerm> terms;
    int n = uniform(1, max_terms);
    for (int i = 0; i < n; ++i) terms.push_back({to_scaled(*f, exponent(*f, lo, hi, den)), nonzero_elem(*f)});
    Int prec = exact ? kInfinity : to_scaled(*f, Rational(hi + 1));
    return PerfSeries::from_terms(f, std::move(terms), prec);
  }

  PerfSeries nonzero_series(const FieldPtr& f, int lo, int hi, int max_terms, int den = 0, bool exact = true) {
    for (;;) {
      PerfSeries s = series(f, lo, hi, max_terms, den, exact);
      if (!s.is_zero()) return s;
    }
  }

  // Random composition series with indices in [kmin, kmax], coefficients with
  // valuations in [vlo, vhi].
  CompSeries comp(const FieldPtr& f, int kmin, int kmax, int order, int vlo, int vhi, double density = 0.7) {
    std::vector<CompTerm> terms;
    for (int k = kmin; k <= std::min(kmax, order); ++k)
      if (k == kmin || coin(density)) terms.push_back({k, nonzero_series(f, vlo, vhi, 3)});
    return CompSeries::from_terms(f, std::move(terms), order);
  }

  // Series exercising the whole document format: fractional and negative
  // exponents, inexact coefficients, meromorphic indices and truncation.
  PerfSeries any_series(const FieldPtr& f) {
    if (coin(0.05)) return PerfSeries::zero(f);
    if (coin(0.05)) return PerfSeries::big_o(f, to_scaled(*f, exponent(*f, -3, 6, 2)));
    PerfSeries s = series(f, -3, 6, 4, uniform(0, 2), coin(0.6));
    return s;
  }

  CompSeries any_comp(const FieldPtr& f) {
    int order = coin(0.4) ? CompSeries::kExact : uniform(-1, 6);
    int kmin = uniform(-2, 2);
    std::vector<CompTerm> terms;
    for (int k = kmin; k <= std::min(kmin + 5, order); ++k)
      if (coin(0.6)) terms.push_back({k, any_series(f)});
    return CompSeries::from_terms(f, std::move(terms), order);
  }

 private:
  std::mt19937_64 rng_;
};

inline FieldPtr make_field(int p, int v, int s = 1, PrecisionOptions opts = {}) {
  FieldConfig cfg;
  cfg.p = p;
  cfg.v = v;
  cfg.s = s;
  return Field::create(cfg, opts);
}

}  // namespace fqlin::testing
