#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "fqlin/perf_series.hpp"

namespace fqlin {

struct CompTerm {
  int k = 0;
  PerfSeries coef;
};

// F_q-linear series  sum_k c_k t^(q^k)  over K_perf, known modulo the terms of
// index > order(). Negative indices give the meromorphic (twisted Laurent)
// elements. Composition is the ring product.
class CompSeries {
 public:
  // order() value of a series known exactly (a polynomial in t).
  static constexpr int kExact = INT_MAX / 4;

  CompSeries() = default;
  explicit CompSeries(FieldPtr field, int order = kExact) : field_(std::move(field)), order_(order) {}

  static CompSeries zero(FieldPtr field, int order = kExact) { return CompSeries(std::move(field), order); }
  // The identity t.
  static CompSeries identity(FieldPtr field);
  // c * t^(q^k).
  static CompSeries monomial(const PerfSeries& c, int k);
  // t^(q^k).
  static CompSeries t_power(FieldPtr field, int k);
  // Drops exact-zero coefficients and indices beyond order; merges repeats.
  static CompSeries from_terms(FieldPtr field, std::vector<CompTerm> terms, int order = kExact);

  const FieldPtr& field() const { return field_; }
  const std::vector<CompTerm>& terms() const { return terms_; }
  int order() const { return order_; }
  bool is_exact() const { return order_ >= kExact; }

  // Smallest index whose coefficient has a known nonzero term.
  std::optional<int> min_k() const;
  // Smallest index that may carry a nonzero coefficient: the first stored
  // index, or order()+1 when nothing is stored.
  int low_index() const;
  std::optional<int> max_k() const;
  // No known nonzero coefficient anywhere.
  bool is_zero() const;
  // Coefficient at index k (exact zero when absent and k <= order).
  PerfSeries coef(int k) const;

  CompSeries truncated(int new_order) const;
  CompSeries operator-() const;
  // (gamma t) o a: every coefficient multiplied by gamma.
  CompSeries scaled_left(const PerfSeries& gamma) const;
  // a o (gamma t): coefficient k multiplied by gamma^(q^k).
  CompSeries scaled_right(const PerfSeries& gamma) const;

  friend CompSeries operator+(const CompSeries& a, const CompSeries& b);
  friend CompSeries operator-(const CompSeries& a, const CompSeries& b);
  friend bool operator==(const CompSeries& a, const CompSeries& b);

  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<CompTerm> terms_;  // strictly increasing k, no exact-zero coefficient
  int order_ = kExact;
};

// Saturating index arithmetic for orders.
int order_add(int a, int b);

// (a o b)_l = sum_{n+j=l} a_n * b_j^(q^n); known up to
// min(order(a) + low(b), order(b) + low(a)).
CompSeries compose(const CompSeries& a, const CompSeries& b);

// k-fold self-composition z o z o ... o z (k >= 1).
CompSeries self_power(const CompSeries& z, int k);

// Coefficients of the composition powers of z = sum_{n>=low} c_n t^(q^n)
// (low >= 1), filled by the convolution M(l, k) = sum_n c_n M(l-n, k-1)^(q^n).
// The coefficients c_n may be supplied incrementally, starting from c_1; an
// entry M(l, k) may be read once c_1 .. c_{l-(k-1)low} are known.
class SelfCompositionTable {
 public:
  SelfCompositionTable(FieldPtr field, int max_power, int max_index, int low = 1);

  // Append c_{known()+1}.
  void push(PerfSeries c);
  int known() const { return static_cast<int>(c_.size()); }
  const PerfSeries& coefficient(int n) const { return c_.at(static_cast<std::size_t>(n - 1)); }
  // Coefficient of t^(q^l) in z^(o k).
  const PerfSeries& get(int k, int l);

 private:
  FieldPtr field_;
  int max_power_;
  int max_index_;
  int low_;
  std::vector<PerfSeries> c_;
  std::vector<std::vector<std::optional<PerfSeries>>> memo_;  // [k][l]
  PerfSeries zero_;
};

// sum over n_1+...+n_k = l, n_i >= 1 of c_{n_1} c_{n_2}^(q^{n_1}) ...
// c_{n_k}^(q^{n_1+...+n_{k-1}}). c[n] is the coefficient of index n; c[0]
// is ignored.
PerfSeries multinomial_coeff(int l, int k, const std::vector<PerfSeries>& c);

// a and b agree at every index and x-adic position where both are known.
bool equal_to_precision(const CompSeries& a, const CompSeries& b);

}  // namespace fqlin
