#pragma once

#include <span>
#include <string>
#include <vector>

#include "fqlin/field.hpp"

namespace fqlin {

// Exponents of x live in Z[1/p]. Inside a series they are stored as integers
// in units of 1/p^E (E = perfection depth of the field); Rational is used at
// the API boundary.
Int to_scaled(const Field& field, const Rational& e);
Rational from_scaled(const Field& field, Int scaled);

// Normalized view of an exponent: num / p^den_exp with p not dividing num
// unless den_exp = 0.
struct PerfExp {
  BigInt num = 0;
  int den_exp = 0;

  static PerfExp from_rational(const Rational& r, int p);
  Rational to_rational(int p) const;
  friend bool operator==(const PerfExp&, const PerfExp&) = default;
};

struct PerfTerm {
  Int exp = 0;  // scaled by p^E
  FieldElem coef;

  friend bool operator==(const PerfTerm&, const PerfTerm&) = default;
};

// Result of valuation(): exact leading exponent, a lower bound (the series is
// O(x^prec) with no known term), or +infinity for exact zero.
struct Valuation {
  enum class Kind { Exact, AtLeast, Infinite };
  Kind kind = Kind::Infinite;
  Rational value = 0;

  bool is_infinite() const { return kind == Kind::Infinite; }
  // The valuation is known to be >= r.
  bool at_least(const Rational& r) const { return kind == Kind::Infinite || value >= r; }
};

// Truncated Laurent series over F_{q^s} with exponents in Z[1/p]: the sum of
// the stored terms plus an unknown remainder O(x^prec). prec = kInfinity marks
// an exact value; an exact series with no terms is exact zero.
class PerfSeries {
 public:
  PerfSeries() = default;
  explicit PerfSeries(FieldPtr field) : field_(std::move(field)) {}

  static PerfSeries zero(FieldPtr field) { return PerfSeries(std::move(field)); }
  static PerfSeries one(FieldPtr field);
  static PerfSeries constant(FieldPtr field, FieldElem c);
  static PerfSeries monomial(FieldPtr field, FieldElem c, Int exp_scaled);
  static PerfSeries monomial(FieldPtr field, FieldElem c, const Rational& exp);
  static PerfSeries big_o(FieldPtr field, Int prec_scaled);
  // Sorts, merges equal exponents, drops zero coefficients and terms at or
  // beyond prec.
  static PerfSeries from_terms(FieldPtr field, std::vector<PerfTerm> terms, Int prec = kInfinity);

  const FieldPtr& field() const { return field_; }
  const std::vector<PerfTerm>& terms() const { return terms_; }
  Int prec() const { return prec_; }
  bool is_exact() const { return prec_ == kInfinity; }
  bool is_exact_zero() const { return terms_.empty() && prec_ == kInfinity; }
  // No known nonzero term: exact zero or a bare O(x^prec).
  bool is_zero() const { return terms_.empty(); }
  // Scaled leading exponent; prec when no term is known.
  Int val() const { return terms_.empty() ? prec_ : terms_.front().exp; }
  FieldElem leading_coef() const;
  Rational prec_rational() const;
  // Coefficient of x^e (scaled); zero when absent.
  FieldElem coef_at(Int exp_scaled) const;

  // Lower precision to min(prec, new_prec).
  PerfSeries truncated(Int new_prec) const;

  PerfSeries operator-() const;
  PerfSeries scaled(FieldElem c) const;
  // Multiply by x^e (scaled).
  PerfSeries shifted(Int exp_scaled) const;

  friend PerfSeries operator+(const PerfSeries& a, const PerfSeries& b);
  friend PerfSeries operator-(const PerfSeries& a, const PerfSeries& b);
  friend PerfSeries operator*(const PerfSeries& a, const PerfSeries& b);

  // Structural equality: same terms and same precision.
  friend bool operator==(const PerfSeries& a, const PerfSeries& b);

  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<PerfTerm> terms_;
  Int prec_ = kInfinity;
};

Valuation valuation(const PerfSeries& a);

// Multiplicative inverse. Exact inputs are expanded to the field's relative
// precision; inexact inputs keep their relative precision (result prec is
// prec(a) - 2 v(a)).
PerfSeries inverse(const PerfSeries& a);
PerfSeries inverse(const PerfSeries& a, Int rel_prec_scaled);

// a known to at most v(a) + rel (scaled). An exact value whose terms all lie
// below that bound is returned unchanged.
PerfSeries cap_relative(const PerfSeries& a, Int rel_scaled);
inline PerfSeries cap_relative(const PerfSeries& a) { return cap_relative(a, a.field()->rel_prec_scaled()); }

// a^(q^e) for any integer e; e < 0 takes q^|e|-th roots in K_perf.
PerfSeries frobenius(const PerfSeries& a, long long e);
inline PerfSeries root_q(const PerfSeries& a) { return frobenius(a, -1); }

// a and b agree wherever both are known.
bool equal_to_precision(const PerfSeries& a, const PerfSeries& b);

void require_same_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace fqlin
