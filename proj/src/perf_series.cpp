#include "fqlin/perf_series.hpp"

#include <algorithm>

namespace fqlin {

namespace {

constexpr Int kPrecCap = static_cast<Int>(1) << 120;

// Precision values may be lowered freely (claiming less is always sound), so
// arithmetic on them saturates instead of overflowing.
Int prec_add(Int a, Int b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  Int r;
  if (__builtin_add_overflow(a, b, &r)) return a > 0 ? kPrecCap : throw ExponentOverflow();
  return std::min(r, kPrecCap);
}

Int prec_mul(Int a, Int factor) {
  if (a == kInfinity) return kInfinity;
  Int r;
  if (__builtin_mul_overflow(a, factor, &r)) {
    if (a > 0) return kPrecCap;
    throw ExponentOverflow();
  }
  return std::min(r, kPrecCap);
}

void normalize(const Field& f, std::vector<PerfTerm>& terms, Int prec) {
  std::sort(terms.begin(), terms.end(), [](const PerfTerm& a, const PerfTerm& b) { return a.exp < b.exp; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    Int e = terms[i].exp;
    FieldElem c = terms[i].coef;
    std::size_t j = i + 1;
    for (; j < terms.size() && terms[j].exp == e; ++j) c = f.add(c, terms[j].coef);
    if (c != f.zero() && e < prec) terms[out++] = {e, c};
    i = j;
  }
  terms.resize(out);
}

// Product of term lists keeping only exponents below cut.
std::vector<PerfTerm> mul_terms(const Field& f, const std::vector<PerfTerm>& a, const std::vector<PerfTerm>& b,
                                Int cut) {
  std::vector<PerfTerm> out;
  if (a.empty() || b.empty()) return out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a) {
    if (cut != kInfinity && checked_add(ta.exp, b.front().exp) >= cut) break;
    for (const auto& tb : b) {
      Int e = checked_add(ta.exp, tb.exp);
      if (e >= cut) break;
      out.push_back({e, f.mul(ta.coef, tb.coef)});
    }
  }
  normalize(f, out, cut);
  return out;
}

std::vector<PerfTerm> add_terms(const Field& f, const std::vector<PerfTerm>& a, const std::vector<PerfTerm>& b,
                                Int cut) {
  std::vector<PerfTerm> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    PerfTerm t;
    if (j == b.size() || (i < a.size() && a[i].exp < b[j].exp)) {
      t = a[i++];
    } else if (i == a.size() || b[j].exp < a[i].exp) {
      t = b[j++];
    } else {
      t = {a[i].exp, f.add(a[i].coef, b[j].coef)};
      ++i;
      ++j;
    }
    if (t.exp >= cut) break;
    if (t.coef != f.zero()) out.push_back(t);
  }
  return out;
}

std::string rational_to_string(const Rational& r) {
  BigInt n = boost::multiprecision::numerator(r);
  BigInt d = boost::multiprecision::denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

std::string exponent_suffix(const Rational& e) {
  if (e == 1) return "";
  if (boost::multiprecision::denominator(e) == 1 && e > 0) return "^" + rational_to_string(e);
  return "^{" + rational_to_string(e) + "}";
}

}  // namespace

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a || !b) throw InvalidConfig("series without a field");
  if (a != b && !a->same_as(*b)) throw InvalidConfig("operands belong to different field configurations");
}

Int to_scaled(const Field& field, const Rational& e) {
  Rational s = e * Rational(to_big(field.scale()));
  if (boost::multiprecision::denominator(s) != 1)
    throw PerfectionDepthExceeded("exponent " + rational_to_string(e) + " needs more than p^" +
                                  std::to_string(field.perf_depth()) + " in its denominator");
  return from_big(boost::multiprecision::numerator(s));
}

Rational from_scaled(const Field& field, Int scaled) {
  return Rational(to_big(scaled), to_big(field.scale()));
}

PerfExp PerfExp::from_rational(const Rational& r, int p) {
  PerfExp out;
  BigInt d = boost::multiprecision::denominator(r);
  out.num = boost::multiprecision::numerator(r);
  while (d > 1) {
    if (d % p != 0) throw InvalidConfig("exponent denominator is not a power of p");
    d /= p;
    ++out.den_exp;
  }
  return out;
}

Rational PerfExp::to_rational(int p) const {
  BigInt d = 1;
  for (int i = 0; i < den_exp; ++i) d *= p;
  return Rational(num, d);
}

PerfSeries PerfSeries::one(FieldPtr field) {
  FieldElem c = field->one();
  return constant(std::move(field), c);
}

PerfSeries PerfSeries::constant(FieldPtr field, FieldElem c) { return monomial(std::move(field), c, Int{0}); }

PerfSeries PerfSeries::monomial(FieldPtr field, FieldElem c, Int exp_scaled) {
  PerfSeries s(std::move(field));
  if (c != s.field_->zero()) s.terms_.push_back({exp_scaled, c});
  return s;
}

PerfSeries PerfSeries::monomial(FieldPtr field, FieldElem c, const Rational& exp) {
  Int e = to_scaled(*field, exp);
  return monomial(std::move(field), c, e);
}

PerfSeries PerfSeries::big_o(FieldPtr field, Int prec_scaled) {
  PerfSeries s(std::move(field));
  s.prec_ = prec_scaled;
  return s;
}

PerfSeries PerfSeries::from_terms(FieldPtr field, std::vector<PerfTerm> terms, Int prec) {
  PerfSeries s(std::move(field));
  normalize(*s.field_, terms, prec);
  s.terms_ = std::move(terms);
  s.prec_ = prec;
  return s;
}

FieldElem PerfSeries::leading_coef() const {
  if (terms_.empty()) throw PrecisionExhausted("series has no known leading term");
  return terms_.front().coef;
}

Rational PerfSeries::prec_rational() const {
  if (prec_ == kInfinity) throw InvalidConfig("exact series has infinite precision");
  return from_scaled(*field_, prec_);
}

FieldElem PerfSeries::coef_at(Int exp_scaled) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp_scaled,
                             [](const PerfTerm& t, Int e) { return t.exp < e; });
  if (it != terms_.end() && it->exp == exp_scaled) return it->coef;
  return field_->zero();
}

PerfSeries PerfSeries::truncated(Int new_prec) const {
  if (new_prec >= prec_) return *this;
  PerfSeries s(field_);
  s.prec_ = new_prec;
  for (const auto& t : terms_) {
    if (t.exp >= new_prec) break;
    s.terms_.push_back(t);
  }
  return s;
}

PerfSeries PerfSeries::operator-() const {
  PerfSeries s = *this;
  for (auto& t : s.terms_) t.coef = field_->neg(t.coef);
  return s;
}

PerfSeries PerfSeries::scaled(FieldElem c) const {
  if (c == field_->zero()) return zero(field_);
  PerfSeries s = *this;
  for (auto& t : s.terms_) t.coef = field_->mul(t.coef, c);
  return s;
}

PerfSeries PerfSeries::shifted(Int exp_scaled) const {
  PerfSeries s = *this;
  for (auto& t : s.terms_) t.exp = checked_add(t.exp, exp_scaled);
  s.prec_ = prec_add(prec_, exp_scaled);
  return s;
}

PerfSeries operator+(const PerfSeries& a, const PerfSeries& b) {
  require_same_field(a.field_, b.field_);
  PerfSeries s(a.field_);
  s.prec_ = std::min(a.prec_, b.prec_);
  s.terms_ = add_terms(*a.field_, a.terms_, b.terms_, s.prec_);
  return s;
}

PerfSeries operator-(const PerfSeries& a, const PerfSeries& b) { return a + (-b); }

PerfSeries operator*(const PerfSeries& a, const PerfSeries& b) {
  require_same_field(a.field_, b.field_);
  if (a.is_exact_zero() || b.is_exact_zero()) return PerfSeries::zero(a.field_);
  PerfSeries s(a.field_);
  s.prec_ = std::min(prec_add(a.prec_, b.val()), prec_add(b.prec_, a.val()));
  s.terms_ = mul_terms(*a.field_, a.terms_, b.terms_, s.prec_);
  return s;
}

bool operator==(const PerfSeries& a, const PerfSeries& b) {
  if (a.field_ && b.field_ && !a.field_->same_as(*b.field_)) return false;
  return a.prec_ == b.prec_ && a.terms_ == b.terms_;
}

Valuation valuation(const PerfSeries& a) {
  Valuation v;
  if (a.is_exact_zero()) return v;
  v.kind = a.is_zero() ? Valuation::Kind::AtLeast : Valuation::Kind::Exact;
  v.value = from_scaled(*a.field(), a.val());
  return v;
}

PerfSeries cap_relative(const PerfSeries& a, Int rel_scaled) {
  if (a.is_zero()) return a;
  const Int bound = checked_add(a.val(), rel_scaled);
  if (a.is_exact() && a.terms().back().exp < bound) return a;
  return a.truncated(bound);
}

PerfSeries inverse(const PerfSeries& a) { return inverse(a, a.field()->rel_prec_scaled()); }

PerfSeries inverse(const PerfSeries& a, Int rel_prec_scaled) {
  if (a.is_exact_zero()) throw DivisionByZero();
  if (a.is_zero()) throw PrecisionExhausted("cannot invert a series with no known leading term");
  const Field& f = *a.field();
  const Int v = a.val();
  const FieldElem lead_inv = f.inv(a.leading_coef());
  if (a.is_exact() && a.terms().size() == 1) return PerfSeries::monomial(a.field(), lead_inv, -v);

  const Int rel = a.is_exact() ? rel_prec_scaled : a.prec() - v;
  // Normalized a / x^v, known modulo x^rel.
  std::vector<PerfTerm> norm;
  for (const auto& t : a.terms()) {
    Int e = t.exp - v;
    if (e >= rel) break;
    norm.push_back({e, t.coef});
  }
  // Newton iteration y <- y + y (1 - a y); the error valuation doubles.
  std::vector<PerfTerm> y{{0, lead_inv}};
  const std::vector<PerfTerm> one{{0, f.one()}};
  for (int iter = 0; iter < 200; ++iter) {
    auto ay = mul_terms(f, norm, y, rel);
    std::vector<PerfTerm> neg_ay = ay;
    for (auto& t : neg_ay) t.coef = f.neg(t.coef);
    auto err = add_terms(f, one, neg_ay, rel);
    if (err.empty()) {
      PerfSeries out = PerfSeries::from_terms(a.field(), std::move(y), rel);
      return out.shifted(-v);
    }
    y = add_terms(f, y, mul_terms(f, y, err, rel), rel);
  }
  throw PrecisionExhausted("series inversion did not converge");
}

PerfSeries frobenius(const PerfSeries& a, long long e) {
  if (e == 0) return a;
  const Field& f = *a.field();
  std::vector<PerfTerm> terms;
  terms.reserve(a.terms().size());
  Int prec;
  if (e > 0) {
    Int factor = checked_pow(f.q(), e);
    for (const auto& t : a.terms()) terms.push_back({checked_mul(t.exp, factor), f.frob_q(t.coef, e)});
    prec = prec_mul(a.prec(), factor);
  } else {
    Int factor;
    try {
      factor = checked_pow(f.q(), -e);
    } catch (const ExponentOverflow&) {
      throw PerfectionDepthExceeded("q-th root depth exceeds the configured perfection depth");
    }
    for (const auto& t : a.terms()) {
      if (t.exp % factor != 0)
        throw PerfectionDepthExceeded("taking a q^" + std::to_string(-e) +
                                      "-th root exceeds perfection depth " + std::to_string(f.perf_depth()));
      terms.push_back({t.exp / factor, f.frob_q(t.coef, e)});
    }
    prec = a.prec() == kInfinity ? kInfinity : floor_div(a.prec(), factor);
  }
  PerfSeries out = PerfSeries::from_terms(a.field(), std::move(terms), prec);
  return out;
}

bool equal_to_precision(const PerfSeries& a, const PerfSeries& b) { return (a - b).is_zero(); }

std::string PerfSeries::to_string() const {
  if (is_exact_zero()) return "0";
  const Field& f = *field_;
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    Rational e = from_scaled(f, t.exp);
    std::string c = f.format(t.coef);
    bool compound = c.find_first_of("+*") != std::string::npos;
    if (e == 0) {
      out += compound ? "(" + c + ")" : c;
      continue;
    }
    if (t.coef != f.one()) out += (compound ? "(" + c + ")" : c) + "*";
    out += "x" + exponent_suffix(e);
  }
  if (!is_exact()) {
    if (!out.empty()) out += " + ";
    out += "O(x" + exponent_suffix(from_scaled(f, prec_)) + ")";
  }
  return out;
}

}  // namespace fqlin
