#include "fqlin/units_ore.hpp"

#include <algorithm>

namespace fqlin {

namespace {

// Index of the first stored coefficient, which must have a known leading term.
int leading_index(const CompSeries& c, const char* what) {
  if (c.terms().empty()) throw ZeroInput(std::string(what) + " is zero");
  const CompTerm& lead = c.terms().front();
  if (lead.coef.is_zero())
    throw PrecisionExhausted(std::string(what) + " has an undetermined leading coefficient");
  return lead.k;
}

// t^(q^j) o c: coefficients raised to q^j and shifted up by j.
CompSeries left_shift(const CompSeries& c, int j) {
  std::vector<CompTerm> terms;
  for (const auto& t : c.terms()) terms.push_back({t.k + j, frobenius(t.coef, j)});
  return CompSeries::from_terms(c.field(), std::move(terms), order_add(c.order(), j));
}

// c o t^(q^j): indices shifted up by j, coefficients unchanged.
CompSeries right_shift(const CompSeries& c, int j) {
  std::vector<CompTerm> terms;
  for (const auto& t : c.terms()) terms.push_back({t.k + j, t.coef});
  return CompSeries::from_terms(c.field(), std::move(terms), order_add(c.order(), j));
}

}  // namespace

UnitFactorization factor_unit(const CompSeries& c) {
  const int m = leading_index(c, "series");
  if (m < 0) throw NotAUnit("factor_unit needs a series without negative indices");
  std::vector<CompTerm> terms;
  for (const auto& t : c.terms()) terms.push_back({t.k - m, t.coef});
  const int order = c.is_exact() ? CompSeries::kExact : c.order() - m;
  return {m, CompSeries::from_terms(c.field(), std::move(terms), order)};
}

CompSeries invert_unit(const CompSeries& u, int N) {
  if (u.terms().empty() || u.terms().front().k != 0 || u.terms().front().coef.is_zero())
    throw NotAUnit("series has no invertible coefficient at index 0");
  const FieldPtr& f = u.field();
  const int order = std::min(N, u.order());
  const PerfSeries u0_inv = inverse(u.terms().front().coef);
  // u = u0 (t + w)
  std::vector<CompTerm> wt;
  for (const auto& t : u.terms())
    if (t.k > 0 && t.k <= order) wt.push_back({t.k, u0_inv * t.coef});
  const CompSeries w = CompSeries::from_terms(f, std::move(wt), order);

  // (t + w)^(-1) = sum (-1)^n w^(o n); w^(o n) starts at index >= n.
  CompSeries sum = CompSeries::identity(f).truncated(order);
  CompSeries power = CompSeries::identity(f);
  for (int n = 1; n <= order; ++n) {
    power = compose(w, power).truncated(order);
    if (power.terms().empty()) break;
    std::vector<CompTerm> capped;
    for (const auto& t : power.terms()) capped.push_back({t.k, cap_relative(t.coef)});
    power = CompSeries::from_terms(f, std::move(capped), power.order());
    sum = (n % 2 == 1) ? sum - power : sum + power;
  }
  return sum.scaled_right(u0_inv).truncated(order);
}

OreMultiple ore_left_multiple(const CompSeries& a, const CompSeries& b, int N) {
  require_same_field(a.field(), b.field());
  const int m = leading_index(a, "a");
  const int l = leading_index(b, "b");
  if (m < 0 || l < 0) throw InvalidProblem("Ore construction needs series without negative indices");
  const FieldPtr& f = a.field();

  // Align leading indices by raising the lower one.
  CompSeries A = l > m ? left_shift(a, l - m) : a;
  CompSeries B = m > l ? left_shift(b, m - l) : b;
  const int L = std::max(m, l);
  // Equalize leading coefficients: B <- (gamma t) o B.
  const PerfSeries alpha = A.terms().front().coef;
  const PerfSeries gamma = alpha * inverse(B.terms().front().coef);
  B = B.scaled_left(gamma);

  // Seeds a'_0 = b'_0 = 1, b'_k = 0 for k >= 1; matching index k + L of
  // a' o B = b' o A gives
  //   a'_k alpha^(q^k) = A_{k+L} - sum_{i<k} a'_i B_{k+L-i}^(q^i).
  const int K = std::min({N, order_add(A.order(), -L), order_add(B.order(), -L)});
  std::vector<PerfSeries> ap{PerfSeries::one(f)};
  for (int k = 1; k <= K; ++k) {
    PerfSeries acc = A.coef(k + L);
    for (int i = 0; i < k; ++i) {
      if (ap[i].is_exact_zero()) continue;
      const PerfSeries bj = B.coef(k + L - i);
      if (bj.is_exact_zero()) continue;
      acc = acc - ap[i] * frobenius(bj, i);
    }
    ap.push_back(acc.is_exact_zero() ? acc : acc * inverse(frobenius(alpha, k)));
  }
  std::vector<CompTerm> terms;
  for (int k = 0; k <= K; ++k) terms.push_back({k, ap[k]});
  // Undo the normalizations: a'' = a''' o (gamma t), then the index shifts.
  CompSeries a_prime = CompSeries::from_terms(f, std::move(terms), K).scaled_right(gamma);
  CompSeries b_prime = CompSeries::identity(f);
  if (m > l) a_prime = right_shift(a_prime, m - l);
  if (l > m) b_prime = right_shift(b_prime, l - m);
  return {a_prime, b_prime};
}

FractionNormalForm fraction_normalize(const OreFraction& fr, int N) {
  require_same_field(fr.denom.field(), fr.numer.field());
  if (fr.denom.is_zero()) throw ZeroDenominator();
  UnitFactorization uf = factor_unit(fr.denom);
  return {uf.m, compose(invert_unit(uf.unit, N), fr.numer)};
}

CompSeries meromorphic_value(const FractionNormalForm& nf) {
  return compose(CompSeries::t_power(nf.a_prime.field(), -nf.m), nf.a_prime);
}

}  // namespace fqlin
