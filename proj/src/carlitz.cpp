#include "fqlin/carlitz.hpp"

namespace fqlin {

PerfSeries bracket(const FieldPtr& field, int k) {
  if (k == 0) return PerfSeries::zero(field);
  Rational e = k > 0 ? Rational(boost::multiprecision::pow(BigInt(to_big(field->q())), static_cast<unsigned>(k)))
                     : Rational(1, boost::multiprecision::pow(BigInt(to_big(field->q())), static_cast<unsigned>(-k)));
  return PerfSeries::monomial(field, field->one(), e) - PerfSeries::monomial(field, field->one(), Rational(1));
}

CompSeries tau_power(const CompSeries& u, int j) {
  std::vector<CompTerm> terms;
  for (const auto& t : u.terms()) terms.push_back({t.k + j, frobenius(t.coef, j)});
  return CompSeries::from_terms(u.field(), std::move(terms), order_add(u.order(), j));
}

CompSeries carlitz_delta(const CompSeries& u) {
  std::vector<CompTerm> terms;
  for (const auto& t : u.terms()) terms.push_back({t.k, bracket(u.field(), t.k) * t.coef});
  return CompSeries::from_terms(u.field(), std::move(terms), u.order());
}

CompSeries carlitz_d(const CompSeries& u) {
  std::vector<CompTerm> terms;
  for (const auto& t : u.terms()) terms.push_back({t.k - 1, root_q(bracket(u.field(), t.k) * t.coef)});
  return CompSeries::from_terms(u.field(), std::move(terms), u.is_exact() ? CompSeries::kExact : u.order() - 1);
}

}  // namespace fqlin
