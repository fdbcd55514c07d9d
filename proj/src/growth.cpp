#include "fqlin/growth.hpp"

#include <algorithm>

namespace fqlin {

namespace {

// q^k as a rational, any sign of k.
Rational q_power(const Field& f, int k) {
  BigInt qk = boost::multiprecision::pow(BigInt(to_big(f.q())), static_cast<unsigned>(k < 0 ? -k : k));
  return k < 0 ? Rational(1, qk) : Rational(qk);
}

Rational lower_valuation(const PerfSeries& c) {
  return from_scaled(*c.field(), c.val());
}

}  // namespace

GrowthCertificate growth_certificate(const CompSeries& c) {
  GrowthCertificate cert;
  for (const auto& t : c.terms()) {
    Rational bound = -lower_valuation(t.coef) / q_power(*c.field(), t.k);
    cert.kappa = std::max(cert.kappa, bound);
  }
  auto hi = c.max_k();
  cert.range = c.is_exact() ? (hi ? *hi : 0) : c.order();
  return cert;
}

GrowthCertificate growth_certificate(const std::vector<PerfSeries>& c, int first_index) {
  GrowthCertificate cert;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_exact_zero()) continue;
    int k = first_index + static_cast<int>(i);
    cert.kappa = std::max(cert.kappa, -lower_valuation(c[i]) / q_power(*c[i].field(), k));
  }
  cert.range = first_index + static_cast<int>(c.size()) - 1;
  return cert;
}

bool certificate_covers(const GrowthCertificate& cert, const CompSeries& c) {
  if (cert.kappa < 0) return false;
  if (c.is_exact()) {
    auto hi = c.max_k();
    if (hi && *hi > cert.range) return false;
  } else if (c.order() > cert.range) {
    return false;
  }
  for (const auto& t : c.terms())
    if (lower_valuation(t.coef) < -cert.kappa * q_power(*c.field(), t.k)) return false;
  return true;
}

EvalTrace cs_eval_traced(const CompSeries& a, const PerfSeries& t0, const GrowthCertificate& cert) {
  require_same_field(a.field(), t0.field());
  const Field& f = *a.field();
  if (!certificate_covers(cert, a)) throw InvalidProblem("growth certificate does not cover the series");
  EvalTrace out{PerfSeries::zero(a.field()), {}};
  if (t0.is_exact_zero()) return out;
  const Rational vt = lower_valuation(t0);
  if (vt <= cert.kappa)
    throw OutsideConvergenceDomain("v(t0) = " + vt.str() + " is not above kappa = " + cert.kappa.str());
  const Rational margin = vt - cert.kappa;

  // Tail beyond the truncation order.
  Int prec = kInfinity;
  if (!a.is_exact()) {
    Rational tail = margin * q_power(f, a.order() + 1) * Rational(to_big(f.scale()));
    BigInt cap = BigInt(1) << 120;
    prec = from_big(std::min(floor_big(tail), cap));
  }
  // Certified term bounds increase with k, so once a bound reaches the running
  // precision every later term is invisible.
  const Rational scale(to_big(f.scale()));
  PerfSeries sum = PerfSeries::zero(a.field());
  for (const auto& t : a.terms()) {
    Rational bound = margin * q_power(f, t.k);
    if (prec != kInfinity && bound * scale >= Rational(to_big(prec))) break;
    PerfSeries term = t.coef * frobenius(t0, t.k);
    prec = std::min(prec, term.prec());
    out.steps.push_back({t.k, valuation(term), bound});
    sum = sum + term;
  }
  out.value = sum.truncated(prec);
  return out;
}

PerfSeries cs_eval(const CompSeries& a, const PerfSeries& t0, const GrowthCertificate& cert) {
  return cs_eval_traced(a, t0, cert).value;
}

}  // namespace fqlin
