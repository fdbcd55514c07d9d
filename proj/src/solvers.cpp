#include "fqlin/solvers.hpp"

#include <algorithm>

#include "fqlin/carlitz.hpp"
#include "fqlin/units_ore.hpp"

namespace fqlin {

namespace {

Rational rat_valuation(const PerfSeries& a) { return from_scaled(*a.field(), a.val()); }

const PerfSeries* lookup(const std::map<int, PerfSeries>& m, int k) {
  auto it = m.find(k);
  return it == m.end() ? nullptr : &it->second;
}

int max_power(const OdeProblem& prob) {
  int k = 1;
  for (const auto& [jk, c] : prob.a) k = std::max(k, jk.second);
  return k;
}

void check_ode(const OdeProblem& prob) {
  if (!prob.field) throw InvalidProblem("ODE problem without a field");
  for (const auto& [jk, c] : prob.a) {
    if (jk.first < 0 || jk.second < 0) throw InvalidProblem("ODE coefficient indices must be non-negative");
    require_same_field(prob.field, c.field());
  }
}

}  // namespace

SeriesSolution solve_implicit(const ImplicitProblem& prob, int N) {
  if (prob.P.size() < 2) throw InvalidProblem("implicit equation needs P_0 and P_1");
  if (N < 1) throw InvalidProblem("truncation order must be at least 1");
  const FieldPtr& f = prob.P[0].field();
  for (const auto& pk : prob.P) require_same_field(f, pk.field());

  UnitFactorization uf;
  try {
    uf = factor_unit(prob.P[1]);
  } catch (const ZeroInput&) {
    throw NotSolvable("P_1 is zero");
  } catch (const NotAUnit&) {
    throw NotSolvable("P_1 has negative indices");
  }
  const int nu = uf.m;
  if (prob.nu && *prob.nu != nu)
    throw NotSolvable("P_1 starts at index " + std::to_string(nu) + ", not at nu = " + std::to_string(*prob.nu));
  for (const auto& t : prob.P[0].terms())
    if (t.k <= 2 * nu && !t.coef.is_zero())
      throw NotSolvable("P_0 must vanish at indices <= " + std::to_string(2 * nu));

  // u^(-1) o (6):  tau^nu z + sum_{k>=2} Q_k o z^(ok) = Q_0.
  const CompSeries uinv = invert_unit(uf.unit, N);
  const CompSeries Q0 = -compose(uinv, prob.P[0]);
  std::vector<CompSeries> Q(prob.P.size(), CompSeries::zero(f));
  for (std::size_t k = 2; k < prob.P.size(); ++k) Q[k] = compose(uinv, prob.P[k]);
  const int K = static_cast<int>(prob.P.size()) - 1;

  const int top = N - nu;
  SelfCompositionTable table(f, std::max(K, 1), N, nu + 1);
  for (int i = 1; i <= nu; ++i) table.push(PerfSeries::zero(f));
  std::vector<CompTerm> terms;
  for (int i = nu + 1; i <= top; ++i) {
    const int L = i + nu;
    if (Q0.order() < L) throw PrecisionExhausted("P_0 is not known to index " + std::to_string(L));
    PerfSeries acc = Q0.coef(L);
    for (int k = 2; k <= K; ++k) {
      const int jmax = L - k * (nu + 1);
      if (jmax < 0) continue;
      if (Q[k].order() < jmax) throw PrecisionExhausted("P_" + std::to_string(k) + " is not known far enough");
      for (const auto& b : Q[k].terms()) {
        if (b.k > jmax) break;
        const PerfSeries& m = table.get(k, L - b.k);
        if (m.is_exact_zero()) continue;
        acc = acc - b.coef * frobenius(m, b.k);
      }
    }
    PerfSeries ci = cap_relative(frobenius(acc, -nu));
    table.push(ci);
    terms.push_back({i, std::move(ci)});
  }
  CompSeries z = CompSeries::from_terms(f, std::move(terms), std::max(top, 0));
  return {z, growth_certificate(z)};
}

CompSeries implicit_residual(const ImplicitProblem& prob, const CompSeries& z) {
  if (prob.P.empty()) throw InvalidProblem("implicit equation without coefficients");
  CompSeries sum = prob.P[0];
  CompSeries power = z;
  for (std::size_t k = 1; k < prob.P.size(); ++k) {
    if (k > 1) power = compose(z, power);
    sum = sum + compose(prob.P[k], power);
  }
  return sum;
}

SeriesSolution solve_ode(const OdeProblem& prob, int N) {
  check_ode(prob);
  if (N < 0) throw InvalidProblem("truncation order must be non-negative");
  const FieldPtr& f = prob.field;
  SelfCompositionTable table(f, max_power(prob), N + 1);
  std::vector<CompTerm> terms;
  // Index i of dz = RHS:  ([i+1] c_{i+1})^(1/q) = sum a_jk M(i-j, k)^(q^j) + a_i0.
  for (int i = 0; i <= N; ++i) {
    PerfSeries acc = PerfSeries::zero(f);
    for (const auto& [jk, a] : prob.a) {
      const auto [j, k] = jk;
      if (k == 0) {
        if (j == i) acc = acc + a;
        continue;
      }
      const int l = i - j;
      if (l < k) continue;
      const PerfSeries& m = table.get(k, l);
      if (m.is_exact_zero()) continue;
      acc = acc + a * frobenius(m, j);
    }
    PerfSeries c = acc.is_exact_zero() ? acc : cap_relative(inverse(bracket(f, i + 1)) * frobenius(acc, 1));
    table.push(c);
    terms.push_back({i + 1, std::move(c)});
  }
  CompSeries z = CompSeries::from_terms(f, std::move(terms), N + 1);
  return {z, growth_certificate(z)};
}

CompSeries ode_residual(const OdeProblem& prob, const CompSeries& z) {
  check_ode(prob);
  const FieldPtr& f = prob.field;
  CompSeries rhs = CompSeries::zero(f);
  std::map<int, CompSeries> powers;
  for (const auto& [jk, a] : prob.a) {
    const auto [j, k] = jk;
    if (k == 0) {
      rhs = rhs + CompSeries::monomial(a, j);
      continue;
    }
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, self_power(z, k)).first;
    rhs = rhs + tau_power(it->second, j).scaled_left(a);
  }
  return carlitz_d(z) - rhs;
}

TimeChange normalize_time_change(const OdeProblem& prob) {
  check_ode(prob);
  const FieldPtr& f = prob.field;
  const Rational q(to_big(f->q()));
  // w = gamma^(-1) z(gamma t) multiplies a_jk by gamma^(q^j - 1/q).
  auto weight = [&](int j) { return Rational(boost::multiprecision::pow(BigInt(to_big(f->q())), j)) - 1 / q; };
  BigInt e = 0;
  for (const auto& [jk, a] : prob.a) {
    if (jk.second != 0 || a.is_zero()) continue;
    Rational v = rat_valuation(a);
    if (v < 0) e = std::max(e, ceil_big(-v / weight(jk.first)));
  }
  TimeChange out;
  out.e = static_cast<int>(e);
  out.gamma = PerfSeries::monomial(f, f->one(), Rational(e));
  out.problem.field = f;
  for (const auto& [jk, a] : prob.a)
    out.problem.a.emplace(jk, a.shifted(to_scaled(*f, Rational(e) * weight(jk.first))));
  return out;
}

CompSeries undo_time_change(const CompSeries& w, const PerfSeries& gamma) {
  std::vector<CompTerm> terms;
  const PerfSeries gamma_inv = inverse(gamma);
  for (const auto& t : w.terms()) terms.push_back({t.k, t.coef * gamma * frobenius(gamma_inv, t.k)});
  return CompSeries::from_terms(w.field(), std::move(terms), w.order());
}

namespace {

struct StepData {
  PerfSeries alpha;
  PerfSeries beta;
  PerfSeries rhs;
};

// Index l of the Riccati equation, with u = a_{l+1}^(1/q):
//   alpha u - beta u^q = rhs,
//   alpha = [l+1]^(1/q) - lambda c,  beta = lambda c^(q^(l+1)),
//   rhs = lambda sum_{m+n=l} a_n a_m^(q^n) + p_{l+1} c^(q^(l+1))
//         + sum_{i+j=l, i>=1} p_i a_j^(q^i) + r_l.
StepData step_data(const RiccatiProblem& prob, const PerfSeries& c, const std::vector<PerfSeries>& a, int l) {
  const FieldPtr& f = c.field();
  StepData d;
  // lambda c = [-1]^(1/q) exactly.
  d.alpha = root_q(bracket(f, l + 1)) - root_q(bracket(f, -1));
  const PerfSeries c_pow = frobenius(c, l + 1);
  d.beta = prob.lambda * c_pow;
  PerfSeries quad = PerfSeries::zero(f);
  for (int n = 0; n <= l; ++n) {
    if (a[n].is_exact_zero() || a[l - n].is_exact_zero()) continue;
    quad = quad + a[n] * frobenius(a[l - n], n);
  }
  PerfSeries rhs = prob.lambda * quad;
  if (const PerfSeries* p = lookup(prob.p, l + 1)) rhs = rhs + *p * c_pow;
  for (int i = 1; i <= l; ++i) {
    const PerfSeries* p = lookup(prob.p, i);
    if (!p || a[l - i].is_exact_zero()) continue;
    rhs = rhs + *p * frobenius(a[l - i], i);
  }
  if (const PerfSeries* r = lookup(prob.r, l)) rhs = rhs + *r;
  d.rhs = rhs;
  return d;
}

void check_riccati(const RiccatiProblem& prob) {
  const FieldPtr& f = prob.lambda.field();
  if (!f) throw InvalidProblem("Riccati problem without a field");
  const Rational q(to_big(f->q()));
  const Rational bound = 1 / (q * q);
  if (prob.lambda.is_zero()) throw InvalidProblem("lambda must be nonzero");
  if (rat_valuation(prob.lambda) < bound) throw InvalidProblem("v(lambda) must be at least 1/q^2");
  for (const auto& [k, p] : prob.p) {
    require_same_field(f, p.field());
    if (k < 1) throw InvalidProblem("p_k is indexed from 1");
    if (!p.is_zero() && rat_valuation(p) < bound) throw InvalidProblem("v(p_k) must be at least 1/q^2");
  }
  for (const auto& [k, r] : prob.r) {
    require_same_field(f, r.field());
    if (k < 0) throw InvalidProblem("r_k is indexed from 0");
    if (!r.is_zero() && rat_valuation(r) < bound) throw InvalidProblem("v(r_k) must be at least 1/q^2");
  }
}

FieldElem nonzero_a0(const Field& f) {
  const FieldElem minus_one = f.neg(f.one());
  for (std::uint32_t code = 1; code < f.order(); ++code)
    if (f.pow({code}, f.q() - 1) == minus_one) return {code};
  throw NeedsFieldExtension("a_0^(q-1) = -1 has no root in the residue field", 2 * f.s());
}

// Root of alpha u - beta u^q = rhs with v(u) >= 0, to precision target
// (scaled) of the equation.
PerfSeries solve_step(const StepData& d, Int target, HenselTrace& trace) {
  const FieldPtr& f = d.alpha.field();
  const Int q = f->q();
  const Int va = d.alpha.val();
  const Int vb = d.beta.val();
  // Roots of the two-term part alpha u = beta u^q have valuation
  // kappa0 = (va - vb) / (q - 1); compare e = v(r) - va against it.
  const Int v_rhs = d.rhs.is_zero() ? target : d.rhs.val();
  const Int rel = checked_add(checked_sub(target, std::min<Int>(v_rhs, 0)), f->scale());
  const PerfSeries alpha_inv = inverse(d.alpha, rel);

  PerfSeries u = PerfSeries::zero(f);
  PerfSeries r = d.rhs.truncated(target);
  trace.residual_valuations.push_back(from_scaled(*f, r.val()));
  for (int iter = 0; iter < 400; ++iter) {
    if (r.is_zero()) {
      if (r.prec() < target) throw PrecisionExhausted("step residual lost precision before reaching xprec");
      if (!u.is_zero() && u.val() < 0)
        throw NonConvergent("step root has negative valuation " + from_scaled(*f, u.val()).str());
      // The exact root differs from u by the small root of
      // alpha w - beta w^q = r, of valuation v(r) - v(alpha).
      return u.truncated(target - va);
    }
    const Int vr = r.val();
    const Int lhs = checked_mul(vr - va, q - 1);
    const Int rhs = va - vb;
    PerfSeries delta;
    if (lhs > rhs) {
      delta = r * alpha_inv;
    } else if (lhs == rhs) {
      const FieldElem gamma = f->div(d.beta.leading_coef(), d.alpha.leading_coef());
      const FieldElem rho = f->div(r.leading_coef(), d.alpha.leading_coef());
      auto w = solve_additive_residue(*f, gamma, rho);
      if (!w)
        throw NeedsFieldExtension("residue equation w - gamma w^q = rho has no root in the residue field",
                                  required_extension_for_residue(*f, gamma, rho));
      delta = PerfSeries::monomial(f, *w, vr - va);
    } else {
      const Int num = vr - vb;
      if (num % q != 0) throw PerfectionDepthExceeded("Riccati step root exceeds perfection depth");
      const FieldElem lead = f->frob_q(f->neg(f->div(r.leading_coef(), d.beta.leading_coef())), -1);
      delta = PerfSeries::monomial(f, lead, num / q);
    }
    u = u + delta;
    PerfSeries next = (d.rhs - (d.alpha * u - d.beta * frobenius(u, 1))).truncated(target);
    if (next.val() <= vr) throw NonConvergent("Hensel residual valuation did not increase");
    r = std::move(next);
    trace.residual_valuations.push_back(from_scaled(*f, r.val()));
  }
  throw NonConvergent("Hensel iteration did not reach the requested precision");
}

}  // namespace

RiccatiSolution solve_riccati(const RiccatiProblem& prob, int N, const Rational& xprec) {
  check_riccati(prob);
  if (N < 0) throw InvalidProblem("truncation order must be non-negative");
  if (xprec <= 0) throw InvalidProblem("xprec must be positive");
  const FieldPtr& f = prob.lambda.field();
  const Int target = to_scaled(*f, xprec);
  const Int v_lambda = prob.lambda.val();

  RiccatiSolution sol;
  const Int rel_c = checked_add(checked_add(target, std::max<Int>(v_lambda, 0)), f->scale());
  sol.c = inverse(prob.lambda, rel_c) * root_q(bracket(f, -1));
  sol.a.push_back(prob.branch == RiccatiBranch::Zero ? PerfSeries::zero(f)
                                                     : PerfSeries::constant(f, nonzero_a0(*f)));
  for (int l = 0; l <= N; ++l) {
    StepData d = step_data(prob, sol.c, sol.a, l);
    HenselTrace trace;
    trace.l = l;
    PerfSeries u = solve_step(d, target, trace);
    sol.a.push_back(frobenius(u, 1));
    trace.final_residual = valuation(riccati_step_residual(prob, sol.c, sol.a, l));
    sol.steps.push_back(std::move(trace));
  }
  sol.cert = growth_certificate(sol.a, 0);
  return sol;
}

CompSeries RiccatiSolution::y() const {
  const FieldPtr& f = c.field();
  std::vector<CompTerm> terms{{-1, c}};
  for (std::size_t n = 0; n < a.size(); ++n) terms.push_back({static_cast<int>(n), a[n]});
  return CompSeries::from_terms(f, std::move(terms), static_cast<int>(a.size()) - 1);
}

PerfSeries riccati_step_residual(const RiccatiProblem& prob, const PerfSeries& c, const std::vector<PerfSeries>& a,
                                 int l) {
  if (static_cast<int>(a.size()) < l + 2) throw InvalidProblem("step residual needs a_0 .. a_{l+1}");
  StepData d = step_data(prob, c, a, l);
  const PerfSeries& next = a[l + 1];
  return root_q(next) * d.alpha - d.beta * next - d.rhs;
}

CompSeries riccati_residual(const RiccatiProblem& prob, const CompSeries& y) {
  check_riccati(prob);
  CompSeries rhs = compose(y, y).scaled_left(prob.lambda);
  for (const auto& [k, p] : prob.p) rhs = rhs + tau_power(y, k).scaled_left(p);
  for (const auto& [k, r] : prob.r) rhs = rhs + CompSeries::monomial(r, k);
  return carlitz_d(y) - rhs;
}

}  // namespace fqlin
