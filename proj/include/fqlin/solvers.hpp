#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fqlin/growth.hpp"

namespace fqlin {

// P_0 + P_1 o z + P_2 o z^(o2) + ... + P_K o z^(oK) = 0.
struct ImplicitProblem {
  std::vector<CompSeries> P;
  // Leading index of P_1; nullopt takes it from P_1.
  std::optional<int> nu;
};

// dz = sum_{j>=0,k>=1} a_jk tau^j z^(ok) + sum_j a_j0 t^(q^j); key (j, k).
struct OdeProblem {
  FieldPtr field;
  std::map<std::pair<int, int>, PerfSeries> a;
};

enum class RiccatiBranch { Zero, Nonzero };

// dy = lambda (y o y) + sum_{k>=1} p_k y^(q^k) + sum_{k>=0} r_k t^(q^k).
struct RiccatiProblem {
  PerfSeries lambda;
  std::map<int, PerfSeries> p;
  std::map<int, PerfSeries> r;
  RiccatiBranch branch = RiccatiBranch::Zero;
};

struct SeriesSolution {
  CompSeries z;
  GrowthCertificate cert;
};

// Solution of the implicit equation, z = sum_{i>nu} c_i t^(q^i), known to
// index N - nu so that the equation holds to index N.
SeriesSolution solve_implicit(const ImplicitProblem& prob, int N);

// Solution of the Carlitz ODE, z = sum_{k>=1} c_k t^(q^k), known to index
// N + 1 so that the equation holds to index N.
SeriesSolution solve_ode(const OdeProblem& prob, int N);

struct TimeChange {
  OdeProblem problem;
  PerfSeries gamma;  // x^e
  int e = 0;
};

// Conjugates the equation by w = gamma^(-1) z(gamma t) with gamma = x^e, e >= 0
// minimal such that every inhomogeneous coefficient becomes integral. All
// a_jk are multiplied by gamma^(q^j - 1/q).
TimeChange normalize_time_change(const OdeProblem& prob);
// Solution of the original equation from the solution w of the normalized one:
// c_k = c'_k gamma^(1 - q^k).
CompSeries undo_time_change(const CompSeries& w, const PerfSeries& gamma);

struct HenselTrace {
  int l = 0;  // the step solving for a_{l+1}
  // Valuations of the working residual, one per iteration, starting with the
  // right-hand side itself.
  std::vector<Rational> residual_valuations;
  // Valuation of the step residual for the returned a_{l+1}.
  Valuation final_residual;
};

struct RiccatiSolution {
  PerfSeries c;
  std::vector<PerfSeries> a;  // a_0 .. a_{N+1}
  std::vector<HenselTrace> steps;
  GrowthCertificate cert;     // for sum a_n t^(q^n)

  // y = c t^(q^-1) + sum a_n t^(q^n).
  CompSeries y() const;
};

// y = c t^(1/q) + sum a_n t^(q^n) with c = lambda^(-1) [-1]^(1/q); each
// a_{l+1} is solved to x-adic precision xprec, so that the equation holds to
// index N.
RiccatiSolution solve_riccati(const RiccatiProblem& prob, int N, const Rational& xprec);

// Left side minus right side of each equation.
CompSeries implicit_residual(const ImplicitProblem& prob, const CompSeries& z);
CompSeries ode_residual(const OdeProblem& prob, const CompSeries& z);
CompSeries riccati_residual(const RiccatiProblem& prob, const CompSeries& y);

// The step equation for a_{l+1}: a^(1/q) alpha - beta a - rhs, evaluated at
// the candidate a, with alpha, beta, rhs built from a_0 .. a_l.
PerfSeries riccati_step_residual(const RiccatiProblem& prob, const PerfSeries& c, const std::vector<PerfSeries>& a,
                                 int l);

}  // namespace fqlin
