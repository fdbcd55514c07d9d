#pragma once

#include <vector>

#include "fqlin/comp_series.hpp"

namespace fqlin {

// Witness that v(c_n) >= -kappa * q^n for every index n <= range, so that
// sum c_n t^(q^n) converges for v(t) > kappa.
struct GrowthCertificate {
  Rational kappa = 0;
  int range = 0;
};

// kappa = max(0, max_n -v(c_n)/q^n) over the stored coefficients. A
// coefficient with no known term contributes its precision as the bound.
GrowthCertificate growth_certificate(const CompSeries& c);
// Coefficients c[i] at index first_index + i.
GrowthCertificate growth_certificate(const std::vector<PerfSeries>& c, int first_index);

// True when every stored coefficient of c obeys the bound and range covers c.
bool certificate_covers(const GrowthCertificate& cert, const CompSeries& c);

struct EvalStep {
  int k = 0;
  Valuation term_valuation;
  Rational bound;  // q^k (v(t0) - kappa)
};

struct EvalTrace {
  PerfSeries value;
  std::vector<EvalStep> steps;  // terms actually summed, in index order
};

// sum c_k t0^(q^k). Terms whose certified valuation bound reaches the output
// precision are skipped; a truncated series contributes its tail bound to the
// reported precision.
PerfSeries cs_eval(const CompSeries& a, const PerfSeries& t0, const GrowthCertificate& cert);
EvalTrace cs_eval_traced(const CompSeries& a, const PerfSeries& t0, const GrowthCertificate& cert);

}  // namespace fqlin
