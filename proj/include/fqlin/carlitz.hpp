#pragma once

#include "fqlin/comp_series.hpp"

namespace fqlin {

// [k] = x^(q^k) - x; k < 0 needs perfection depth.
PerfSeries bracket(const FieldPtr& field, int k);

// tau^j u = u^(q^j): c_k moves to index k + j as c_k^(q^j).
CompSeries tau_power(const CompSeries& u, int j);

// (Delta u)(t) = u(xt) - x u(t): c_k -> [k] c_k.
CompSeries carlitz_delta(const CompSeries& u);

// d = q-th root o Delta: c_k -> ([k] c_k)^(1/q) at index k - 1.
CompSeries carlitz_d(const CompSeries& u);

}  // namespace fqlin
