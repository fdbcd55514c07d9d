#pragma once

#include "fqlin/comp_series.hpp"

namespace fqlin {

// c = unit o t^(q^m), unit with a nonzero coefficient at index 0.
struct UnitFactorization {
  int m = 0;
  CompSeries unit;
};

UnitFactorization factor_unit(const CompSeries& c);

// Two-sided composition inverse of a unit, known to index N (or to the
// truncation order of u if that is lower). Coefficients are carried to the
// field's relative precision, as for inverse().
CompSeries invert_unit(const CompSeries& u, int N);

struct OreMultiple {
  CompSeries a_prime;
  CompSeries b_prime;
};

// a' o b = b' o a with b' != 0, a' known to index N.
OreMultiple ore_left_multiple(const CompSeries& a, const CompSeries& b, int N);

// c^(-1) o d.
struct OreFraction {
  CompSeries denom;
  CompSeries numer;
};

struct FractionNormalForm {
  int m = 0;
  CompSeries a_prime;
};

// c^(-1) o d = t^(q^-m) o a' with a' in the composition ring.
FractionNormalForm fraction_normalize(const OreFraction& f, int N);

// The meromorphic series t^(q^-m) o a'.
CompSeries meromorphic_value(const FractionNormalForm& nf);

}  // namespace fqlin
