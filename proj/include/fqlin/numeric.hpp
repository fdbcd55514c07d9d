#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

#include "fqlin/errors.hpp"

namespace fqlin {

// Exponent arithmetic is done in 128-bit integers: series exponents are
// scaled by p^E and Frobenius powers multiply them by q^n, which leaves the
// 64-bit range quickly.
using Int = __int128;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr Int kIntMax = static_cast<Int>((~static_cast<unsigned __int128>(0)) >> 1);
// Sentinel for "known to infinite precision".
inline constexpr Int kInfinity = kIntMax;

inline Int checked_add(Int a, Int b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  Int r;
  if (__builtin_add_overflow(a, b, &r) || r == kInfinity) throw ExponentOverflow();
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r) || r == kInfinity) throw ExponentOverflow();
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r) || r == kInfinity) throw ExponentOverflow();
  return r;
}

inline Int checked_pow(Int base, long long e) {
  Int r = 1;
  for (long long i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

// Floor division for a positive divisor.
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

std::string int_to_string(Int v);
Int int_from_string(const std::string& s);

inline BigInt to_big(Int v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-r) : r;
}

Int from_big(const BigInt& v);

// floor(r) as a big integer.
BigInt floor_big(const Rational& r);
BigInt ceil_big(const Rational& r);

}  // namespace fqlin
