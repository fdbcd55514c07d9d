#include "fqlin/numeric.hpp"

#include <algorithm>

namespace fqlin {

std::string int_to_string(Int v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string out;
  while (u > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Int int_from_string(const std::string& s) {
  if (s.empty()) throw InvalidConfig("empty integer literal");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw InvalidConfig("malformed integer literal '" + s + "'");
  Int r = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw InvalidConfig("malformed integer literal '" + s + "'");
    r = checked_add(checked_mul(r, 10), s[i] - '0');
  }
  return neg ? -r : r;
}

Int from_big(const BigInt& v) {
  static const BigInt lo = to_big(-kIntMax);
  static const BigInt hi = to_big(kIntMax - 1);
  if (v < lo || v > hi) throw ExponentOverflow();
  bool neg = v < 0;
  BigInt a = neg ? BigInt(-v) : v;
  std::uint64_t high = static_cast<std::uint64_t>(a >> 64);
  std::uint64_t low = static_cast<std::uint64_t>(a & BigInt(~std::uint64_t(0)));
  unsigned __int128 u = (static_cast<unsigned __int128>(high) << 64) | low;
  Int r = static_cast<Int>(u);
  return neg ? -r : r;
}

BigInt floor_big(const Rational& r) {
  BigInt n = boost::multiprecision::numerator(r);
  BigInt d = boost::multiprecision::denominator(r);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

BigInt ceil_big(const Rational& r) { return -floor_big(-r); }

}  // namespace fqlin
