#include "fqlin/field.hpp"

#include <algorithm>
#include <numeric>

namespace fqlin {

namespace {

using Poly = std::vector<long long>;  // ascending coefficients mod p

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long long mod_inverse(long long a, long long p) {
  long long r = 1, base = ((a % p) + p) % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& m, long long p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  long long lead_inv = mod_inverse(m.back(), p);
  while (a.size() >= m.size()) {
    long long c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, long long p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, unsigned long long e, const Poly& m, long long p) {
  Poly r{1};
  r = poly_mod(r, m, p);
  base = poly_mod(base, m, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, long long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Poly to_poly(std::span<const std::uint32_t> c) { return Poly(c.begin(), c.end()); }

unsigned long long mulmod64(unsigned long long a, unsigned long long b, unsigned long long m) {
  return static_cast<unsigned long long>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

bool Field::is_irreducible(int p, std::span<const std::uint32_t> poly) {
  Poly f = to_poly(poly);
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t d = f.size() - 1;
  if (d == 1) return true;
  if (f[0] == 0) return false;
  // Ben-Or: f is irreducible iff gcd(x^(p^i) - x, f) = 1 for i <= d/2.
  Poly h{0, 1};
  for (std::size_t i = 1; i <= d / 2; ++i) {
    h = poly_powmod(h, static_cast<unsigned long long>(p), f, p);
    Poly g = h;
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = ((g[1] - 1) % p + p) % p;
    trim(g);
    Poly gg = poly_gcd(f, g, p);
    if (gg.size() != 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> Field::default_modulus(int p, int degree) {
  long long total = 1;
  for (int i = 0; i < degree; ++i) {
    total *= p;
    if (total > static_cast<long long>(kMaxOrder)) throw InvalidConfig("field order too large");
  }
  std::vector<std::uint32_t> f(static_cast<std::size_t>(degree) + 1, 0);
  f[degree] = 1;
  for (long long c = 0; c < total; ++c) {
    long long rest = c;
    for (int i = 0; i < degree; ++i) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (is_irreducible(p, f)) return f;
  }
  throw InvalidConfig("no irreducible polynomial found");
}

std::shared_ptr<const Field> Field::create(FieldConfig config, PrecisionOptions options) {
  if (!is_prime(config.p)) throw InvalidConfig("p = " + std::to_string(config.p) + " is not prime");
  if (config.v < 1 || config.s < 1) throw InvalidConfig("v and s must be positive");
  const int degree = config.v * config.s;
  long long order = 1;
  for (int i = 0; i < degree; ++i) {
    order *= config.p;
    if (order > static_cast<long long>(kMaxOrder))
      throw InvalidConfig("field order p^(v*s) exceeds " + std::to_string(kMaxOrder));
  }
  if (config.modulus.empty()) {
    config.modulus = default_modulus(config.p, degree);
  } else {
    if (config.modulus.size() != static_cast<std::size_t>(degree) + 1 || config.modulus.back() != 1)
      throw InvalidConfig("modulus must be monic of degree v*s = " + std::to_string(degree));
    for (auto c : config.modulus)
      if (c >= static_cast<std::uint32_t>(config.p)) throw InvalidConfig("modulus coefficient out of range");
    if (!is_irreducible(config.p, config.modulus)) throw InvalidConfig("modulus is not irreducible over F_p");
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->config_ = config;
  f->degree_ = degree;
  f->order_ = static_cast<std::uint32_t>(order);
  f->q_ = checked_pow(config.p, config.v);
  f->perf_depth_ = options.perf_depth < 0 ? 8 * config.v : options.perf_depth;
  if (f->perf_depth_ > 64) throw InvalidConfig("perfection depth above 64 is not supported");
  f->scale_ = checked_pow(config.p, f->perf_depth_);

  f->rel_prec_ = options.rel_prec;
  if (options.rel_prec <= 0) throw InvalidConfig("relative precision must be positive");
  Rational scaled = options.rel_prec * Rational(to_big(f->scale_));
  if (boost::multiprecision::denominator(scaled) != 1)
    throw InvalidConfig("precision is not representable at the configured perfection depth");
  f->rel_prec_scaled_ = from_big(boost::multiprecision::numerator(scaled));

  f->pow_p_.resize(static_cast<std::size_t>(degree) + 1);
  f->pow_p_[0] = 1;
  for (int i = 1; i <= degree; ++i) f->pow_p_[i] = f->pow_p_[i - 1] * static_cast<std::uint32_t>(config.p);

  // Multiplicative tables from a primitive element.
  const Poly m = to_poly(config.modulus);
  const long long p = config.p;
  const unsigned long long group = order - 1;
  auto code_to_poly = [&](std::uint32_t code) {
    Poly r(static_cast<std::size_t>(degree), 0);
    for (int i = 0; i < degree; ++i) {
      r[i] = code % config.p;
      code /= config.p;
    }
    trim(r);
    return r;
  };
  auto poly_to_code = [&](const Poly& a) {
    std::uint32_t code = 0;
    for (std::size_t i = a.size(); i-- > 0;) code = code * static_cast<std::uint32_t>(p) + static_cast<std::uint32_t>(a[i]);
    return code;
  };
  const auto factors = prime_factors(static_cast<long long>(group));
  Poly gamma;
  for (std::uint32_t c = 1; c < f->order_; ++c) {
    Poly cand = code_to_poly(c);
    bool primitive = true;
    for (long long r : factors) {
      Poly t = poly_powmod(cand, group / static_cast<unsigned long long>(r), m, p);
      if (t.size() == 1 && t[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gamma = cand;
      break;
    }
  }
  f->exp_.assign(group, 0);
  f->log_.assign(f->order_, 0);
  Poly cur{1};
  for (unsigned long long i = 0; i < group; ++i) {
    std::uint32_t code = poly_to_code(cur);
    f->exp_[i] = code;
    f->log_[code] = static_cast<std::uint32_t>(i);
    cur = poly_mulmod(cur, gamma, m, p);
  }
  return f;
}

bool Field::same_as(const Field& other) const {
  return this == &other ||
         (config_.p == other.config_.p && config_.v == other.config_.v && config_.s == other.config_.s &&
          config_.modulus == other.config_.modulus && perf_depth_ == other.perf_depth_ &&
          rel_prec_ == other.rel_prec_);
}

FieldElem Field::gen() const {
  if (degree_ == 1) return from_int(-static_cast<long long>(config_.modulus[0]));
  return {static_cast<std::uint32_t>(config_.p)};
}

FieldElem Field::from_int(long long n) const {
  long long r = ((n % config_.p) + config_.p) % config_.p;
  return {static_cast<std::uint32_t>(r)};
}

FieldElem Field::from_coords(std::span<const std::uint32_t> coords) const {
  if (coords.size() != static_cast<std::size_t>(degree_))
    throw InvalidConfig("field element needs " + std::to_string(degree_) + " coordinates");
  std::uint32_t code = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (coords[i] >= static_cast<std::uint32_t>(config_.p)) throw InvalidConfig("coordinate out of range");
    code = code * static_cast<std::uint32_t>(config_.p) + coords[i];
  }
  return {code};
}

std::vector<std::uint32_t> Field::coords(FieldElem a) const {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(degree_));
  std::uint32_t c = a.code;
  for (int i = 0; i < degree_; ++i) {
    out[i] = c % static_cast<std::uint32_t>(config_.p);
    c /= static_cast<std::uint32_t>(config_.p);
  }
  return out;
}

FieldElem Field::add(FieldElem a, FieldElem b) const {
  if (config_.p == 2) return {a.code ^ b.code};
  const std::uint32_t p = static_cast<std::uint32_t>(config_.p);
  std::uint32_t r = 0;
  std::uint32_t x = a.code, y = b.code;
  for (int i = 0; i < degree_ && (x | y); ++i) {
    r += ((x % p + y % p) % p) * pow_p_[i];
    x /= p;
    y /= p;
  }
  return {r};
}

FieldElem Field::neg(FieldElem a) const {
  if (config_.p == 2) return a;
  const std::uint32_t p = static_cast<std::uint32_t>(config_.p);
  std::uint32_t r = 0;
  std::uint32_t x = a.code;
  for (int i = 0; i < degree_ && x; ++i) {
    r += ((p - x % p) % p) * pow_p_[i];
    x /= p;
  }
  return {r};
}

FieldElem Field::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem Field::mul(FieldElem a, FieldElem b) const {
  if (a.code == 0 || b.code == 0) return {0};
  const std::uint32_t group = order_ - 1;
  std::uint32_t e = log_[a.code] + log_[b.code];
  if (e >= group) e -= group;
  return {exp_[e]};
}

FieldElem Field::inv(FieldElem a) const {
  if (a.code == 0) throw DivisionByZero();
  const std::uint32_t group = order_ - 1;
  return {exp_[(group - log_[a.code]) % group]};
}

FieldElem Field::pow(FieldElem a, Int n) const {
  if (a.code == 0) {
    if (n < 0) throw DivisionByZero();
    return n == 0 ? one() : zero();
  }
  const Int group = order_ - 1;
  Int e = (static_cast<Int>(log_[a.code]) * (((n % group) + group) % group)) % group;
  return {exp_[static_cast<std::size_t>(e)]};
}

FieldElem Field::frob(FieldElem a, long long e) const {
  if (a.code == 0 || a.code == 1) return a;
  long long r = ((e % degree_) + degree_) % degree_;
  if (r == 0) return a;
  const unsigned long long group = order_ - 1;
  unsigned long long mult = 1;
  for (long long i = 0; i < r; ++i) mult = mult * static_cast<unsigned long long>(config_.p) % group;
  return {exp_[mulmod64(log_[a.code], mult, group)]};
}

std::vector<FieldElem> Field::base_field_elements() const {
  std::vector<FieldElem> out;
  for (std::uint32_t c = 0; c < order_; ++c)
    if (in_base_field({c})) out.push_back({c});
  return out;
}

std::string Field::format(FieldElem a) const {
  if (degree_ == 1) return std::to_string(a.code);
  auto c = coords(a);
  std::string out;
  for (int i = degree_ - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) out += std::to_string(c[i]) + "*";
    out += "g";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::optional<FieldElem> solve_additive_residue(const Field& field, FieldElem gamma, FieldElem rhs) {
  const int d = field.degree();
  const long long p = field.p();
  // Columns: images of the coordinate basis under w -> w - gamma*w^q.
  std::vector<std::vector<long long>> a(static_cast<std::size_t>(d), std::vector<long long>(d + 1, 0));
  for (int j = 0; j < d; ++j) {
    std::vector<std::uint32_t> unit(static_cast<std::size_t>(d), 0);
    unit[j] = 1;
    FieldElem e = field.from_coords(unit);
    FieldElem img = field.sub(e, field.mul(gamma, field.frob_q(e, 1)));
    auto col = field.coords(img);
    for (int i = 0; i < d; ++i) a[i][j] = col[i];
  }
  auto b = field.coords(rhs);
  for (int i = 0; i < d; ++i) a[i][d] = b[i];

  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < d && row < d; ++col) {
    int sel = -1;
    for (int r = row; r < d; ++r)
      if (a[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[row], a[sel]);
    long long inv = mod_inverse(a[row][col], p);
    for (int c = 0; c <= d; ++c) a[row][c] = a[row][c] * inv % p;
    for (int r = 0; r < d; ++r) {
      if (r == row || a[r][col] == 0) continue;
      long long factor = a[r][col];
      for (int c = 0; c <= d; ++c) a[r][c] = ((a[r][c] - factor * a[row][c]) % p + p) % p;
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int r = row; r < d; ++r)
    if (a[r][d] != 0) return std::nullopt;
  std::vector<std::uint32_t> sol(static_cast<std::size_t>(d), 0);
  for (int r = 0; r < row; ++r) sol[pivot_col[r]] = static_cast<std::uint32_t>(a[r][d]);
  return field.from_coords(sol);
}

int required_extension_for_residue(const Field& field, FieldElem gamma, FieldElem rhs) {
  if (solve_additive_residue(field, gamma, rhs)) return field.s();
  for (int m = 2;; ++m) {
    const int s2 = field.s() * m;
    long long order = 1;
    bool too_big = false;
    for (int i = 0; i < field.v() * s2; ++i) {
      order *= field.p();
      if (order > static_cast<long long>(Field::kMaxOrder)) {
        too_big = true;
        break;
      }
    }
    if (too_big) return 0;
    auto big = Field::create({field.p(), field.v(), s2, {}});
    // Embed the small field by sending g to a root of its modulus.
    const auto& mod = field.modulus();
    std::optional<FieldElem> theta;
    for (std::uint32_t c = 0; c < big->order() && !theta; ++c) {
      FieldElem acc = big->zero();
      for (std::size_t i = mod.size(); i-- > 0;) acc = big->add(big->mul(acc, {c}), big->from_int(mod[i]));
      if (acc == big->zero()) theta = FieldElem{c};
    }
    if (!theta) return 0;
    auto embed = [&](FieldElem a) {
      auto cs = field.coords(a);
      FieldElem acc = big->zero();
      for (std::size_t i = cs.size(); i-- > 0;) acc = big->add(big->mul(acc, *theta), big->from_int(cs[i]));
      return acc;
    };
    if (solve_additive_residue(*big, embed(gamma), embed(rhs))) return s2;
  }
}

}  // namespace fqlin
