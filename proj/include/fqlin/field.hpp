#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqlin/numeric.hpp"

namespace fqlin {

// Residue field F_{q^s}, q = p^v, presented as F_p[g]/(modulus) with a single
// irreducible modulus of degree v*s. F_q is the subfield fixed by a -> a^q.
struct FieldConfig {
  int p = 2;
  int v = 1;
  int s = 1;
  // Ascending coefficients, monic, degree v*s. Empty selects the default
  // modulus (see Field::default_modulus).
  std::vector<std::uint32_t> modulus;
};

// Element of F_{q^s}; code = sum coords[i] * p^i.
struct FieldElem {
  std::uint32_t code = 0;

  friend bool operator==(FieldElem, FieldElem) = default;
  friend auto operator<=>(FieldElem, FieldElem) = default;
};

struct PrecisionOptions {
  // Maximum exponent of p in series exponent denominators; <0 means 8*v.
  int perf_depth = -1;
  // Relative x-adic precision used when inverting exact series.
  Rational rel_prec = 16;
};

// Shared, immutable arithmetic context: the residue field plus the precision
// model (perfection depth and default relative precision) that every series
// built over it uses.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 20;

  static std::shared_ptr<const Field> create(FieldConfig config, PrecisionOptions options = {});

  // Smallest monic irreducible polynomial of the given degree over F_p, ordered
  // by the integer sum c_i p^i of its non-leading coefficients.
  static std::vector<std::uint32_t> default_modulus(int p, int degree);
  static bool is_irreducible(int p, std::span<const std::uint32_t> poly);

  int p() const { return config_.p; }
  int v() const { return config_.v; }
  int s() const { return config_.s; }
  int degree() const { return degree_; }
  Int q() const { return q_; }
  std::uint32_t order() const { return order_; }
  const FieldConfig& config() const { return config_; }
  const std::vector<std::uint32_t>& modulus() const { return config_.modulus; }

  int perf_depth() const { return perf_depth_; }
  // p^perf_depth: series exponents are stored as integers in units of 1/scale.
  Int scale() const { return scale_; }
  Int rel_prec_scaled() const { return rel_prec_scaled_; }
  const Rational& rel_prec() const { return rel_prec_; }

  bool same_as(const Field& other) const;

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }
  // The class of g; zero when degree = 1 and the modulus is g.
  FieldElem gen() const;
  FieldElem from_int(long long n) const;
  FieldElem from_coords(std::span<const std::uint32_t> coords) const;
  std::vector<std::uint32_t> coords(FieldElem a) const;
  bool valid(FieldElem a) const { return a.code < order_; }

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  // a^n for any integer n (a != 0 when n < 0).
  FieldElem pow(FieldElem a, Int n) const;
  // a^(p^e) for any integer e; negative e is the inverse Frobenius.
  FieldElem frob(FieldElem a, long long e) const;
  // a^(q^e) = frob(a, v*e).
  FieldElem frob_q(FieldElem a, long long e) const { return frob(a, static_cast<long long>(config_.v) * e); }

  bool in_base_field(FieldElem a) const { return frob_q(a, 1) == a; }
  // Elements of F_q in increasing code order.
  std::vector<FieldElem> base_field_elements() const;
  FieldElem primitive() const { return {exp_[1 % exp_.size()]}; }

  // Polynomial in g, highest power first, e.g. "g^2+g+1" or "2*g+1".
  std::string format(FieldElem a) const;

 private:
  Field() = default;

  FieldConfig config_;
  int degree_ = 1;
  Int q_ = 2;
  std::uint32_t order_ = 2;
  int perf_depth_ = 8;
  Int scale_ = 1;
  Rational rel_prec_ = 16;
  Int rel_prec_scaled_ = 16;
  std::vector<std::uint32_t> pow_p_;    // p^i for digit extraction
  std::vector<std::uint32_t> exp_;      // exp_[i] = primitive^i, i < order-1
  std::vector<std::uint32_t> log_;      // log_[code], undefined for 0
};

using FieldPtr = std::shared_ptr<const Field>;

// Solve the F_p-linear system  w - gamma * w^q = rhs  for w in the field.
// Returns the solution with all free coordinates zero, or nullopt when rhs is
// not in the image.
std::optional<FieldElem> solve_additive_residue(const Field& field, FieldElem gamma, FieldElem rhs);

// Smallest s' (a multiple of field.s()) such that w - gamma*w^q = rhs becomes
// solvable in F_{q^s'}; 0 if none was found within Field::kMaxOrder.
int required_extension_for_residue(const Field& field, FieldElem gamma, FieldElem rhs);

}  // namespace fqlin
