#include "fqlin/io.hpp"

#include <cctype>
#include <limits>

namespace fqlin::io {

namespace {

json big_to_json(const BigInt& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(n);
  return n.str();
}

BigInt big_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (start == s.size()) throw InvalidConfig("malformed integer string");
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw InvalidConfig("malformed integer string \"" + s + "\"");
    return BigInt(s);
  }
  throw InvalidConfig("expected an integer");
}

int int_from_json(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidConfig(std::string("expected an integer for ") + what);
  auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() / 2 || v > std::numeric_limits<int>::max() / 8)
    throw InvalidConfig(std::string(what) + " out of range");
  return static_cast<int>(v);
}

const json& member(const json& j, const char* key) {
  if (!j.is_object()) throw InvalidConfig(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidConfig(std::string("missing \"") + key + "\"");
  return *it;
}

template <class F>
auto wrap_json(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(e.what());
  }
}

// Recursive-descent parser over the expression grammar. Whitespace may appear
// between any two tokens.
class Parser {
 public:
  Parser(FieldPtr field, std::string_view text) : field_(std::move(field)), text_(text) {}

  PerfSeries perf_document() {
    PerfSeries r = perf_expr();
    finish();
    return r;
  }

  CompSeries comp_document() {
    skip();
    std::size_t save = pos_;
    if (peek() == '0') {
      ++pos_;
      skip();
      if (pos_ == text_.size()) return CompSeries::zero(field_);
      pos_ = save;
    }
    CompSeries r = comp_term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        r = r + comp_term();
      } else if (c == '-') {
        ++pos_;
        r = r - comp_term();
      } else {
        break;
      }
    }
    finish();
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what, const std::string& expected) const {
    throw ParseError(what, pos_, expected);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(pos_ < text_.size() ? "unexpected character" : "unexpected end of input", std::string("'") + c + "'");
    ++pos_;
  }

  void finish() {
    if (peek() != '\0') fail("unexpected character", "end of input");
  }

  BigInt uint() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed number", "digit");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ - start > 60) {
      pos_ = start;
      fail("integer too large", "at most 60 digits");
    }
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  BigInt sint() {
    bool neg = false;
    if (peek() == '-') {
      ++pos_;
      neg = true;
    }
    BigInt n = uint();
    return neg ? BigInt(-n) : n;
  }

  int small_int(bool allow_negative) {
    std::size_t start = (skip(), pos_);
    BigInt n = allow_negative ? sint() : uint();
    if (n > 1000000 || n < -1000000) {
      pos_ = start;
      fail("index out of range", "an integer of magnitude at most 10^6");
    }
    return static_cast<int>(n);
  }

  // "^" int | "^" "{" rational "}"; absent means 1.
  Rational exponent() {
    if (peek() != '^') return 1;
    ++pos_;
    if (peek() != '{') return Rational(uint());
    ++pos_;
    BigInt num = sint();
    BigInt den = 1;
    if (peek() == '/') {
      ++pos_;
      std::size_t at = (skip(), pos_);
      den = uint();
      BigInt d = den;
      while (d > 1 && d % field_->p() == 0) d /= field_->p();
      if (den == 0 || d != 1) {
        pos_ = at;
        fail("exponent denominator is not a power of p", "a power of " + std::to_string(field_->p()));
      }
    }
    expect('}');
    return Rational(num, den);
  }

  Int scaled(const Rational& e, std::size_t at) {
    try {
      return to_scaled(*field_, e);
    } catch (const KernelError&) {
      pos_ = at;
      fail("exponent exceeds the perfection depth", "denominator at most p^" + std::to_string(field_->perf_depth()));
    }
  }

  PerfSeries perf_expr() {
    PerfSeries r = perf_term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        r = r + perf_term();
      } else if (c == '-') {
        ++pos_;
        r = r - perf_term();
      } else {
        return r;
      }
    }
  }

  PerfSeries perf_term() {
    if (peek() == 'O') return big_o();
    PerfSeries r = factor();
    while (peek() == '*') {
      ++pos_;
      r = r * factor();
    }
    return r;
  }

  PerfSeries big_o() {
    expect('O');
    expect('(');
    expect('x');
    std::size_t at = pos_;
    Int e = scaled(exponent(), at);
    expect(')');
    return PerfSeries::big_o(field_, e);
  }

  PerfSeries factor() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt n = uint() % field_->p();
      return PerfSeries::constant(field_, field_->from_int(static_cast<long long>(n)));
    }
    if (c == 'g') {
      ++pos_;
      FieldElem a = field_->gen();
      if (peek() == '^') {
        ++pos_;
        a = field_->pow(a, small_int(false));
      }
      return PerfSeries::constant(field_, a);
    }
    if (c == 'x') {
      ++pos_;
      std::size_t at = pos_;
      return PerfSeries::monomial(field_, field_->one(), scaled(exponent(), at));
    }
    if (c == '(') {
      ++pos_;
      PerfSeries r = perf_expr();
      expect(')');
      return r;
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected character", "integer, 'g', 'x' or '('");
  }

  // "t" | "t^[q^" int "]"
  int t_power() {
    expect('t');
    if (peek() != '^') return 0;
    ++pos_;
    expect('[');
    expect('q');
    expect('^');
    int k = small_int(true);
    expect(']');
    return k;
  }

  CompSeries comp_term() {
    if (peek() == 'O') {
      expect('O');
      expect('(');
      int k = t_power();
      expect(')');
      return CompSeries::zero(field_, k - 1);
    }
    std::optional<PerfSeries> coef;
    while (peek() != 't') {
      PerfSeries f = factor();
      coef = coef ? *coef * f : f;
      expect('*');
    }
    int k = t_power();
    if (!coef) return CompSeries::t_power(field_, k);
    if (coef->is_exact_zero()) return CompSeries::zero(field_);
    return CompSeries::monomial(*coef, k);
  }

  FieldPtr field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

json to_json(const FieldConfig& config) {
  return {{"p", config.p}, {"v", config.v}, {"s", config.s}, {"modulus", config.modulus}};
}

FieldConfig field_config_from_json(const json& j) {
  return wrap_json([&] {
    FieldConfig c;
    c.p = int_from_json(member(j, "p"), "p");
    c.v = j.contains("v") ? int_from_json(j["v"], "v") : 1;
    c.s = j.contains("s") ? int_from_json(j["s"], "s") : 1;
    if (j.contains("modulus")) {
      for (const auto& x : j["modulus"]) {
        if (!x.is_number_unsigned()) throw InvalidConfig("modulus coefficients must be non-negative integers");
        c.modulus.push_back(x.get<std::uint32_t>());
      }
    }
    return c;
  });
}

json rational_to_json(const Rational& r, int p) {
  PerfExp e = PerfExp::from_rational(r, p);
  return {{"num", big_to_json(e.num)}, {"den_exp", e.den_exp}};
}

Rational rational_from_json(const json& j, int p) {
  return wrap_json([&] {
    PerfExp e;
    e.num = big_from_json(member(j, "num"));
    e.den_exp = int_from_json(member(j, "den_exp"), "den_exp");
    if (e.den_exp < 0) throw InvalidConfig("den_exp must be non-negative");
    return e.to_rational(p);
  });
}

json to_json(const Field& field, FieldElem a) { return field.coords(a); }

FieldElem elem_from_json(const Field& field, const json& j) {
  return wrap_json([&] {
    if (!j.is_array() || static_cast<int>(j.size()) != field.degree())
      throw InvalidConfig("field element needs " + std::to_string(field.degree()) + " coordinates");
    std::vector<std::uint32_t> c;
    for (const auto& x : j) {
      if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= static_cast<std::uint64_t>(field.p()))
        throw InvalidConfig("field coordinates must lie in [0, p)");
      c.push_back(x.get<std::uint32_t>());
    }
    return field.from_coords(c);
  });
}

json to_json(const PerfSeries& a) {
  const Field& f = *a.field();
  json terms = json::array();
  for (const auto& t : a.terms())
    terms.push_back({{"e", rational_to_json(from_scaled(f, t.exp), f.p())}, {"c", to_json(f, t.coef)}});
  json prec = a.is_exact() ? json("inf") : rational_to_json(from_scaled(f, a.prec()), f.p());
  return {{"prec", prec}, {"terms", terms}};
}

PerfSeries perf_from_json(const FieldPtr& field, const json& j) {
  return wrap_json([&] {
    Int prec = kInfinity;
    const json& pj = member(j, "prec");
    if (!(pj.is_string() && pj == "inf")) prec = to_scaled(*field, rational_from_json(pj, field->p()));
    std::vector<PerfTerm> terms;
    for (const auto& t : member(j, "terms")) {
      Int e = to_scaled(*field, rational_from_json(member(t, "e"), field->p()));
      terms.push_back({e, elem_from_json(*field, member(t, "c"))});
    }
    return PerfSeries::from_terms(field, std::move(terms), prec);
  });
}

json to_json(const CompSeries& a) {
  json terms = json::array();
  for (const auto& t : a.terms()) terms.push_back({{"k", t.k}, {"coef", to_json(t.coef)}});
  return {{"N", a.is_exact() ? json("inf") : json(a.order())}, {"terms", terms}};
}

CompSeries comp_from_json(const FieldPtr& field, const json& j) {
  return wrap_json([&] {
    const json& nj = member(j, "N");
    int order = (nj.is_string() && nj == "inf") ? CompSeries::kExact : int_from_json(nj, "N");
    std::vector<CompTerm> terms;
    for (const auto& t : member(j, "terms"))
      terms.push_back({int_from_json(member(t, "k"), "k"), perf_from_json(field, member(t, "coef"))});
    return CompSeries::from_terms(field, std::move(terms), order);
  });
}

json to_json(const OreFraction& f) { return {{"denom", to_json(f.denom)}, {"numer", to_json(f.numer)}}; }

OreFraction fraction_from_json(const FieldPtr& field, const json& j) {
  return {comp_from_any(field, member(j, "denom")), comp_from_any(field, member(j, "numer"))};
}

std::string emit(const PerfSeries& a) { return a.to_string(); }
std::string emit(const CompSeries& a) { return a.to_string(); }

PerfSeries parse_perf(const FieldPtr& field, std::string_view text) { return Parser(field, text).perf_document(); }
CompSeries parse_comp(const FieldPtr& field, std::string_view text) { return Parser(field, text).comp_document(); }

CompSeries comp_from_any(const FieldPtr& field, const json& j) {
  if (j.is_string()) return parse_comp(field, j.get<std::string>());
  return comp_from_json(field, j);
}

PerfSeries perf_from_any(const FieldPtr& field, const json& j) {
  if (j.is_string()) return parse_perf(field, j.get<std::string>());
  return perf_from_json(field, j);
}

}  // namespace fqlin::io
