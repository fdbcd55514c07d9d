#include "fqlin/comp_series.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fqlin {

int order_add(int a, int b) {
  if (a >= CompSeries::kExact || b >= CompSeries::kExact) return CompSeries::kExact;
  long long r = static_cast<long long>(a) + b;
  return static_cast<int>(std::min<long long>(r, CompSeries::kExact));
}

CompSeries CompSeries::identity(FieldPtr field) { return t_power(std::move(field), 0); }

CompSeries CompSeries::monomial(const PerfSeries& c, int k) {
  CompSeries s(c.field());
  if (!c.is_exact_zero()) s.terms_.push_back({k, c});
  return s;
}

CompSeries CompSeries::t_power(FieldPtr field, int k) { return monomial(PerfSeries::one(std::move(field)), k); }

CompSeries CompSeries::from_terms(FieldPtr field, std::vector<CompTerm> terms, int order) {
  std::stable_sort(terms.begin(), terms.end(), [](const CompTerm& a, const CompTerm& b) { return a.k < b.k; });
  CompSeries s(std::move(field), order);
  for (auto& t : terms) {
    require_same_field(s.field_, t.coef.field());
    if (t.k > order) break;
    if (!s.terms_.empty() && s.terms_.back().k == t.k) {
      s.terms_.back().coef = s.terms_.back().coef + t.coef;
      if (s.terms_.back().coef.is_exact_zero()) s.terms_.pop_back();
      continue;
    }
    if (!t.coef.is_exact_zero()) s.terms_.push_back(std::move(t));
  }
  return s;
}

std::optional<int> CompSeries::min_k() const {
  for (const auto& t : terms_)
    if (!t.coef.is_zero()) return t.k;
  return std::nullopt;
}

int CompSeries::low_index() const {
  if (!terms_.empty()) return terms_.front().k;
  return order_add(order_, 1);
}

std::optional<int> CompSeries::max_k() const {
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    if (!it->coef.is_zero()) return it->k;
  return std::nullopt;
}

bool CompSeries::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const CompTerm& t) { return t.coef.is_zero(); });
}

PerfSeries CompSeries::coef(int k) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const CompTerm& t, int kk) { return t.k < kk; });
  if (it != terms_.end() && it->k == k) return it->coef;
  return PerfSeries::zero(field_);
}

CompSeries CompSeries::truncated(int new_order) const {
  if (new_order >= order_) return *this;
  CompSeries s(field_, new_order);
  for (const auto& t : terms_) {
    if (t.k > new_order) break;
    s.terms_.push_back(t);
  }
  return s;
}

CompSeries CompSeries::operator-() const {
  CompSeries s = *this;
  for (auto& t : s.terms_) t.coef = -t.coef;
  return s;
}

CompSeries CompSeries::scaled_left(const PerfSeries& gamma) const {
  std::vector<CompTerm> out;
  for (const auto& t : terms_) out.push_back({t.k, gamma * t.coef});
  return from_terms(field_, std::move(out), order_);
}

CompSeries CompSeries::scaled_right(const PerfSeries& gamma) const {
  std::vector<CompTerm> out;
  for (const auto& t : terms_) out.push_back({t.k, t.coef * frobenius(gamma, t.k)});
  return from_terms(field_, std::move(out), order_);
}

CompSeries operator+(const CompSeries& a, const CompSeries& b) {
  require_same_field(a.field_, b.field_);
  const int order = std::min(a.order_, b.order_);
  std::vector<CompTerm> out;
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    CompTerm t;
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].k < b.terms_[j].k)) {
      t = a.terms_[i++];
    } else if (i == a.terms_.size() || b.terms_[j].k < a.terms_[i].k) {
      t = b.terms_[j++];
    } else {
      t = {a.terms_[i].k, a.terms_[i].coef + b.terms_[j].coef};
      ++i;
      ++j;
    }
    if (t.k > order) break;
    if (!t.coef.is_exact_zero()) out.push_back(std::move(t));
  }
  CompSeries s(a.field_, order);
  s.terms_ = std::move(out);
  return s;
}

CompSeries operator-(const CompSeries& a, const CompSeries& b) { return a + (-b); }

bool operator==(const CompSeries& a, const CompSeries& b) {
  if (a.order_ != b.order_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].k != b.terms_[i].k || !(a.terms_[i].coef == b.terms_[i].coef)) return false;
  return true;
}

CompSeries compose(const CompSeries& a, const CompSeries& b) {
  require_same_field(a.field(), b.field());
  const int order = std::min(order_add(a.order(), b.low_index()), order_add(b.order(), a.low_index()));
  std::map<int, PerfSeries> acc;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      const int l = ta.k + tb.k;
      if (l > order) break;
      PerfSeries prod = ta.coef * frobenius(tb.coef, ta.k);
      auto it = acc.find(l);
      if (it == acc.end())
        acc.emplace(l, std::move(prod));
      else
        it->second = it->second + prod;
    }
  }
  std::vector<CompTerm> out;
  out.reserve(acc.size());
  for (auto& [l, c] : acc) out.push_back({l, std::move(c)});
  return CompSeries::from_terms(a.field(), std::move(out), order);
}

CompSeries self_power(const CompSeries& z, int k) {
  if (k < 1) throw std::invalid_argument("self_power needs k >= 1");
  CompSeries r = z;
  for (int i = 1; i < k; ++i) r = compose(z, r);
  return r;
}

SelfCompositionTable::SelfCompositionTable(FieldPtr field, int max_power, int max_index, int low)
    : field_(field),
      max_power_(max_power),
      max_index_(max_index),
      low_(std::max(low, 1)),
      memo_(static_cast<std::size_t>(max_power) + 1,
            std::vector<std::optional<PerfSeries>>(static_cast<std::size_t>(std::max(max_index, 0)) + 1)),
      zero_(PerfSeries::zero(field)) {}

void SelfCompositionTable::push(PerfSeries c) {
  require_same_field(field_, c.field());
  c_.push_back(std::move(c));
}

const PerfSeries& SelfCompositionTable::get(int k, int l) {
  if (k < 1 || k > max_power_ || l > max_index_) throw std::out_of_range("composition table index");
  if (l < k * low_) return zero_;
  if (l - (k - 1) * low_ > known())
    throw std::logic_error("composition table entry depends on unknown coefficients");
  if (k == 1) return coefficient(l);
  auto& slot = memo_[k][l];
  if (!slot) {
    PerfSeries sum = PerfSeries::zero(field_);
    for (int n = low_; n <= l - (k - 1) * low_; ++n) {
      const PerfSeries& cn = coefficient(n);
      if (cn.is_exact_zero()) continue;
      const PerfSeries& inner = get(k - 1, l - n);
      if (inner.is_exact_zero()) continue;
      sum = sum + cn * frobenius(inner, n);
    }
    slot = std::move(sum);
  }
  return *slot;
}

PerfSeries multinomial_coeff(int l, int k, const std::vector<PerfSeries>& c) {
  if (c.empty()) throw std::invalid_argument("multinomial_coeff needs coefficients");
  const FieldPtr& field = c.front().field();
  if (k < 1 || l < k) return PerfSeries::zero(field);
  SelfCompositionTable table(field, k, l);
  for (int n = 1; n <= l - k + 1; ++n)
    table.push(n < static_cast<int>(c.size()) ? c[n] : PerfSeries::zero(field));
  return table.get(k, l);
}

bool equal_to_precision(const CompSeries& a, const CompSeries& b) {
  const int order = std::min(a.order(), b.order());
  CompSeries d = (a - b).truncated(order);
  return d.is_zero();
}

std::string CompSeries::to_string() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    const PerfSeries& c = t.coef;
    std::string tpart = t.k == 0 ? "t" : "t^[q^" + std::to_string(t.k) + "]";
    if (c == PerfSeries::one(field_)) {
      out += tpart;
      continue;
    }
    std::string cs = c.to_string();
    bool single = c.is_exact() && c.terms().size() == 1 && cs.find(" + ") == std::string::npos &&
                  cs.find('(') == std::string::npos;
    out += (single ? cs : "(" + cs + ")") + "*" + tpart;
  }
  if (!is_exact()) {
    if (!out.empty()) out += " + ";
    out += "O(t^[q^" + std::to_string(order_ + 1) + "])";
  }
  return out.empty() ? "0" : out;
}

}  // namespace fqlin
