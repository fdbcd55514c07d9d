#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "fqlin/units_ore.hpp"

namespace fqlin::io {

using json = nlohmann::json;

// JSON documents. Exponents and precisions are {"num": n, "den_exp": e}
// meaning n / p^e; "inf" marks an exact value. Integers that leave the 64-bit
// range are written as decimal strings.
json to_json(const FieldConfig& config);
FieldConfig field_config_from_json(const json& j);

json rational_to_json(const Rational& r, int p);
Rational rational_from_json(const json& j, int p);

json to_json(const Field& field, FieldElem a);
FieldElem elem_from_json(const Field& field, const json& j);

json to_json(const PerfSeries& a);
PerfSeries perf_from_json(const FieldPtr& field, const json& j);

json to_json(const CompSeries& a);
CompSeries comp_from_json(const FieldPtr& field, const json& j);

json to_json(const OreFraction& f);
OreFraction fraction_from_json(const FieldPtr& field, const json& j);

// Expression syntax (see README for the grammar). emit() output parses back
// to a structurally equal value.
std::string emit(const PerfSeries& a);
std::string emit(const CompSeries& a);

PerfSeries parse_perf(const FieldPtr& field, std::string_view text);
CompSeries parse_comp(const FieldPtr& field, std::string_view text);

// A CompSeries given either as a JSON object or as an expression string.
CompSeries comp_from_any(const FieldPtr& field, const json& j);
PerfSeries perf_from_any(const FieldPtr& field, const json& j);

}  // namespace fqlin::io
