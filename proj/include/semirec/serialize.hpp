#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "semirec/interval_set.hpp"
#include "semirec/piecewise_map.hpp"
#include "semirec/rational.hpp"

namespace semirec {

// Rationals travel as "p/q" strings; intervals as {"lo","hi","lo_closed","hi_closed"}.
void to_json(nlohmann::json& j, const Rational& r);
void from_json(const nlohmann::json& j, Rational& r);
void to_json(nlohmann::json& j, const Interval& iv);
void from_json(const nlohmann::json& j, Interval& iv);
void to_json(nlohmann::json& j, const IntervalSet& s);
void from_json(const nlohmann::json& j, IntervalSet& s);

/// Compact set notation: "[0,1/2) u {3/4}", "(0,1]", "a,b" (closed) or "{}" (empty).
IntervalSet parse_interval_set(std::string_view text);
std::string format_interval_set(const IntervalSet& s);

/// 1-based index array, as written in reports.
nlohmann::json word_to_json(const Word& w);
Word word_from_json(const nlohmann::json& j);

} // namespace semirec
