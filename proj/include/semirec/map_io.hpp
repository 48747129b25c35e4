#pragma once

#include <filesystem>

#include <json.hpp>

#include "semirec/piecewise_map.hpp"

namespace semirec {

/// Map definition format:
/// {"label": "...", "pieces": [{"domain": {...}, "coeffs": ["c0","c1",...]}],
///  "overrides": [{"point": "p/q", "value": "p/q"}], "circle": false}
nlohmann::json map_to_json(const PiecewiseMap& map);
PiecewiseMap map_from_json(const nlohmann::json& j);
PiecewiseMap load_map_file(const std::filesystem::path& path);

} // namespace semirec
