#include "semirec/map_io.hpp"

#include <fstream>

#include "semirec/error.hpp"
#include "semirec/serialize.hpp"

namespace semirec {

nlohmann::json map_to_json(const PiecewiseMap& map)
{
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& pc : map.pieces()) {
        std::vector<Rational> coeffs = pc.poly.coeffs();
        if (coeffs.empty())
            coeffs.push_back(Rational());
        pieces.push_back({{"domain", pc.domain}, {"coeffs", coeffs}});
    }
    nlohmann::json overrides = nlohmann::json::array();
    for (const auto& [pt, val] : map.overrides())
        overrides.push_back({{"point", pt}, {"value", val}});
    return {{"label", map.label()}, {"pieces", pieces}, {"overrides", overrides}, {"circle", map.circle()}};
}

PiecewiseMap map_from_json(const nlohmann::json& j)
{
    try {
        std::vector<Piece> pieces;
        for (const auto& p : j.at("pieces"))
            pieces.push_back(Piece{p.at("domain").get<Interval>(), Polynomial(p.at("coeffs").get<std::vector<Rational>>())});
        std::map<Rational, Rational> overrides;
        if (j.contains("overrides"))
            for (const auto& o : j.at("overrides"))
                overrides[o.at("point").get<Rational>()] = o.at("value").get<Rational>();
        return PiecewiseMap(j.value("label", std::string("user-map")), std::move(pieces), std::move(overrides),
                            j.value("circle", false));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed map definition: ") + e.what());
    }
}

PiecewiseMap load_map_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open map file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("map file " + path.string() + " is not valid JSON: " + e.what());
    }
    return map_from_json(j);
}

} // namespace semirec
