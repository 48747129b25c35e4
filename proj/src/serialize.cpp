#include "semirec/serialize.hpp"

#include <cctype>
#include <sstream>

#include "semirec/error.hpp"

namespace semirec {

void to_json(nlohmann::json& j, const Rational& r) { j = r.str(); }

void from_json(const nlohmann::json& j, Rational& r)
{
    if (j.is_string())
        r = Rational::parse(j.get<std::string>());
    else if (j.is_number_integer())
        r = Rational(j.get<std::int64_t>());
    else
        throw InvalidArgument("expected a \"p/q\" string, got " + j.dump());
}

void to_json(nlohmann::json& j, const Interval& iv)
{
    j = nlohmann::json{{"lo", iv.lo}, {"hi", iv.hi}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}

void from_json(const nlohmann::json& j, Interval& iv)
{
    if (!j.is_object())
        throw InvalidArgument("interval must be an object, got " + j.dump());
    iv.lo = j.at("lo").get<Rational>();
    iv.hi = j.at("hi").get<Rational>();
    iv.lo_closed = j.value("lo_closed", true);
    iv.hi_closed = j.value("hi_closed", true);
}

void to_json(nlohmann::json& j, const IntervalSet& s)
{
    j = nlohmann::json::array();
    for (const auto& iv : s.intervals())
        j.push_back(iv);
}

void from_json(const nlohmann::json& j, IntervalSet& s)
{
    if (!j.is_array())
        throw InvalidArgument("interval set must be an array of intervals");
    s = IntervalSet(j.get<std::vector<Interval>>());
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

Interval parse_interval(std::string_view t)
{
    t = trim(t);
    if (t.empty())
        throw InvalidArgument("empty interval in set notation");
    if (t.front() == '{') {
        if (t.back() != '}')
            throw InvalidArgument("unterminated point '" + std::string(t) + "'");
        return Interval::point(Rational::parse(t.substr(1, t.size() - 2)));
    }
    bool lo_closed = true, hi_closed = true;
    if (t.front() == '[' || t.front() == '(') {
        lo_closed = t.front() == '[';
        if (t.back() != ']' && t.back() != ')')
            throw InvalidArgument("unterminated interval '" + std::string(t) + "'");
        hi_closed = t.back() == ']';
        t = t.substr(1, t.size() - 2);
    }
    auto comma = t.find(',');
    if (comma == std::string_view::npos)
        throw InvalidArgument("interval needs two end points: '" + std::string(t) + "'");
    Interval iv{Rational::parse(t.substr(0, comma)), Rational::parse(t.substr(comma + 1)), lo_closed, hi_closed};
    if (iv.hi < iv.lo)
        throw InvalidArgument("interval end points out of order: '" + std::string(t) + "'");
    return iv;
}

} // namespace

IntervalSet parse_interval_set(std::string_view text)
{
    text = trim(text);
    if (text.empty() || text == "{}" || text == "empty")
        return {};
    std::vector<Interval> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        bool sep = i == text.size() || text[i] == ';' || text[i] == 'u' || text[i] == 'U';
        if (!sep)
            continue;
        auto piece = trim(text.substr(start, i - start));
        if (!piece.empty())
            parts.push_back(parse_interval(piece));
        start = i + 1;
    }
    return IntervalSet(std::move(parts));
}

std::string format_interval_set(const IntervalSet& s)
{
    std::ostringstream os;
    os << s;
    return os.str();
}

nlohmann::json word_to_json(const Word& w)
{
    auto j = nlohmann::json::array();
    for (auto letter : w)
        j.push_back(letter + 1);
    return j;
}

Word word_from_json(const nlohmann::json& j)
{
    Word w;
    for (const auto& v : j) {
        auto letter = v.get<std::int64_t>();
        if (letter < 1)
            throw InvalidArgument("word letters are 1-based");
        w.push_back(static_cast<std::uint32_t>(letter - 1));
    }
    return w;
}

} // namespace semirec
