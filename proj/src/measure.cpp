#include "semirec/measure.hpp"

#include <sstream>

#include "semirec/error.hpp"

namespace semirec {

Measure Measure::dirac(Rational point)
{
    if (point.sign() < 0 || point > Rational(1))
        throw InvalidArgument("Dirac point outside [0,1]: " + point.str());
    return Measure(Kind::dirac, std::move(point), {});
}

Measure Measure::density(std::vector<Rational> weights)
{
    if (weights.empty())
        throw InvalidArgument("density needs at least one cell");
    Rational total;
    for (const auto& w : weights) {
        if (w.sign() < 0)
            throw InvalidArgument("density weights must be nonnegative");
        total += w;
    }
    if (total != Rational(1))
        throw InvalidArgument("density weights sum to " + total.str() + ", expected 1");
    return Measure(Kind::density, {}, std::move(weights));
}

Measure Measure::uniform_on(std::size_t n_cells, std::size_t first, std::size_t last)
{
    if (first > last || last >= n_cells)
        throw InvalidArgument("uniform_on: bad cell range");
    std::vector<Rational> w(n_cells);
    Rational each(1, static_cast<std::int64_t>(last - first + 1));
    for (std::size_t i = first; i <= last; ++i)
        w[i] = each;
    return density(std::move(w));
}

Interval grid_cell(std::size_t i, std::size_t n)
{
    auto nn = static_cast<std::int64_t>(n);
    auto ii = static_cast<std::int64_t>(i);
    return Interval{Rational(ii, nn), Rational(ii + 1, nn), true, i + 1 == n};
}

std::size_t grid_cell_of(const Rational& x, std::size_t n)
{
    Rational scaled = x * Rational(static_cast<std::int64_t>(n));
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.numerator().get_mpz_t(), scaled.denominator().get_mpz_t());
    long idx = q.get_si();
    if (idx < 0)
        idx = 0;
    if (static_cast<std::size_t>(idx) >= n)
        idx = static_cast<long>(n) - 1;
    return static_cast<std::size_t>(idx);
}

Rational measure_of(const Measure& m, const IntervalSet& s)
{
    switch (m.kind()) {
    case Measure::Kind::lebesgue:
        return length(s);
    case Measure::Kind::dirac:
        return s.contains(m.point()) ? Rational(1) : Rational(0);
    case Measure::Kind::density: {
        Rational total;
        std::size_t n = m.cells();
        auto cell_len = Rational(1, static_cast<std::int64_t>(n));
        for (const auto& iv : s.intervals()) {
            std::size_t first = grid_cell_of(iv.lo, n);
            std::size_t last = grid_cell_of(iv.hi, n);
            for (std::size_t c = first; c <= last; ++c) {
                if (m.weights()[c].is_zero())
                    continue;
                if (auto part = intersect(iv, grid_cell(c, n)))
                    total += m.weights()[c] * part->length() / cell_len;
            }
        }
        return total;
    }
    }
    return {};
}

Measure parse_measure(std::string_view spec)
{
    if (spec == "lebesgue")
        return Measure::lebesgue();
    if (spec.starts_with("dirac:"))
        return Measure::dirac(Rational::parse(spec.substr(6)));
    if (spec.starts_with("density:")) {
        std::vector<Rational> w;
        std::string rest(spec.substr(8));
        std::istringstream is(rest);
        std::string tok;
        while (std::getline(is, tok, ','))
            w.push_back(Rational::parse(tok));
        return Measure::density(std::move(w));
    }
    throw InvalidArgument("unknown measure '" + std::string(spec) + "' (lebesgue | dirac:p/q | density:w,...)");
}

std::string describe(const Measure& m)
{
    switch (m.kind()) {
    case Measure::Kind::lebesgue:
        return "lebesgue";
    case Measure::Kind::dirac:
        return "dirac:" + m.point().str();
    case Measure::Kind::density: {
        std::string s = "density:";
        for (std::size_t i = 0; i < m.cells(); ++i)
            s += (i ? "," : "") + m.weights()[i].str();
        return s;
    }
    }
    return {};
}

} // namespace semirec
