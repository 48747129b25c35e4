#include "semirec/series.hpp"

#include "semirec/error.hpp"

namespace semirec {

std::string to_string(Trend t)
{
    switch (t) {
    case Trend::linear_growth:
        return "linear-growth";
    case Trend::bounded:
        return "bounded";
    case Trend::undetermined:
        break;
    }
    return "undetermined";
}

Rational least_squares_slope(const std::vector<Rational>& sums)
{
    const auto n = static_cast<std::int64_t>(sums.size());
    if (n < 2)
        return Rational();
    Rational mean_x(n + 1, 2);
    Rational mean_y;
    for (const auto& s : sums)
        mean_y += s;
    mean_y /= Rational(n);
    Rational num, den;
    for (std::int64_t i = 0; i < n; ++i) {
        Rational dx = Rational(i + 1) - mean_x;
        num += dx * (sums[i] - mean_y);
        den += dx * dx;
    }
    return num / den;
}

Trend classify_trend(const std::vector<Rational>& sums, const Rational& reference_mass, Rational* slope)
{
    Rational s = least_squares_slope(sums);
    if (slope)
        *slope = s;
    if (sums.empty())
        return Trend::undetermined;
    std::size_t half = sums.size() / 2;
    bool flat = true;
    for (std::size_t i = half; i < sums.size(); ++i)
        if (sums[i] != sums.back())
            flat = false;
    if (flat && sums.size() >= 2)
        return Trend::bounded;
    if (reference_mass.sign() > 0 && s >= reference_mass / Rational(2))
        return Trend::linear_growth;
    return Trend::undetermined;
}

namespace {

SeriesReport finish(std::vector<Rational> terms, Rational reference)
{
    SeriesReport r;
    r.terms = std::move(terms);
    Rational acc;
    for (const auto& t : r.terms) {
        acc += t;
        r.partial_sums.push_back(acc);
    }
    r.reference_mass = std::move(reference);
    r.trend = classify_trend(r.partial_sums, r.reference_mass, &r.slope);
    return r;
}

void require_horizon(std::size_t n)
{
    if (n == 0)
        throw InvalidArgument("series horizon must be at least 1");
}

} // namespace

SeriesReport poincare_partial_sums(const PiecewiseMap& t, const Measure& m, const IntervalSet& a, std::size_t n)
{
    require_horizon(n);
    if (!t.is_affine())
        throw UnsupportedOperation("Poincare series needs an affine map (exact preimages)");
    std::vector<Rational> terms;
    IntervalSet pre = a;
    for (std::size_t k = 1; k <= n; ++k) {
        pre = preimage(t, pre);
        terms.push_back(measure_of(m, pre));
    }
    return finish(std::move(terms), measure_of(m, a));
}

SeriesReport chain_return_sums(const MarkovChain& q, const Measure& m, const IntervalSet& a, std::size_t n)
{
    require_horizon(n);
    if (!q.is_affine())
        throw UnsupportedOperation("chain return series needs affine generators (exact preimages)");
    q.require_non_degenerate("chain_return_sums");
    std::vector<Rational> terms;
    IntervalSet pre = a;
    for (std::size_t k = 1; k <= n; ++k) {
        pre = q_preimage(q, pre, 1);
        terms.push_back(measure_of(m, intersect(pre, a)));
    }
    return finish(std::move(terms), measure_of(m, a));
}

SeriesReport naive_generator_sums(const GeneratorSet& g, const Measure& m, const IntervalSet& a, std::size_t n)
{
    if (!g.is_affine())
        throw UnsupportedOperation("naive series needs affine generators (exact preimages)");
    std::vector<IntervalSet> pre(g.size(), a);
    std::vector<Rational> terms;
    for (std::size_t k = 0; k <= n; ++k) {
        Rational term;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (k > 0)
                pre[i] = preimage(g[i], pre[i]);
            term += measure_of(m, pre[i]);
        }
        terms.push_back(std::move(term));
    }
    return finish(std::move(terms), measure_of(m, a));
}

SeriesReport naive_sequence_sums(const GeneratorSet& g, const Measure& m, const IntervalSet& a,
                                 const Word& indices)
{
    require_horizon(indices.size());
    if (!g.is_affine())
        throw UnsupportedOperation("naive series needs affine generators (exact preimages)");
    check_word(indices, g.size());
    std::vector<Rational> terms;
    for (std::size_t n = 1; n <= indices.size(); ++n) {
        IntervalSet pre = a;
        for (std::size_t k = n; k-- > 0;)
            pre = preimage(g[indices[k]], pre);
        terms.push_back(measure_of(m, pre));
    }
    return finish(std::move(terms), measure_of(m, a));
}

} // namespace semirec
