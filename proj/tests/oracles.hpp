#pragma once
// Brute-force reference computations shared by the unit and acceptance tests.
// Only PiecewiseMap::eval and Rational arithmetic are trusted here.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "semirec/interval_set.hpp"
#include "semirec/piecewise_map.hpp"
#include "semirec/rational.hpp"

namespace oracle {

using semirec::Interval;
using semirec::IntervalSet;
using semirec::PiecewiseMap;
using semirec::Rational;

struct Cell {
    Rational mass;
    mpz_class words = 0;
};

// Endpoint distribution over all d^n words, each word weighted by the product of its letters' probabilities.
inline std::map<Rational, Cell> enumerate_words(const std::vector<PiecewiseMap>& g, const std::vector<Rational>& p,
                                                const Rational& x, std::size_t n)
{
    std::map<Rational, Cell> out;
    std::vector<std::uint32_t> w(n, 0);
    const std::size_t d = g.size();
    while (true) {
        Rational y = x;
        Rational m(1);
        for (auto k : w) {
            y = g[k].eval(y);
            m *= p[k];
        }
        auto& c = out[y];
        c.mass += m;
        c.words += 1;
        std::size_t i = 0;
        while (i < n && ++w[i] == d)
            w[i++] = 0;
        if (i == n)
            break;
    }
    return out;
}

inline std::vector<Rational> orbit(const PiecewiseMap& t, Rational x, std::size_t n)
{
    std::vector<Rational> o{x};
    for (std::size_t i = 0; i < n; ++i) {
        x = t.eval(x);
        o.push_back(x);
    }
    return o;
}

// Pointwise membership of a union of intervals, no normalization.
inline bool raw_contains(const std::vector<Interval>& parts, const Rational& x)
{
    for (const auto& iv : parts)
        if (iv.contains(x))
            return true;
    return false;
}

class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

    // k/q in [0,1] with q drawn from a small mixed set of denominators.
    Rational point()
    {
        static const std::int64_t dens[] = {2, 3, 4, 6, 8, 12, 16, 24, 32, 64, 7, 10, 100, 1024};
        std::int64_t q = dens[below(std::size(dens))];
        return Rational(static_cast<std::int64_t>(below(static_cast<std::uint64_t>(q) + 1)), q);
    }

    Rational dyadic(int bits)
    {
        std::int64_t q = std::int64_t{1} << bits;
        return Rational(static_cast<std::int64_t>(below(static_cast<std::uint64_t>(q) + 1)), q);
    }

    Interval interval()
    {
        Rational a = point(), b = point();
        if (b < a)
            std::swap(a, b);
        if (a == b)
            return Interval::point(a);
        return Interval{a, b, below(2) == 0, below(2) == 0};
    }

    std::vector<Interval> raw_set(std::size_t max_pieces = 4)
    {
        std::vector<Interval> v;
        std::size_t k = below(max_pieces + 1);
        for (std::size_t i = 0; i < k; ++i)
            v.push_back(interval());
        return v;
    }

    IntervalSet set(std::size_t max_pieces = 4) { return IntervalSet(raw_set(max_pieces)); }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Set-valued iteration on {0..M-1} with std::set, independent of the bitmask code.
inline std::set<std::size_t> step(const std::vector<std::set<std::size_t>>& g, const std::set<std::size_t>& s)
{
    std::set<std::size_t> out;
    for (auto i : s)
        out.insert(g[i].begin(), g[i].end());
    return out;
}

// Smallest n <= limit with some w in G^n({w}), scanning w in increasing order for each n.
inline std::pair<std::size_t, std::size_t> first_self_return(const std::vector<std::set<std::size_t>>& g,
                                                             std::size_t limit)
{
    for (std::size_t n = 1; n <= limit; ++n)
        for (std::size_t w = 0; w < g.size(); ++w) {
            std::set<std::size_t> s{w};
            for (std::size_t k = 0; k < n; ++k)
                s = step(g, s);
            if (s.count(w))
                return {w, n};
        }
    return {g.size(), 0};
}

} // namespace oracle
