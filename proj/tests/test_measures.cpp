#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "semirec/catalogue.hpp"
#include "semirec/error.hpp"
#include "semirec/measure.hpp"
#include "semirec/series.hpp"
#include "semirec/ulam.hpp"

using namespace semirec;

namespace {

MarkovChain chain(std::string_view name) { return MarkovChain::uniform(build_example(name)); }

IntervalSet lower_open_half() { return IntervalSet{Interval::open(0, Rational(1, 2))}; }

// Overlap oracle: entry (i,j) = sum_k p_k |C_i & T_k^-1 C_j| / |C_i|, from exact preimages.
Rational overlap_entry(const MarkovChain& q, std::size_t i, std::size_t j, std::size_t n)
{
    IntervalSet ci{grid_cell(i, n)}, cj{grid_cell(j, n)};
    Rational total;
    for (std::size_t k = 0; k < q.size(); ++k)
        total += q.probs()[k] * length(intersect(ci, preimage(q.generators()[k], cj)));
    return total * Rational(static_cast<std::int64_t>(n));
}

} // namespace

TEST_SUITE("measures")
{
    TEST_CASE("measure_of examples")
    {
        CHECK(measure_of(Measure::lebesgue(), IntervalSet{Interval::open_closed(0, Rational(1, 2))}) == Rational(1, 2));
        CHECK(measure_of(Measure::dirac(0), IntervalSet{Interval::closed_open(0, Rational(1, 8))}) == 1);
        CHECK(measure_of(Measure::dirac(0), IntervalSet{Interval::open_closed(0, 1)}) == 0);
        Measure d = Measure::density({Rational(1, 2), 0, Rational(1, 4), Rational(1, 4)});
        CHECK(measure_of(d, IntervalSet{Interval::closed(0, Rational(1, 8))}) == Rational(1, 4));
        CHECK(measure_of(d, IntervalSet{Interval::closed(Rational(3, 8), Rational(5, 8))}) == Rational(1, 8));
        CHECK_THROWS_AS(Measure::density({Rational(1, 2)}), InvalidArgument);
        CHECK_THROWS_AS(Measure::density({Rational(3, 2), Rational(-1, 2)}), InvalidArgument);
        CHECK(parse_measure("dirac:1/3") == Measure::dirac(Rational(1, 3)));
        CHECK_THROWS_AS(parse_measure("dirac:0.3"), InvalidArgument);
    }

    TEST_CASE("poincare sums: doubling map, Lebesgue")
    {
        auto r = poincare_partial_sums(build_example("doubling")[0], Measure::lebesgue(), lower_open_half(), 10);
        REQUIRE(r.partial_sums.size() == 10);
        for (std::size_t n = 1; n <= 10; ++n)
            CHECK(r.partial_sums[n - 1] == Rational(static_cast<std::int64_t>(n), 2));
        CHECK(r.trend == Trend::linear_growth);
    }

    TEST_CASE("poincare sums: contraction with Dirac at 0")
    {
        auto r = poincare_partial_sums(build_example("eq2-map")[0], Measure::dirac(0), IntervalSet::point(0), 30);
        for (const auto& s : r.partial_sums)
            CHECK(s == 0);
        CHECK(r.trend == Trend::bounded);
    }

    TEST_CASE("poincare sums: contraction, Lebesgue, (1/4,1/2)")
    {
        const PiecewiseMap t = build_example("eq2-map")[0];
        IntervalSet a{Interval::open(Rational(1, 4), Rational(1, 2))};
        // hand iteration: T^-1 A = (1/2,1) since T(1) = 1/2 is outside A, then T^-2 A is empty
        IntervalSet p1 = preimage(t, a);
        CHECK(p1 == IntervalSet{Interval::open(Rational(1, 2), 1)});
        CHECK(preimage(t, p1).empty());
        // with A closed the end point 1 enters, and with it the override point 0
        IntervalSet c1 = preimage(t, IntervalSet{Interval::closed(Rational(1, 4), Rational(1, 2))});
        CHECK(c1 == IntervalSet{Interval::closed(Rational(1, 2), 1)});
        CHECK(preimage(t, c1) == IntervalSet{Interval::point(0), Interval::point(1)});
        auto r = poincare_partial_sums(t, Measure::lebesgue(), a, 12);
        for (std::size_t n = 2; n <= 12; ++n)
            CHECK(r.partial_sums[n - 1] == Rational(1, 2));
        CHECK(r.trend == Trend::bounded);
    }

    TEST_CASE("poincare sums are nondecreasing and vanish on null sets")
    {
        oracle::Random rnd(21);
        for (const auto* name : {"eq2-map", "example1", "example-wu", "doubling", "rotation"}) {
            const PiecewiseMap t = build_example(name, ExampleParams{12, Rational(1)})[0];
            for (int i = 0; i < 10; ++i) {
                IntervalSet a = rnd.set(2);
                auto r = poincare_partial_sums(t, Measure::lebesgue(), a, 15);
                for (std::size_t n = 1; n < r.partial_sums.size(); ++n)
                    CHECK(r.partial_sums[n - 1] <= r.partial_sums[n]);
                auto z = poincare_partial_sums(t, Measure::lebesgue(), IntervalSet::point(rnd.point()), 15);
                for (const auto& s : z.partial_sums)
                    CHECK(s == 0);
            }
        }
    }

    TEST_CASE("chain return sums")
    {
        auto d = chain_return_sums(chain("doubling"), Measure::lebesgue(), lower_open_half(), 10);
        for (const auto& t : d.terms)
            CHECK(t == Rational(1, 4));
        CHECK(d.trend == Trend::linear_growth);
        auto e2 = chain_return_sums(chain("example2"), Measure::lebesgue(), lower_open_half(), 10);
        for (const auto& t : e2.terms)
            CHECK(t == Rational(1, 2));
        CHECK(e2.partial_sums.back() == 5);
        auto z = chain_return_sums(chain("example3"), Measure::lebesgue(), IntervalSet::point(Rational(1, 2)), 6);
        for (const auto& t : z.terms)
            CHECK(t == 0);
    }

    TEST_CASE("naive generator sums include the zeroth term")
    {
        auto r = naive_generator_sums(build_example("example2"), Measure::lebesgue(), lower_open_half(), 4);
        REQUIRE(r.terms.size() == 5);
        CHECK(r.terms[0] == 1);
        auto s = naive_sequence_sums(build_example("example2"), Measure::lebesgue(), lower_open_half(), {0, 1, 0});
        CHECK(s.terms.size() == 3);
    }

    TEST_CASE("trend tags")
    {
        std::vector<Rational> flat(10, Rational(3));
        CHECK(classify_trend(flat, Rational(1, 2)) == Trend::bounded);
        std::vector<Rational> lin;
        for (int n = 1; n <= 10; ++n)
            lin.emplace_back(n);
        Rational slope;
        CHECK(classify_trend(lin, 1, &slope) == Trend::linear_growth);
        CHECK(slope == 1);
        CHECK(classify_trend(lin, 3) == Trend::undetermined);
        CHECK(least_squares_slope(lin) == 1);
    }

    TEST_CASE("ulam matrix examples")
    {
        UlamMatrix id = ulam_matrix(chain("identity"), 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(id.entry(i, j) == (i == j ? 1 : 0));
        UlamMatrix dbl = ulam_matrix(chain("doubling"), 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(dbl.entry(i, j) == Rational(1, 2));
        UlamMatrix e2 = ulam_matrix(chain("example2"), 16);
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t j = 0; j < 16; ++j)
                if ((i < 8) != (j < 8))
                    CHECK(e2.entry(i, j) == 0);
        CHECK_FALSE(valid_bin_count(10));
        CHECK(valid_bin_count(48));
        CHECK_THROWS_AS(ulam_matrix(chain("doubling"), 10), InvalidArgument);
    }

    TEST_CASE("ulam entries match the overlap oracle and rows sum to one")
    {
        for (const auto* name : {"eq2-map", "example1", "example2", "example3", "example4", "doubling", "rotation"}) {
            MarkovChain q = chain(name);
            for (std::size_t n : {6u, 8u, 12u}) {
                UlamMatrix m = ulam_matrix(q, n);
                for (std::size_t i = 0; i < n; ++i) {
                    CHECK(m.row_sum(i) == 1);
                    for (std::size_t j = 0; j < n; ++j)
                        CHECK(m.entry(i, j) == overlap_entry(q, i, j, n));
                }
            }
        }
    }

    TEST_CASE("stationary components")
    {
        auto id = stationary_components(ulam_matrix(chain("identity"), 2), 1e-12);
        REQUIRE(id.size() == 2);
        CHECK(id[0].support.size() == 1);
        CHECK(id[0].weights[0] == 1.0);
        auto dbl = stationary_components(ulam_matrix(chain("doubling"), 2), 1e-12);
        REQUIRE(dbl.size() == 1);
        CHECK(dbl[0].weights[0] == doctest::Approx(0.5));
        auto e2 = stationary_components(ulam_matrix(chain("example2"), 16), 1e-13);
        REQUIRE(e2.size() == 2);
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK(e2[c].support.size() == 8);
            CHECK(e2[c].support.front() == 8 * c);
            for (double w : e2[c].weights)
                CHECK(std::abs(w - 0.125) < 1e-9);
        }
    }

    TEST_CASE("stationary vectors are fixed points")
    {
        for (const auto* name : {"example1", "example2", "example3", "example4", "doubling", "rotation"}) {
            UlamMatrix m = ulam_matrix(chain(name), 24);
            for (const auto& c : stationary_components(m, 1e-12)) {
                std::vector<double> full(m.bins(), 0.0), next(m.bins(), 0.0);
                for (std::size_t k = 0; k < c.support.size(); ++k)
                    full[c.support[k]] = c.weights[k];
                for (std::size_t i = 0; i < m.bins(); ++i)
                    for (const auto& [j, v] : m.row(i))
                        next[j] += full[i] * v.to_double();
                double l1 = 0;
                for (std::size_t i = 0; i < m.bins(); ++i)
                    l1 += std::abs(next[i] - full[i]);
                CHECK(l1 < 1e-9);
            }
        }
    }

    TEST_CASE("doubling map stationary vector is exactly uniform")
    {
        for (std::size_t n : {2u, 4u, 8u, 16u, 64u}) {
            UlamMatrix m = ulam_matrix(chain("doubling"), n);
            std::vector<Rational> u(n, Rational(1, static_cast<std::int64_t>(n)));
            CHECK(m.left_multiply(u) == u);
            auto comps = stationary_components(m, 1e-14);
            REQUIRE(comps.size() == 1);
            for (double w : comps[0].weights)
                CHECK(w == doctest::Approx(1.0 / static_cast<double>(n)));
        }
    }
}
