#pragma once

#include <string>
#include <vector>

#include "semirec/markov_chain.hpp"
#include "semirec/measure.hpp"

namespace semirec {

enum class Trend { linear_growth, bounded, undetermined };
std::string to_string(Trend t);

/// Terms and partial sums of a finite piece of a series, with a growth tag.
struct SeriesReport {
    std::vector<Rational> terms;
    std::vector<Rational> partial_sums;
    Rational reference_mass;
    Rational slope;
    Trend trend = Trend::undetermined;
};

/// Least-squares slope of (n, sums[n-1]).
Rational least_squares_slope(const std::vector<Rational>& sums);

/// bounded: constant over the last half. linear-growth: slope >= reference/2 with reference > 0.
Trend classify_trend(const std::vector<Rational>& sums, const Rational& reference_mass, Rational* slope = nullptr);

/// Terms m(T^-n A), n = 1..N.
SeriesReport poincare_partial_sums(const PiecewiseMap& t, const Measure& m, const IntervalSet& a, std::size_t n);

/// Terms m(Q^-n(A) & A), n = 1..N.
SeriesReport chain_return_sums(const MarkovChain& q, const Measure& m, const IntervalSet& a, std::size_t n);

/// Terms sum_i m(T_i^-n A), n = 0..N (the per-generator autonomous condition).
SeriesReport naive_generator_sums(const GeneratorSet& g, const Measure& m, const IntervalSet& a, std::size_t n);

/// Terms m((T_{i_n} o ... o T_{i_1})^-1 A), n = 1..len(indices).
SeriesReport naive_sequence_sums(const GeneratorSet& g, const Measure& m, const IntervalSet& a,
                                 const Word& indices);

} // namespace semirec
