#pragma once

#include <string>
#include <utility>
#include <vector>

#include "semirec/markov_chain.hpp"

namespace semirec {

/// Row-stochastic matrix of the chain projected onto n equal bins, stored by rows.
class UlamMatrix {
public:
    using Row = std::vector<std::pair<std::size_t, Rational>>;

    UlamMatrix(std::size_t n_bins, std::vector<Row> rows);

    std::size_t bins() const noexcept { return rows_.size(); }
    /// Nonzero entries of row i, sorted by column.
    const Row& row(std::size_t i) const { return rows_.at(i); }
    Rational entry(std::size_t i, std::size_t j) const;
    Rational row_sum(std::size_t i) const;

    /// v M for a row vector v.
    std::vector<Rational> left_multiply(const std::vector<Rational>& v) const;

    /// Matrix-market coordinate text; values as "p/q".
    std::string matrix_market() const;

private:
    std::vector<Row> rows_;
};

/// Accepts bin counts of the form 2^a 3^b.
bool valid_bin_count(std::size_t n);

UlamMatrix ulam_matrix(const MarkovChain& q, std::size_t n_bins);

struct StationaryComponent {
    std::vector<std::size_t> support;
    std::vector<double> weights;
    double residual = 0;
    std::size_t iterations = 0;
};

/// One stationary vector per closed communicating class, by lazy power iteration.
std::vector<StationaryComponent> stationary_components(const UlamMatrix& m, double tol,
                                                       std::size_t max_iterations = 1'000'000);

} // namespace semirec
