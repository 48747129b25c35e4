#pragma once

#include <vector>

#include "semirec/interval_set.hpp"
#include "semirec/rational.hpp"

namespace semirec {

/// Reference probability measure on [0,1].
class Measure {
public:
    enum class Kind { lebesgue, dirac, density };

    static Measure lebesgue() { return Measure(Kind::lebesgue, {}, {}); }
    static Measure dirac(Rational point);
    /// Piecewise-constant density on n equal cells [i/n,(i+1)/n); weights are cell masses.
    static Measure density(std::vector<Rational> weights);
    /// Uniform density restricted to `cells` (indices into an n-cell grid).
    static Measure uniform_on(std::size_t n_cells, std::size_t first, std::size_t last);

    Kind kind() const noexcept { return kind_; }
    const Rational& point() const noexcept { return point_; }
    const std::vector<Rational>& weights() const noexcept { return weights_; }
    std::size_t cells() const noexcept { return weights_.size(); }

    friend bool operator==(const Measure&, const Measure&) = default;

private:
    Measure(Kind k, Rational p, std::vector<Rational> w) : kind_(k), point_(std::move(p)), weights_(std::move(w)) {}

    Kind kind_;
    Rational point_;
    std::vector<Rational> weights_;
};

/// Cell [i/n,(i+1)/n) of an n-cell grid; the last cell is closed at 1.
Interval grid_cell(std::size_t i, std::size_t n);
/// Index of the cell of an n-cell grid holding x.
std::size_t grid_cell_of(const Rational& x, std::size_t n);

Rational measure_of(const Measure& m, const IntervalSet& s);

/// Parses "lebesgue", "dirac:p/q" or "density:w1,w2,...".
Measure parse_measure(std::string_view spec);
std::string describe(const Measure& m);

} // namespace semirec
