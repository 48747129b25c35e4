#pragma once

#include <span>
#include <string>
#include <vector>

#include "semirec/piecewise_map.hpp"

namespace semirec {

/// Generators T_1..T_d of a free semigroup of interval maps.
class GeneratorSet {
public:
    explicit GeneratorSet(std::vector<PiecewiseMap> maps);

    std::size_t size() const noexcept { return maps_.size(); }
    const PiecewiseMap& operator[](std::size_t i) const { return maps_.at(i); }
    std::span<const PiecewiseMap> maps() const noexcept { return maps_; }
    std::vector<std::string> labels() const;
    bool is_affine() const noexcept;
    /// True when any generator identifies 0 with 1.
    bool circle() const noexcept;

private:
    std::vector<PiecewiseMap> maps_;
};

} // namespace semirec
