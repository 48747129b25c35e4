#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "semirec/generator_set.hpp"

namespace semirec {

struct ExampleParams {
    /// Truncation depth for countable partitions; the residual (0, 2^-K] is mapped by the identity.
    int depth = 40;
    /// Slope of the circle example, in (3/4, 3/2).
    Rational slope = Rational(1);
};

struct CatalogueEntry {
    std::string name;
    std::string summary;
    std::size_t generators = 1;
    bool truncated = false;
    bool anchor = false;
};

/// Eight constructions plus three reference anchors.
const std::vector<CatalogueEntry>& catalogue();
const CatalogueEntry& catalogue_entry(std::string_view name);

GeneratorSet build_example(std::string_view name, const ExampleParams& params = {});

} // namespace semirec
