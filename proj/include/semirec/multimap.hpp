#pragma once

#include <cstdint>
#include <vector>

#include "semirec/markov_chain.hpp"

namespace semirec {

/// Map from {0..M-1} to nonempty subsets, one bitmask per element.
class MultivaluedMap {
public:
    static constexpr std::size_t max_size = 64;

    explicit MultivaluedMap(std::vector<std::uint64_t> images);

    std::size_t size() const noexcept { return images_.size(); }
    std::uint64_t image(std::size_t i) const { return images_.at(i); }
    const std::vector<std::uint64_t>& images() const noexcept { return images_; }
    /// Union of the images of the elements of `set`.
    std::uint64_t apply(std::uint64_t set) const;

private:
    std::vector<std::uint64_t> images_;
};

struct L1Witness {
    std::size_t element = 0; // 0-based
    std::size_t steps = 0;
};

/// Element w and least n >= 1 with w in G^n({w}); ties go to the smallest element.
L1Witness l1_search(const MultivaluedMap& g);

/// Independent replay: does w lie in G^n({w})?
bool l1_verify(const MultivaluedMap& g, const L1Witness& w);

struct L1Report {
    std::size_t size = 0;
    std::uint64_t instances = 0;
    std::uint64_t failures = 0;
    std::size_t max_n = 0;
};

/// Runs l1_search on every multivalued map of size m (m <= 4).
L1Report l1_exhaustive(std::size_t m);

/// G(i) = {j : some T_k maps part of C_i into C_j}.
MultivaluedMap cover_multimap(const MarkovChain& q, const std::vector<IntervalSet>& cover);

} // namespace semirec
