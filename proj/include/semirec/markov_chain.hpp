#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "semirec/generator_set.hpp"
#include "semirec/interval_set.hpp"
#include "semirec/measure.hpp"
#include "semirec/rational.hpp"

namespace semirec {

/// Chain Q(x,A) = sum_i p_i 1_A(T_i x) driven by a finite generator set.
class MarkovChain {
public:
    MarkovChain(GeneratorSet generators, std::vector<Rational> probs);
    static MarkovChain uniform(GeneratorSet generators);

    const GeneratorSet& generators() const noexcept { return gens_; }
    const std::vector<Rational>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return gens_.size(); }
    /// All probabilities strictly positive.
    bool non_degenerate() const noexcept { return non_degenerate_; }
    /// Throws InvalidArgument naming `operation` when some p_i is zero.
    void require_non_degenerate(std::string_view operation) const;
    bool is_affine() const noexcept { return gens_.is_affine(); }

private:
    GeneratorSet gens_;
    std::vector<Rational> probs_;
    bool non_degenerate_ = true;
};

/// One support point of an n-step distribution with the number of words reaching it.
struct Atom {
    Rational point;
    Rational mass;
    mpz_class words;
};

struct MonteCarloInfo {
    std::uint64_t seed = 0;
    std::size_t samples = 0;
};

/// Q^n(x, .) as a finite list of atoms sorted by point.
struct PointDistribution {
    std::vector<Atom> atoms;
    std::optional<MonteCarloInfo> mc;

    Rational mass_in(const IntervalSet& s) const;
    mpz_class words_in(const IntervalSet& s) const;
    Rational total_mass() const;
};

struct DpOptions {
    /// Maximum number of distinct atoms kept at any step.
    std::size_t atom_budget = 1'000'000;
    /// Maximum number of word-tree nodes visited when enumeration takes over.
    std::uint64_t node_budget = 400'000'000;
};

Rational q_value(const MarkovChain& q, const Rational& x, const IntervalSet& s);

/// Exact Q^n(x,.) by pushing atoms through every generator and merging equal points.
PointDistribution qn_distribution(const MarkovChain& q, const Rational& x, std::size_t n, const DpOptions& opts = {});

/// Empirical Q^n(x,.) from `samples` random words; sample s uses the stream keyed by seed and s.
PointDistribution qn_distribution_mc(const MarkovChain& q, const Rational& x, std::size_t n, std::size_t samples,
                                     std::uint64_t seed);

/// Q^n(x,S) and N(x,S,n) for n = 1..horizon, plus the first word reaching S.
struct ReturnProfile {
    std::vector<Rational> mass;      // mass[n-1] = Q^n(x,S)
    std::vector<mpz_class> words;    // words[n-1] = N(x,S,n)
    std::optional<std::size_t> first_time;
    Word first_word;
    /// Largest step solved by merged-atom propagation; later steps use word enumeration.
    std::size_t dp_depth = 0;
};

/// Exact return profile. Merged-atom propagation runs while the atom count stays within
/// budget; the remaining steps are finished by depth-first word enumeration from the last level.
ReturnProfile return_profile(const MarkovChain& q, const Rational& x, const IntervalSet& target,
                             std::size_t horizon, const DpOptions& opts = {});

/// Letter drawn for sample `sample` at step `step`; reproducible and independent of scheduling.
std::uint32_t draw_letter(std::span<const Rational> cumulative, std::uint64_t seed, std::uint64_t sample,
                          std::uint64_t step);
std::vector<Rational> cumulative_probs(const MarkovChain& q);

/// {x : Q^t(x,S) > 0}.
IntervalSet q_preimage(const MarkovChain& q, const IntervalSet& s, std::size_t t);

/// Largest gamma with gamma Q~ <= Q <= Q~/gamma for chains on shared generators.
Rational compatibility_gamma(std::span<const Rational> p, std::span<const Rational> p_tilde);

/// Ulam-projected image of mu under Q on an n-cell grid.
Measure act_on_measure(const MarkovChain& q, const Measure& mu, std::size_t n_bins);

} // namespace semirec
