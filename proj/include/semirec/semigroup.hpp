#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "semirec/generator_set.hpp"
#include "semirec/markov_chain.hpp"

namespace semirec {

/// N(x,A,n): number of length-n words carrying x into A.
mpz_class count_returns(const GeneratorSet& g, const Rational& x, const IntervalSet& a, std::size_t n,
                        const DpOptions& opts = {});

struct KappaRow {
    std::size_t n = 0;
    mpz_class count;
    mpz_class total;
    Rational kappa;
};

/// kappa(x,O,n) = N(x,O,n)/d^n for n = 1..horizon.
std::vector<KappaRow> kappa_sequence(const GeneratorSet& g, const Rational& x, const IntervalSet& o,
                                     std::size_t horizon, const DpOptions& opts = {});
Rational kappa(const GeneratorSet& g, const Rational& x, const IntervalSet& o, std::size_t n,
               const DpOptions& opts = {});

/// Columns: n,count,total,kappa.
std::string kappa_csv(const std::vector<KappaRow>& rows);

struct Rebased {
    GeneratorSet generators;
    std::vector<Rational> probs;
};

/// New generators T~_j = compose(G, w_j) with weights prod p over w_j, renormalized.
Rebased rebase_generators(const GeneratorSet& g, const std::vector<Rational>& p, const std::vector<Word>& words);

} // namespace semirec
