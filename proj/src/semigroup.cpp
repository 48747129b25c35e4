#include "semirec/semigroup.hpp"

#include <sstream>

#include "semirec/error.hpp"

namespace semirec {

GeneratorSet::GeneratorSet(std::vector<PiecewiseMap> maps) : maps_(std::move(maps))
{
    if (maps_.empty())
        throw InvalidArgument("a generator set needs at least one map");
}

std::vector<std::string> GeneratorSet::labels() const
{
    std::vector<std::string> out;
    for (const auto& m : maps_)
        out.push_back(m.label());
    return out;
}

bool GeneratorSet::is_affine() const noexcept
{
    for (const auto& m : maps_)
        if (!m.is_affine())
            return false;
    return true;
}

bool GeneratorSet::circle() const noexcept
{
    for (const auto& m : maps_)
        if (m.circle())
            return true;
    return false;
}

mpz_class count_returns(const GeneratorSet& g, const Rational& x, const IntervalSet& a, std::size_t n,
                        const DpOptions& opts)
{
    return qn_distribution(MarkovChain::uniform(g), x, n, opts).words_in(a);
}

std::vector<KappaRow> kappa_sequence(const GeneratorSet& g, const Rational& x, const IntervalSet& o,
                                     std::size_t horizon, const DpOptions& opts)
{
    auto prof = return_profile(MarkovChain::uniform(g), x, o, horizon, opts);
    std::vector<KappaRow> rows;
    mpz_class total = 1;
    for (std::size_t n = 1; n <= horizon; ++n) {
        total *= static_cast<unsigned long>(g.size());
        const mpz_class& c = prof.words[n - 1];
        rows.push_back(KappaRow{n, c, total, Rational(mpq_class(c, total))});
    }
    return rows;
}

Rational kappa(const GeneratorSet& g, const Rational& x, const IntervalSet& o, std::size_t n, const DpOptions& opts)
{
    mpz_class c = count_returns(g, x, o, n, opts);
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(g.size()), static_cast<unsigned long>(n));
    return Rational(mpq_class(c, total));
}

std::string kappa_csv(const std::vector<KappaRow>& rows)
{
    std::ostringstream os;
    os << "n,count,total,kappa\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.count.get_str() << ',' << r.total.get_str() << ',' << r.kappa.str() << '\n';
    return os.str();
}

Rebased rebase_generators(const GeneratorSet& g, const std::vector<Rational>& p, const std::vector<Word>& words)
{
    MarkovChain chain(g, p);
    chain.require_non_degenerate("rebase_generators");
    if (words.empty())
        throw InvalidArgument("rebase needs at least one word");
    std::vector<PiecewiseMap> maps;
    std::vector<Rational> weights;
    Rational total;
    for (const auto& w : words) {
        if (w.empty())
            throw InvalidArgument("rebase words must be nonempty");
        check_word(w, g.size());
        std::string label;
        Rational weight(1);
        for (auto letter : w) {
            label += (label.empty() ? "" : ",") + std::to_string(letter + 1);
            weight *= p[letter];
        }
        maps.push_back(compose(g.maps(), w).with_label("T[" + label + "]"));
        total += weight;
        weights.push_back(weight);
    }
    for (auto& w : weights)
        w /= total;
    return Rebased{GeneratorSet(std::move(maps)), std::move(weights)};
}

} // namespace semirec
