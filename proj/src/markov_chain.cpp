#include "semirec/markov_chain.hpp"

#include <algorithm>

#include "semirec/error.hpp"
#include "semirec/ulam.hpp"

namespace semirec {

MarkovChain::MarkovChain(GeneratorSet generators, std::vector<Rational> probs)
    : gens_(std::move(generators)), probs_(std::move(probs))
{
    if (probs_.size() != gens_.size())
        throw InvalidArgument("probability vector has " + std::to_string(probs_.size()) + " entries for " +
                              std::to_string(gens_.size()) + " generators");
    Rational total;
    for (const auto& p : probs_) {
        if (p.sign() < 0)
            throw InvalidArgument("negative transition probability " + p.str());
        if (p.is_zero())
            non_degenerate_ = false;
        total += p;
    }
    if (total != Rational(1))
        throw InvalidArgument("transition probabilities sum to " + total.str());
}

MarkovChain MarkovChain::uniform(GeneratorSet generators)
{
    auto d = static_cast<std::int64_t>(generators.size());
    std::vector<Rational> p(generators.size(), Rational(1, d));
    return MarkovChain(std::move(generators), std::move(p));
}

void MarkovChain::require_non_degenerate(std::string_view operation) const
{
    if (!non_degenerate_)
        throw InvalidArgument(std::string(operation) + " requires every generator probability to be positive");
}

Rational PointDistribution::mass_in(const IntervalSet& s) const
{
    Rational m;
    for (const auto& a : atoms)
        if (s.contains(a.point))
            m += a.mass;
    return m;
}

mpz_class PointDistribution::words_in(const IntervalSet& s) const
{
    mpz_class w = 0;
    for (const auto& a : atoms)
        if (s.contains(a.point))
            w += a.words;
    return w;
}

Rational PointDistribution::total_mass() const
{
    Rational m;
    for (const auto& a : atoms)
        m += a.mass;
    return m;
}

Rational q_value(const MarkovChain& q, const Rational& x, const IntervalSet& s)
{
    if (x.sign() < 0 || x > Rational(1))
        throw InvalidArgument("q_value: point outside [0,1]");
    Rational total;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (s.contains(q.generators()[i].eval(x)))
            total += q.probs()[i];
    return total;
}

namespace {

struct Traced {
    Atom atom;
    std::uint32_t parent;
    std::uint32_t letter;
};

std::vector<Traced> dp_step(const std::vector<Traced>& level, const MarkovChain& q)
{
    std::vector<Traced> next;
    next.reserve(level.size() * q.size());
    for (std::size_t idx = 0; idx < level.size(); ++idx) {
        const Atom& a = level[idx].atom;
        for (std::uint32_t k = 0; k < q.size(); ++k)
            next.push_back(Traced{Atom{q.generators()[k].eval(a.point), a.mass * q.probs()[k], a.words},
                                  static_cast<std::uint32_t>(idx), k});
    }
    // Stable: among equal points the representative is the earliest (parent, letter).
    std::stable_sort(next.begin(), next.end(),
                     [](const Traced& a, const Traced& b) { return a.atom.point < b.atom.point; });
    std::vector<Traced> merged;
    merged.reserve(next.size());
    for (auto& t : next) {
        if (!merged.empty() && merged.back().atom.point == t.atom.point) {
            merged.back().atom.mass += t.atom.mass;
            merged.back().atom.words += t.atom.words;
        } else {
            merged.push_back(std::move(t));
        }
    }
    return merged;
}

std::vector<Traced> initial_level(const Rational& x)
{
    std::vector<Traced> level;
    level.push_back(Traced{Atom{x, Rational(1), mpz_class(1)}, 0, 0});
    return level;
}

void check_point(const Rational& x)
{
    if (x.sign() < 0 || x > Rational(1))
        throw InvalidArgument("starting point " + x.str() + " outside [0,1]");
}

} // namespace

PointDistribution qn_distribution(const MarkovChain& q, const Rational& x, std::size_t n, const DpOptions& opts)
{
    check_point(x);
    auto level = initial_level(x);
    for (std::size_t step = 0; step < n; ++step) {
        level = dp_step(level, q);
        if (level.size() > opts.atom_budget)
            throw ResourceError("Q^" + std::to_string(step + 1) + " has " + std::to_string(level.size()) +
                                " atoms, above the budget of " + std::to_string(opts.atom_budget) +
                                "; request Monte Carlo mode instead");
    }
    PointDistribution dist;
    dist.atoms.reserve(level.size());
    for (auto& t : level)
        if (t.atom.mass.sign() > 0)
            dist.atoms.push_back(std::move(t.atom));
    return dist;
}

std::vector<Rational> cumulative_probs(const MarkovChain& q)
{
    std::vector<Rational> cum;
    Rational acc;
    for (const auto& p : q.probs()) {
        acc += p;
        cum.push_back(acc);
    }
    return cum;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

std::uint32_t draw_letter(std::span<const Rational> cumulative, std::uint64_t seed, std::uint64_t sample,
                          std::uint64_t step)
{
    std::uint64_t h = splitmix64(splitmix64(seed ^ splitmix64(sample)) ^ step);
    Rational u(static_cast<std::int64_t>(h >> 11), std::int64_t{1} << 53);
    for (std::size_t k = 0; k < cumulative.size(); ++k)
        if (u < cumulative[k])
            return static_cast<std::uint32_t>(k);
    return static_cast<std::uint32_t>(cumulative.size() - 1);
}

PointDistribution qn_distribution_mc(const MarkovChain& q, const Rational& x, std::size_t n, std::size_t samples,
                                     std::uint64_t seed)
{
    check_point(x);
    if (samples == 0)
        throw InvalidArgument("Monte Carlo mode needs at least one sample");
    auto cum = cumulative_probs(q);
    std::vector<Rational> ends;
    ends.reserve(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        Rational y = x;
        for (std::size_t t = 0; t < n; ++t)
            y = q.generators()[draw_letter(cum, seed, s, t)].eval(y);
        ends.push_back(std::move(y));
    }
    std::sort(ends.begin(), ends.end());
    PointDistribution dist;
    dist.mc = MonteCarloInfo{seed, samples};
    auto total = static_cast<std::int64_t>(samples);
    for (std::size_t i = 0; i < ends.size();) {
        std::size_t j = i;
        while (j < ends.size() && ends[j] == ends[i])
            ++j;
        auto c = static_cast<std::int64_t>(j - i);
        dist.atoms.push_back(Atom{ends[i], Rational(c, total), mpz_class(static_cast<long>(c))});
        i = j;
    }
    return dist;
}

ReturnProfile return_profile(const MarkovChain& q, const Rational& x, const IntervalSet& target,
                             std::size_t horizon, const DpOptions& opts)
{
    check_point(x);
    ReturnProfile prof;
    prof.mass.assign(horizon, Rational());
    prof.words.assign(horizon, mpz_class(0));

    // trace[n-1][i] = (parent, letter) of atom i at step n.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> trace;
    auto level = initial_level(x);
    auto word_of = [&](std::size_t depth, std::size_t idx) {
        Word w(depth);
        for (std::size_t n = depth; n-- > 0;) {
            auto [parent, letter] = trace[n][idx];
            w[n] = letter;
            idx = parent;
        }
        return w;
    };

    std::size_t depth = 0;
    while (depth < horizon) {
        auto next = dp_step(level, q);
        if (next.size() > opts.atom_budget)
            break;
        level = std::move(next);
        ++depth;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> links;
        links.reserve(level.size());
        for (const auto& t : level)
            links.emplace_back(t.parent, t.letter);
        trace.push_back(std::move(links));
        for (std::size_t i = 0; i < level.size(); ++i) {
            const Atom& a = level[i].atom;
            if (!target.contains(a.point))
                continue;
            prof.mass[depth - 1] += a.mass;
            prof.words[depth - 1] += a.words;
            if (!prof.first_time) {
                prof.first_time = depth;
                prof.first_word = word_of(depth, i);
            }
        }
    }
    prof.dp_depth = depth;
    if (depth == horizon)
        return prof;

    // Enumerate the remaining word tree below each surviving atom.
    long double tree = 0, layer = static_cast<long double>(level.size());
    for (std::size_t n = depth; n < horizon && tree <= static_cast<long double>(opts.node_budget); ++n) {
        layer *= static_cast<long double>(q.size());
        tree += layer;
    }
    if (tree > static_cast<long double>(opts.node_budget))
        throw ResourceError("word enumeration from depth " + std::to_string(depth) + " to " + std::to_string(horizon) +
                            " exceeds node budget of " + std::to_string(opts.node_budget));
    std::uint64_t nodes = 0;
    const std::size_t base = depth;
    Word stack;
    std::function<void(const Rational&, const Rational&, const mpz_class&, std::size_t)> visit;
    std::size_t current_atom = 0;
    visit = [&](const Rational& y, const Rational& mass, const mpz_class& words, std::size_t n) {
        for (std::uint32_t k = 0; k < q.size(); ++k) {
            if (++nodes > opts.node_budget)
                throw ResourceError("word enumeration exceeds node budget of " + std::to_string(opts.node_budget));
            Rational z = q.generators()[k].eval(y);
            Rational m = mass * q.probs()[k];
            stack.push_back(k);
            if (target.contains(z)) {
                prof.mass[n] += m;
                prof.words[n] += words;
                if (!prof.first_time || *prof.first_time > n + 1) {
                    prof.first_time = n + 1;
                    prof.first_word = word_of(base, current_atom);
                    prof.first_word.insert(prof.first_word.end(), stack.begin(), stack.end());
                }
            }
            if (n + 1 < horizon)
                visit(z, m, words, n + 1);
            stack.pop_back();
        }
    };
    for (current_atom = 0; current_atom < level.size(); ++current_atom) {
        const Atom& a = level[current_atom].atom;
        visit(a.point, a.mass, a.words, base);
    }
    return prof;
}

IntervalSet q_preimage(const MarkovChain& q, const IntervalSet& s, std::size_t t)
{
    q.require_non_degenerate("q_preimage");
    IntervalSet r = s;
    for (std::size_t step = 0; step < t; ++step) {
        std::vector<IntervalSet> parts;
        parts.reserve(q.size());
        for (const auto& g : q.generators().maps())
            parts.push_back(preimage(g, r));
        r = unite_all(parts);
    }
    return r;
}

Rational compatibility_gamma(std::span<const Rational> p, std::span<const Rational> p_tilde)
{
    if (p.size() != p_tilde.size() || p.empty())
        throw InvalidArgument("compatibility needs two probability vectors of equal length");
    std::optional<Rational> gamma;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].sign() <= 0 || p_tilde[i].sign() <= 0)
            throw InvalidArgument("compatibility undefined: degenerate probability at index " + std::to_string(i + 1));
        Rational r = min(p[i] / p_tilde[i], p_tilde[i] / p[i]);
        if (!gamma || r < *gamma)
            gamma = r;
    }
    return *gamma;
}

Measure act_on_measure(const MarkovChain& q, const Measure& mu, std::size_t n_bins)
{
    if (mu.kind() == Measure::Kind::dirac) {
        std::vector<Rational> w(n_bins);
        for (std::size_t k = 0; k < q.size(); ++k)
            w[grid_cell_of(q.generators()[k].eval(mu.point()), n_bins)] += q.probs()[k];
        return Measure::density(std::move(w));
    }
    std::vector<Rational> start;
    if (mu.kind() == Measure::Kind::lebesgue) {
        start.assign(n_bins, Rational(1, static_cast<std::int64_t>(n_bins)));
    } else {
        if (mu.cells() != n_bins)
            throw InvalidArgument("density has " + std::to_string(mu.cells()) + " cells, expected " +
                                  std::to_string(n_bins));
        start = mu.weights();
    }
    UlamMatrix m = ulam_matrix(q, n_bins);
    return Measure::density(m.left_multiply(start));
}

} // namespace semirec
