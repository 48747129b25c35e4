#include "semirec/multimap.hpp"

#include "semirec/error.hpp"

namespace semirec {

MultivaluedMap::MultivaluedMap(std::vector<std::uint64_t> images) : images_(std::move(images))
{
    const std::size_t m = images_.size();
    if (m == 0 || m > max_size)
        throw InvalidArgument("multivalued map size must be between 1 and 64");
    const std::uint64_t full = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    for (auto img : images_)
        if (img == 0 || (img & ~full) != 0)
            throw InvalidArgument("multivalued map images must be nonempty subsets of the domain");
}

std::uint64_t MultivaluedMap::apply(std::uint64_t set) const
{
    std::uint64_t out = 0;
    for (std::size_t i = 0; set != 0; ++i, set >>= 1)
        if (set & 1u)
            out |= images_[i];
    return out;
}

L1Witness l1_search(const MultivaluedMap& g)
{
    const std::size_t m = g.size();
    std::optional<L1Witness> best;
    for (std::size_t w = 0; w < m; ++w) {
        const std::uint64_t bit = std::uint64_t{1} << w;
        std::uint64_t set = bit;
        const std::size_t limit = best ? best->steps - 1 : m + 1;
        for (std::size_t n = 1; n <= limit; ++n) {
            set = g.apply(set);
            if (set & bit) {
                best = L1Witness{w, n};
                break;
            }
        }
    }
    if (!best)
        throw Error("no return within M+1 steps: multivalued map violates the pigeonhole bound");
    return *best;
}

bool l1_verify(const MultivaluedMap& g, const L1Witness& w)
{
    if (w.element >= g.size() || w.steps == 0)
        return false;
    std::vector<bool> reach(g.size(), false);
    reach[w.element] = true;
    for (std::size_t n = 0; n < w.steps; ++n) {
        std::vector<bool> next(g.size(), false);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (reach[i])
                for (std::size_t j = 0; j < g.size(); ++j)
                    if ((g.image(i) >> j) & 1u)
                        next[j] = true;
        reach = std::move(next);
    }
    return reach[w.element];
}

L1Report l1_exhaustive(std::size_t m)
{
    if (m == 0 || m > 4)
        throw InvalidArgument("exhaustive Lemma check supports 1 <= M <= 4");
    const std::uint64_t choices = (std::uint64_t{1} << m) - 1;
    L1Report rep;
    rep.size = m;
    std::vector<std::uint64_t> digits(m, 0);
    while (true) {
        std::vector<std::uint64_t> images(m);
        for (std::size_t i = 0; i < m; ++i)
            images[i] = digits[i] + 1;
        MultivaluedMap g(std::move(images));
        ++rep.instances;
        try {
            auto w = l1_search(g);
            if (w.steps > m + 1 || !l1_verify(g, w))
                ++rep.failures;
            rep.max_n = std::max(rep.max_n, w.steps);
        } catch (const Error&) {
            ++rep.failures;
        }
        std::size_t pos = 0;
        while (pos < m && ++digits[pos] == choices) {
            digits[pos] = 0;
            ++pos;
        }
        if (pos == m)
            break;
    }
    return rep;
}

MultivaluedMap cover_multimap(const MarkovChain& q, const std::vector<IntervalSet>& cover)
{
    if (cover.empty() || cover.size() > MultivaluedMap::max_size)
        throw InvalidArgument("cover must have between 1 and 64 elements");
    for (const auto& c : cover)
        if (c.empty())
            throw InvalidArgument("cover elements must be nonempty");
    if (unite_all(cover) != IntervalSet::unit())
        throw InvalidArgument("cover does not cover [0,1]");
    std::vector<std::uint64_t> images(cover.size(), 0);
    for (std::size_t i = 0; i < cover.size(); ++i) {
        for (std::size_t k = 0; k < q.size(); ++k) {
            if (q.probs()[k].is_zero())
                continue;
            IntervalSet img = image(q.generators()[k], cover[i]);
            for (std::size_t j = 0; j < cover.size(); ++j)
                if (img.intersects(cover[j]))
                    images[i] |= std::uint64_t{1} << j;
        }
    }
    return MultivaluedMap(std::move(images));
}

} // namespace semirec
