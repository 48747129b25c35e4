#include "semirec/ulam.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "semirec/error.hpp"

namespace semirec {

UlamMatrix::UlamMatrix(std::size_t n_bins, std::vector<Row> rows) : rows_(std::move(rows))
{
    if (rows_.size() != n_bins)
        throw InvalidArgument("Ulam matrix row count does not match bin count");
}

Rational UlamMatrix::entry(std::size_t i, std::size_t j) const
{
    const Row& r = row(i);
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j)
        return it->second;
    return Rational();
}

Rational UlamMatrix::row_sum(std::size_t i) const
{
    Rational s;
    for (const auto& [j, v] : row(i))
        s += v;
    return s;
}

std::vector<Rational> UlamMatrix::left_multiply(const std::vector<Rational>& v) const
{
    if (v.size() != bins())
        throw InvalidArgument("vector length does not match bin count");
    std::vector<Rational> out(bins());
    for (std::size_t i = 0; i < bins(); ++i) {
        if (v[i].is_zero())
            continue;
        for (const auto& [j, e] : rows_[i])
            out[j] += v[i] * e;
    }
    return out;
}

std::string UlamMatrix::matrix_market() const
{
    std::size_t nnz = 0;
    for (const auto& r : rows_)
        nnz += r.size();
    std::ostringstream os;
    os << "%%MatrixMarket matrix coordinate rational general\n";
    os << bins() << ' ' << bins() << ' ' << nnz << '\n';
    for (std::size_t i = 0; i < bins(); ++i)
        for (const auto& [j, v] : rows_[i])
            os << i + 1 << ' ' << j + 1 << ' ' << v.str() << '\n';
    return os.str();
}

bool valid_bin_count(std::size_t n)
{
    if (n == 0)
        return false;
    while (n % 2 == 0)
        n /= 2;
    while (n % 3 == 0)
        n /= 3;
    return n == 1;
}

UlamMatrix ulam_matrix(const MarkovChain& q, std::size_t n_bins)
{
    if (!valid_bin_count(n_bins))
        throw InvalidArgument("bin count must be of the form 2^a 3^b, got " + std::to_string(n_bins));
    if (!q.is_affine())
        throw UnsupportedOperation("Ulam matrix needs affine generators (exact preimages)");
    const auto nn = static_cast<std::int64_t>(n_bins);
    const Rational bin_len(1, nn);
    std::vector<UlamMatrix::Row> rows(n_bins);
    for (std::size_t i = 0; i < n_bins; ++i) {
        Interval cell = grid_cell(i, n_bins);
        std::map<std::size_t, Rational> acc;
        for (std::size_t k = 0; k < q.size(); ++k) {
            const Rational& pk = q.probs()[k];
            if (pk.is_zero())
                continue;
            for (const auto& piece : q.generators()[k].pieces()) {
                auto part = intersect(piece.domain, cell);
                if (!part || part->is_point())
                    continue;
                Rational slope = piece.poly.coeff(1);
                Rational weight = pk / bin_len;
                if (slope.is_zero()) {
                    acc[grid_cell_of(piece.poly.coeff(0), n_bins)] += weight * part->length();
                    continue;
                }
                Interval img = piece_image(piece, *part);
                std::size_t first = grid_cell_of(img.lo, n_bins);
                std::size_t last = grid_cell_of(img.hi, n_bins);
                Rational scale = weight / abs(slope);
                for (std::size_t j = first; j <= last; ++j)
                    if (auto hit = intersect(img, grid_cell(j, n_bins)); hit && !hit->is_point())
                        acc[j] += scale * hit->length();
            }
        }
        for (auto& [j, v] : acc)
            if (!v.is_zero())
                rows[i].emplace_back(j, std::move(v));
    }
    return UlamMatrix(n_bins, std::move(rows));
}

namespace {

// Tarjan's algorithm without recursion; returns component id per node.
std::vector<std::size_t> strongly_connected(const UlamMatrix& m, std::size_t& count)
{
    const std::size_t n = m.bins();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> call;
    std::size_t next = 0;
    count = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (index[s] != unset)
            continue;
        call.emplace_back(s, 0);
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos == 0) {
                index[v] = low[v] = next++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            const auto& r = m.row(v);
            bool descended = false;
            while (pos < r.size()) {
                std::size_t w = r[pos++].first;
                if (index[w] == unset) {
                    call.emplace_back(w, 0);
                    descended = true;
                    break;
                }
                if (on_stack[w])
                    low[v] = std::min(low[v], index[w]);
            }
            if (descended)
                continue;
            std::size_t done = v;
            if (low[done] == index[done]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                } while (w != done);
                ++count;
            }
            call.pop_back();
            if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comp;
}

} // namespace

std::vector<StationaryComponent> stationary_components(const UlamMatrix& m, double tol, std::size_t max_iterations)
{
    if (!(tol > 0))
        throw InvalidArgument("stationary_components: tolerance must be positive");
    std::size_t count = 0;
    auto comp = strongly_connected(m, count);
    std::vector<bool> closed(count, true);
    for (std::size_t i = 0; i < m.bins(); ++i)
        for (const auto& [j, v] : m.row(i))
            if (comp[j] != comp[i])
                closed[comp[i]] = false;

    // Order classes by their smallest bin.
    std::vector<std::size_t> order;
    std::vector<bool> seen(count, false);
    for (std::size_t i = 0; i < m.bins(); ++i)
        if (!seen[comp[i]]) {
            seen[comp[i]] = true;
            order.push_back(comp[i]);
        }

    std::vector<StationaryComponent> out;
    for (std::size_t c : order) {
        if (!closed[c])
            continue;
        StationaryComponent sc;
        std::vector<std::size_t> local(m.bins(), static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < m.bins(); ++i)
            if (comp[i] == c) {
                local[i] = sc.support.size();
                sc.support.push_back(i);
            }
        const std::size_t k = sc.support.size();
        std::vector<std::vector<std::pair<std::size_t, double>>> rows(k);
        for (std::size_t a = 0; a < k; ++a)
            for (const auto& [j, v] : m.row(sc.support[a]))
                rows[a].emplace_back(local[j], v.to_double());
        std::vector<double> v(k, 1.0 / static_cast<double>(k)), vm(k);
        auto apply = [&] {
            std::fill(vm.begin(), vm.end(), 0.0);
            for (std::size_t a = 0; a < k; ++a)
                for (const auto& [b, e] : rows[a])
                    vm[b] += v[a] * e;
        };
        auto residual = [&] {
            double r = 0;
            for (std::size_t a = 0; a < k; ++a)
                r += std::fabs(vm[a] - v[a]);
            return r;
        };
        apply();
        sc.residual = residual();
        while (sc.residual >= tol) {
            if (sc.iterations >= max_iterations)
                throw ResourceError("power iteration did not reach tolerance within " +
                                    std::to_string(max_iterations) + " iterations");
            double total = 0;
            for (std::size_t a = 0; a < k; ++a) {
                v[a] = 0.5 * (v[a] + vm[a]);
                total += v[a];
            }
            for (auto& x : v)
                x /= total;
            ++sc.iterations;
            apply();
            sc.residual = residual();
        }
        sc.weights = std::move(v);
        out.push_back(std::move(sc));
    }
    return out;
}

} // namespace semirec
