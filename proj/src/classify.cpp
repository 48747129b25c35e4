#include "semirec/classify.hpp"

#include <algorithm>

#include "semirec/error.hpp"
#include "semirec/serialize.hpp"

namespace semirec {

std::string to_string(Subject s)
{
    switch (s) {
    case Subject::map:
        return "map";
    case Subject::chain:
        return "chain";
    case Subject::semigroup:
        break;
    }
    return "semigroup";
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::certified:
        return "certified";
    case Status::none_within_horizon:
        return "none-within-horizon";
    case Status::not_computed:
        break;
    }
    return "not-computed";
}

std::pair<std::size_t, std::size_t> uniform_window(std::size_t horizon)
{
    return {std::max<std::size_t>(1, (horizon + 1) / 2), horizon};
}

std::vector<Rational> weak_grid_points(const Rational& x, const Rational& eps, std::size_t g)
{
    std::vector<Rational> out;
    const auto gg = static_cast<std::int64_t>(g);
    for (std::int64_t k = 0; k < gg; ++k) {
        Rational y = x + eps * Rational(2 * k - gg + 1, gg);
        if (y.sign() >= 0 && y <= Rational(1))
            out.push_back(std::move(y));
    }
    return out;
}

std::optional<std::size_t> first_set_return(std::span<const PiecewiseMap> maps, const IntervalSet& u,
                                             std::size_t horizon, std::size_t budget)
{
    IntervalSet reach = u;
    for (std::size_t n = 1; n <= horizon; ++n) {
        std::vector<IntervalSet> parts;
        parts.reserve(maps.size());
        for (const auto& m : maps)
            parts.push_back(image(m, reach));
        IntervalSet next = unite_all(parts);
        if (next.intersects(u))
            return n;
        if (next == reach)
            return std::nullopt;
        if (next.size() > budget)
            throw ResourceError("reachable set exceeds " + std::to_string(budget) + " intervals at step " +
                                std::to_string(n));
        reach = std::move(next);
    }
    return std::nullopt;
}

namespace {

void check_inputs(const Rational& x, const Rational& eps, std::size_t horizon)
{
    if (eps.sign() <= 0)
        throw InvalidArgument("neighbourhood radius must be positive, got " + eps.str());
    if (x.sign() < 0 || x > Rational(1))
        throw InvalidArgument("point outside [0,1]: " + x.str());
    if (horizon == 0)
        throw InvalidArgument("horizon must be at least 1");
}

// Times n in 1..horizon with T^n y in b; periodic and fixed orbits are extended without iterating.
std::vector<std::size_t> orbit_returns(const PiecewiseMap& t, const Rational& y0, const IntervalSet& b,
                                       std::size_t horizon)
{
    std::vector<std::size_t> times;
    std::vector<bool> hit;
    Rational y = y0;
    for (std::size_t n = 1; n <= horizon; ++n) {
        Rational next = t.eval(y);
        bool in = b.contains(next);
        hit.push_back(in);
        if (in)
            times.push_back(n);
        if (next == y0) {
            // Period n: replay the pattern.
            for (std::size_t m = n + 1; m <= horizon; ++m)
                if (hit[(m - 1) % n])
                    times.push_back(m);
            return times;
        }
        if (next == y) {
            if (in)
                for (std::size_t m = n + 1; m <= horizon; ++m)
                    times.push_back(m);
            return times;
        }
        y = std::move(next);
    }
    return times;
}

std::size_t count_in(const std::vector<std::size_t>& times, std::size_t lo, std::size_t hi)
{
    return static_cast<std::size_t>(std::count_if(times.begin(), times.end(),
                                                  [&](std::size_t n) { return n >= lo && n <= hi; }));
}

void fill_weak(RecurrenceVerdict& v, std::span<const PiecewiseMap> maps, const IntervalSet& b,
               const ClassifyOptions& opts)
{
    if (v.is_recurrent()) {
        v.weak = Status::certified;
        v.weak_time = v.recurrent_time;
        return;
    }
    if (!opts.compute_weak) {
        v.weak = Status::not_computed;
        return;
    }
    try {
        v.weak_time = first_set_return(maps, b, v.horizon, opts.reach_budget);
        v.weak = v.weak_time ? Status::certified : Status::none_within_horizon;
    } catch (const ResourceError& e) {
        v.weak = Status::not_computed;
        v.notes.push_back(std::string("weak recurrence not computed: ") + e.what());
    }
}

} // namespace

RecurrenceVerdict classify_map_point(const PiecewiseMap& t, const Rational& x, const Rational& eps,
                                     std::size_t horizon, const ClassifyOptions& opts)
{
    check_inputs(x, eps, horizon);
    if (opts.r_min == 0)
        throw InvalidArgument("r_min must be at least 1");
    RecurrenceVerdict v;
    v.subject = Subject::map;
    v.x = x;
    v.eps = eps;
    v.horizon = horizon;
    IntervalSet b = ball(x, eps, BallStyle::open, t.circle());

    v.return_times = orbit_returns(t, x, b, horizon);
    if (!v.return_times.empty()) {
        v.recurrent = Status::certified;
        v.recurrent_time = v.return_times.front();
        v.recurrent_word.assign(*v.recurrent_time, 0);
    }
    std::span<const PiecewiseMap> maps(&t, 1);
    fill_weak(v, maps, b, opts);

    auto [lo, hi] = uniform_window(horizon);
    const Rational threshold(static_cast<std::int64_t>(opts.r_min));
    v.uniform = WindowEstimate{true, Rational(static_cast<std::int64_t>(count_in(v.return_times, lo, hi))),
                               threshold, false, lo, hi, std::nullopt, "returns in window"};
    v.uniform.meets = v.uniform.value >= threshold;

    v.weak_uniform = WindowEstimate{false, Rational(), threshold, false, lo, hi, std::nullopt,
                                    "best sampled returns in window"};
    if (opts.weak_grid > 0) {
        v.weak_uniform.computed = true;
        std::size_t best = 0;
        for (const auto& y : weak_grid_points(x, eps, opts.weak_grid)) {
            std::size_t c = count_in(orbit_returns(t, y, b, horizon), lo, hi);
            if (!v.weak_uniform.witness || c > best) {
                best = c;
                v.weak_uniform.witness = y;
            }
        }
        v.weak_uniform.value = Rational(static_cast<std::int64_t>(best));
        v.weak_uniform.meets = v.weak_uniform.value >= threshold;
    }
    return v;
}

namespace {

Rational kappa_at(const ReturnProfile& prof, std::size_t n, std::size_t d)
{
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(n));
    return Rational(mpq_class(prof.words[n - 1], total));
}

// Window minimum of the per-step return quantity.
Rational window_min(const ReturnProfile& prof, std::size_t lo, std::size_t hi, bool by_words, std::size_t d)
{
    std::optional<Rational> best;
    for (std::size_t n = lo; n <= hi; ++n) {
        Rational v = by_words ? kappa_at(prof, n, d) : prof.mass[n - 1];
        if (!best || v < *best)
            best = std::move(v);
    }
    return best.value_or(Rational());
}

RecurrenceVerdict classify_chain_impl(const MarkovChain& q, Subject subject, const Rational& x, const Rational& eps,
                                      std::size_t horizon, const ClassifyOptions& opts)
{
    check_inputs(x, eps, horizon);
    q.require_non_degenerate("recurrence classification");
    RecurrenceVerdict v;
    v.subject = subject;
    v.x = x;
    v.eps = eps;
    v.horizon = horizon;
    IntervalSet b = ball(x, eps, BallStyle::open, q.generators().circle());
    auto [lo, hi] = uniform_window(horizon);
    const bool by_words = subject == Subject::semigroup;
    const std::string quantity = by_words ? "kappa window minimum" : "Q^n mass window minimum";
    v.uniform = WindowEstimate{false, Rational(), opts.chain_threshold, false, lo, hi, std::nullopt, quantity};
    v.weak_uniform = WindowEstimate{false, Rational(), opts.chain_threshold, false, lo, hi, std::nullopt,
                                    "best sampled " + quantity};

    if (opts.mc) {
        if (opts.mc->samples == 0)
            throw InvalidArgument("Monte Carlo mode needs at least one trial");
        v.mc = opts.mc;
        auto cum = cumulative_probs(q);
        Word letters;
        for (std::size_t s = 0; s < opts.mc->samples && !v.is_recurrent(); ++s) {
            Rational y = x;
            letters.clear();
            for (std::size_t step = 0; step < horizon; ++step) {
                auto k = draw_letter(cum, opts.mc->seed, s, step);
                letters.push_back(k);
                y = q.generators()[k].eval(y);
                if (b.contains(y)) {
                    v.recurrent = Status::certified;
                    v.recurrent_time = step + 1;
                    v.recurrent_word = letters;
                    v.return_times.push_back(step + 1);
                    break;
                }
            }
        }
        fill_weak(v, q.generators().maps(), b, opts);
        return v;
    }

    ReturnProfile prof = return_profile(q, x, b, horizon, opts.dp);
    for (std::size_t n = 1; n <= horizon; ++n)
        if (prof.mass[n - 1].sign() > 0)
            v.return_times.push_back(n);
    if (prof.first_time) {
        v.recurrent = Status::certified;
        v.recurrent_time = prof.first_time;
        v.recurrent_word = prof.first_word;
    }
    fill_weak(v, q.generators().maps(), b, opts);

    v.uniform.computed = true;
    v.uniform.value = window_min(prof, lo, hi, by_words, q.size());
    v.uniform.meets = v.uniform.value.sign() > 0 && v.uniform.value >= opts.chain_threshold;

    if (opts.weak_grid > 0) {
        try {
            for (const auto& y : weak_grid_points(x, eps, opts.weak_grid)) {
                Rational val = window_min(return_profile(q, y, b, horizon, opts.dp), lo, hi, by_words, q.size());
                if (!v.weak_uniform.witness || val > v.weak_uniform.value) {
                    v.weak_uniform.value = std::move(val);
                    v.weak_uniform.witness = y;
                }
            }
            v.weak_uniform.computed = true;
            v.weak_uniform.meets = v.weak_uniform.value.sign() > 0 && v.weak_uniform.value >= opts.chain_threshold;
        } catch (const ResourceError& e) {
            v.weak_uniform = WindowEstimate{false, Rational(), opts.chain_threshold, false, lo, hi, std::nullopt,
                                            v.weak_uniform.quantity};
            v.notes.push_back(std::string("weak-uniform estimate not computed: ") + e.what());
        }
    }
    return v;
}

} // namespace

RecurrenceVerdict classify_chain_point(const MarkovChain& q, const Rational& x, const Rational& eps,
                                       std::size_t horizon, const ClassifyOptions& opts)
{
    return classify_chain_impl(q, Subject::chain, x, eps, horizon, opts);
}

RecurrenceVerdict classify_semigroup_point(const GeneratorSet& g, const std::vector<Rational>& p, const Rational& x,
                                           const Rational& eps, std::size_t horizon, const ClassifyOptions& opts)
{
    return classify_chain_impl(MarkovChain(g, p), Subject::semigroup, x, eps, horizon, opts);
}

RBracket r_function(const PiecewiseMap& t, const Rational& x, std::size_t horizon, const Rational& r_tol)
{
    if (r_tol.sign() <= 0)
        throw InvalidArgument("r_tol must be positive");
    if (x.sign() < 0 || x > Rational(1))
        throw InvalidArgument("point outside [0,1]: " + x.str());
    if (!t.is_affine())
        throw UnsupportedOperation("r_function needs an affine map (exact image iteration)");
    std::span<const PiecewiseMap> maps(&t, 1);
    auto separated = [&](const Rational& r) {
        IntervalSet b = ball(x, r, BallStyle::closed, t.circle());
        return !first_set_return(maps, b, horizon, 100'000).has_value();
    };
    Rational lo, hi(1);
    while (hi - lo > r_tol) {
        Rational mid = (lo + hi) / Rational(2);
        if (separated(mid))
            lo = mid;
        else
            hi = mid;
    }
    return RBracket{lo, hi};
}

namespace {

nlohmann::json estimate_json(const WindowEstimate& e)
{
    nlohmann::json j;
    j["computed"] = e.computed;
    if (!e.computed)
        return j;
    j["quantity"] = e.quantity;
    j["window_min"] = e.value;
    j["threshold"] = e.threshold;
    j["meets_threshold"] = e.meets;
    j["window"] = {e.window_lo, e.window_hi};
    if (e.witness)
        j["witness"] = *e.witness;
    return j;
}

} // namespace

nlohmann::json verdict_to_json(const RecurrenceVerdict& v)
{
    nlohmann::json j;
    j["subject"] = to_string(v.subject);
    j["x"] = v.x;
    j["eps"] = v.eps;
    j["horizon"] = v.horizon;
    nlohmann::json rec{{"status", to_string(v.recurrent)}};
    if (v.recurrent_time) {
        rec["time"] = *v.recurrent_time;
        if (v.subject != Subject::map)
            rec["word"] = word_to_json(v.recurrent_word);
    }
    j["recurrent"] = rec;
    nlohmann::json weak{{"status", to_string(v.weak)}};
    if (v.weak_time)
        weak["time"] = *v.weak_time;
    j["weak"] = weak;
    j["uniform_estimate"] = estimate_json(v.uniform);
    j["weak_uniform_estimate"] = estimate_json(v.weak_uniform);
    j["return_times"] = v.return_times;
    if (v.mc)
        j["monte_carlo"] = {{"seed", v.mc->seed}, {"samples", v.mc->samples}};
    if (!v.notes.empty())
        j["notes"] = v.notes;
    return j;
}

} // namespace semirec
