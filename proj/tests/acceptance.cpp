// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance --only K   run criterion K

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "semirec/catalogue.hpp"
#include "semirec/classify.hpp"
#include "semirec/error.hpp"
#include "semirec/manifest.hpp"
#include "semirec/multimap.hpp"
#include "semirec/serialize.hpp"
#include "semirec/semigroup.hpp"
#include "semirec/series.hpp"
#include "semirec/ulam.hpp"

using namespace semirec;

namespace {

struct Result {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            failures.push_back(what);
            pass = false;
        }
    }

    std::string summary() const
    {
        std::string out = detail.str();
        for (const auto& f : failures)
            out += " [failed: " + f + "]";
        return out;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};

std::vector<PiecewiseMap> maps_of(const GeneratorSet& g) { return {g.maps().begin(), g.maps().end()}; }

std::vector<Rational> uniform_p(std::size_t d) { return std::vector<Rational>(d, Rational(1, static_cast<std::int64_t>(d))); }

// Exact least-squares slope of (n, y_n), n = lo..hi.
Rational slope_of(const std::vector<Rational>& y, std::size_t lo, std::size_t hi)
{
    Rational k(static_cast<std::int64_t>(hi - lo + 1));
    Rational sx, sy, sxx, sxy;
    for (std::size_t n = lo; n <= hi; ++n) {
        Rational x(static_cast<std::int64_t>(n));
        sx += x;
        sy += y[n - 1];
        sxx += x * x;
        sxy += x * y[n - 1];
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

// ---------------------------------------------------------------- 1
void lemma_census(Result& r)
{
    auto t0 = Clock::now();
    const std::uint64_t expected[] = {1, 9, 343, 50625};
    for (std::size_t m = 1; m <= 4; ++m) {
        auto rep = l1_exhaustive(m);
        r.require(rep.instances == expected[m - 1], "instance count at M=" + std::to_string(m));
        r.require(rep.failures == 0, std::to_string(rep.failures) + " failures at M=" + std::to_string(m));
        r.require(rep.max_n <= m + 1, "witness above M+1 at M=" + std::to_string(m));
        r.detail << "M=" << m << ": " << rep.instances << " maps, max n " << rep.max_n << "; ";
    }
    double s = seconds_since(t0);
    r.require(s < 10, "runtime " + std::to_string(s) + " s");
    r.detail << s << " s";
}

// ---------------------------------------------------------------- 2
void zigzag_components(Result& r)
{
    auto t0 = Clock::now();
    MarkovChain q(build_example("example2"), half);
    for (std::size_t bins : {16u, 256u}) {
        auto comps = stationary_components(ulam_matrix(q, bins), 1e-14);
        r.require(comps.size() == 2, std::to_string(comps.size()) + " components at " + std::to_string(bins));
        if (comps.size() != 2)
            continue;
        double dev = 0;
        for (std::size_t c = 0; c < 2; ++c) {
            const auto& comp = comps[c];
            bool support_ok = comp.support.size() == bins / 2;
            for (std::size_t k = 0; support_ok && k < comp.support.size(); ++k)
                support_ok = comp.support[k] == c * bins / 2 + k;
            r.require(support_ok, "support of component " + std::to_string(c) + " at " + std::to_string(bins));
            for (double w : comp.weights)
                dev = std::max(dev, std::abs(w - 2.0 / static_cast<double>(bins)));
        }
        r.require(dev < 1e-9, "deviation " + std::to_string(dev));
        r.detail << bins << " bins: 2 classes, max deviation " << dev << "; ";
    }
    double s = seconds_since(t0);
    r.require(s < 5, "runtime " + std::to_string(s) + " s");
    r.detail << s << " s";
}

// ---------------------------------------------------------------- 3
void zigzag_recurrence(Result& r)
{
    GeneratorSet g = build_example("example2");
    const Rational eps = Rational::pow2(-10);
    ClassifyOptions map_opts;
    map_opts.compute_weak = false;
    map_opts.weak_grid = 0;
    std::size_t certificates = 0, points = 0;
    for (std::size_t k = 0; k < 2; ++k)
        for (std::int64_t j = 0; j <= 256; ++j) {
            auto v = classify_map_point(g[k], Rational(j, 256), eps, 10000, map_opts);
            certificates += v.is_recurrent() ? 1 : 0;
            ++points;
        }
    r.require(certificates == 0, std::to_string(certificates) + " generator recurrence certificates");
    r.detail << points << " generator verdicts, " << certificates << " recurrent; ";

    // Return-probability bound from the stationary components: an interior ball of radius eps
    // inside one half has stationary mass (bin weight / bin width) * 2 eps.
    auto comps = stationary_components(ulam_matrix(MarkovChain(g, half), 256), 1e-14);
    double cell_mass = comps.empty() ? 0 : comps[0].weights[0];
    double ball_mass = cell_mass * 256.0 * 2 * eps.to_double();
    double miss_one_trial = std::pow(1 - ball_mass, 10000.0);
    double expected_fraction = 1 - std::pow(miss_one_trial, 100.0);
    r.detail << "stationary ball mass " << ball_mass << ", expected certified fraction " << expected_fraction << "; ";

    ClassifyOptions mc;
    mc.mc = MonteCarloInfo{20240601, 100};
    mc.compute_weak = false;
    mc.weak_grid = 0;
    std::size_t certified = 0;
    for (std::int64_t j = 1; j <= 200; ++j) {
        auto v = classify_semigroup_point(g, half, Rational(j, 201), eps, 10000, mc);
        certified += v.is_recurrent() ? 1 : 0;
    }
    r.require(certified * 100 >= 99 * 200, std::to_string(certified) + "/200 semigroup certificates");
    r.detail << certified << "/200 semigroup points certified (Monte Carlo, 100 trials, N=10^4)";
}

// ---------------------------------------------------------------- 4
void recurrent_pair_decay(Result& r)
{
    ExampleManifest m = manifest("example3");
    MarkovChain q(build_example("example3"), half);
    auto g = maps_of(q.generators());
    for (const auto& e : m.expectations) {
        if (e.operation != "return_profile")
            continue;
        Rational x = e.args.at("x").get<Rational>();
        Rational eps = e.args.at("eps").get<Rational>();
        IntervalSet o = ball(x, eps, BallStyle::open);
        auto prof = return_profile(q, x, o, 24);
        // enumeration oracle on the first 14 steps
        for (std::size_t n = 1; n <= 14; ++n) {
            Rational brute;
            for (const auto& [pt, cell] : oracle::enumerate_words(g, half, x, n))
                if (o.contains(pt))
                    brute += cell.mass;
            r.require(brute == prof.mass[n - 1], "profile differs from enumeration at x=" + x.str());
        }
        Rational window_min = prof.mass[11];
        for (std::size_t n = 12; n <= 24; ++n)
            window_min = min(window_min, prof.mass[n - 1]);
        Rational probe = prof.mass[3];
        Rational slope = slope_of(prof.mass, 1, 24);
        bool decays = window_min < probe / 4;
        r.require(decays, "x=" + x.str() + ": window min " + window_min.str() + " not below " + (probe / 4).str());
        r.require(slope.sign() <= 0, "x=" + x.str() + ": slope " + slope.str() + " positive");
        r.detail << "x=" << x << " eps=" << eps << ": Q^4=" << probe << ", min[12,24]=" << window_min << " ("
                 << window_min.to_double() << "), slope " << slope.to_double() << "; ";
    }
}

// ---------------------------------------------------------------- 5
void squaring_statistics(Result& r)
{
    GeneratorSet g = build_example("example-qu");
    auto maps = maps_of(g);
    const Rational eps(1, 4);
    IntervalSet o0 = ball(0, eps, BallStyle::open), o1 = IntervalSet::point(1);
    auto rows0 = kappa_sequence(g, 0, o0, 20);
    auto rows1 = kappa_sequence(g, 1, o1, 20);
    for (std::size_t n = 1; n <= 20; ++n) {
        r.require(rows0[n - 1].kappa == Rational::pow2(-static_cast<int>(n)), "kappa at 0, n=" + std::to_string(n));
        r.require(rows1[n - 1].kappa == 1, "kappa at 1, n=" + std::to_string(n));
    }
    for (std::size_t n = 1; n <= 10; ++n) {
        mpz_class c0 = 0, c1 = 0;
        for (const auto& [pt, cell] : oracle::enumerate_words(maps, half, 0, n))
            if (o0.contains(pt))
                c0 += cell.words;
        for (const auto& [pt, cell] : oracle::enumerate_words(maps, half, 1, n))
            if (o1.contains(pt))
                c1 += cell.words;
        r.require(c0 == rows0[n - 1].count, "enumeration count at 0");
        r.require(c1 == rows1[n - 1].count, "enumeration count at 1");
    }
    const std::size_t horizon = 20;
    auto v0 = classify_semigroup_point(g, half, 0, eps, horizon);
    auto v1 = classify_semigroup_point(g, half, 1, eps, horizon);
    r.require(v0.is_recurrent() && v1.is_recurrent(), "recurrence certificates");
    r.require(v1.uniform.value == 1, "window min at 1 is " + v1.uniform.value.str());
    r.require(v0.uniform.value == Rational::pow2(-static_cast<int>(horizon)), "window min at 0 is " + v0.uniform.value.str());
    r.require(v1.is_uniform() && !v0.is_uniform(), "uniform flags");
    r.detail << "kappa(0)=2^-n and kappa(1)=1 for n<=20; window min at 0: " << v0.uniform.value
             << ", at 1: " << v1.uniform.value;
}

// ---------------------------------------------------------------- 6
void kappa_identity(Result& r)
{
    oracle::Random rnd(606);
    std::size_t checks = 0;
    for (const auto& e : catalogue()) {
        GeneratorSet g = build_example(e.name);
        if (!g.is_affine())
            continue;
        MarkovChain q = MarkovChain::uniform(g);
        for (int i = 0; i < 50; ++i) {
            Rational x = rnd.point();
            IntervalSet o = rnd.set(3);
            for (std::size_t n = 1; n <= 8; ++n) {
                Rational k = kappa(g, x, o, n);
                Rational mass = qn_distribution(q, x, n).mass_in(o);
                r.require(k == mass, e.name + ": kappa differs from chain mass");
                ++checks;
            }
        }
    }
    r.detail << checks << " exact comparisons";
}

// ---------------------------------------------------------------- 7
void p_invariance(Result& r)
{
    const std::vector<std::vector<Rational>> ps{
        half, {Rational(1, 10), Rational(9, 10)}, {Rational(9, 10), Rational(1, 10)}};
    oracle::Random rnd(707);
    ClassifyOptions opts;
    opts.weak_grid = 16;
    std::size_t verdicts = 0, sandwiches = 0;
    for (const auto* name : {"example2", "example3", "example4"}) {
        GeneratorSet g = build_example(name);
        for (int i = 0; i < 50; ++i) {
            Rational x = rnd.point();
            Rational eps = Rational::pow2(-static_cast<int>(3 + rnd.below(3)));
            std::vector<RecurrenceVerdict> vs;
            std::vector<ReturnProfile> profs;
            for (const auto& p : ps) {
                vs.push_back(classify_semigroup_point(g, p, x, eps, 12, opts));
                profs.push_back(return_profile(MarkovChain(g, p), x, ball(x, eps, BallStyle::open), 12));
            }
            for (std::size_t k = 1; k < ps.size(); ++k) {
                bool same = vs[k].recurrent == vs[0].recurrent && vs[k].weak == vs[0].weak &&
                            vs[k].uniform.value.sign() == vs[0].uniform.value.sign() &&
                            vs[k].weak_uniform.value.sign() == vs[0].weak_uniform.value.sign();
                r.require(same, std::string(name) + ": flags differ at x=" + x.str());
                ++verdicts;
            }
            for (std::size_t a = 0; a < ps.size(); ++a)
                for (std::size_t b = 0; b < ps.size(); ++b) {
                    Rational gamma = compatibility_gamma(ps[a], ps[b]);
                    Rational gn(1);
                    for (std::size_t n = 1; n <= 12; ++n) {
                        gn *= gamma;
                        const Rational& qa = profs[a].mass[n - 1];
                        const Rational& qb = profs[b].mass[n - 1];
                        r.require(gn * qb <= qa && qa * gn <= qb, "gamma sandwich");
                        ++sandwiches;
                    }
                }
        }
    }
    r.detail << verdicts << " verdict comparisons, " << sandwiches << " sandwich inequalities";
}

// ---------------------------------------------------------------- 8
void series_anchors(Result& r)
{
    auto dbl = poincare_partial_sums(build_example("doubling")[0], Measure::lebesgue(),
                                     IntervalSet{Interval::open(0, Rational(1, 2))}, 20);
    for (std::size_t n = 1; n <= 20; ++n)
        r.require(dbl.partial_sums[n - 1] == Rational(static_cast<std::int64_t>(n), 2), "doubling S_" + std::to_string(n));
    PiecewiseMap t = build_example("eq2-map")[0];
    auto zero = poincare_partial_sums(t, Measure::dirac(0), IntervalSet::point(0), 100);
    for (const auto& s : zero.partial_sums)
        r.require(s == 0, "contraction partial sum " + s.str());
    auto v = classify_map_point(t, 0, Rational::pow2(-5), 100);
    r.require(v.is_recurrent(), "0 not certified recurrent");
    r.detail << "doubling S_20=" << dbl.partial_sums.back() << " (" << to_string(dbl.trend) << "); contraction S_100="
             << zero.partial_sums.back() << " (" << to_string(zero.trend) << "), 0 recurrent at n="
             << v.recurrent_time.value_or(0) << " with " << v.return_times.size() << " returns";
}

// ---------------------------------------------------------------- 9
void oracle_equivalence(Result& r)
{
    oracle::Random rnd(909);
    std::size_t compared = 0;
    for (const auto& e : catalogue()) {
        GeneratorSet g = build_example(e.name);
        auto maps = maps_of(g);
        auto p = uniform_p(g.size());
        MarkovChain q(g, p);
        for (int i = 0; i < 4; ++i) {
            Rational x = rnd.point();
            IntervalSet a = rnd.set(3);
            for (std::size_t n = 0; n <= 6; ++n) {
                auto dp = qn_distribution(q, x, n);
                auto brute = oracle::enumerate_words(maps, p, x, n);
                bool same = dp.atoms.size() == brute.size();
                std::size_t k = 0;
                mpz_class count = 0;
                for (const auto& [pt, cell] : brute) {
                    if (same)
                        same = dp.atoms[k].point == pt && dp.atoms[k].mass == cell.mass && dp.atoms[k].words == cell.words;
                    if (a.contains(pt))
                        count += cell.words;
                    ++k;
                }
                r.require(same, e.name + ": distribution differs at n=" + std::to_string(n));
                r.require(count_returns(g, x, a, n) == count, e.name + ": count differs at n=" + std::to_string(n));
                ++compared;
            }
        }
    }
    r.detail << compared << " (chain, x, n) distributions and counts identical";
}

// ---------------------------------------------------------------- 10
void verdict_sweep(Result& r)
{
    oracle::Random rnd(1010);
    std::vector<std::string> names;
    for (const auto& e : catalogue())
        names.push_back(e.name);
    ClassifyOptions opts;
    opts.weak_grid = 8;
    std::size_t tuples = 0, inclusion = 0, monotone = 0, consistent = 0, capped = 0;
    auto inclusions_hold = [](const RecurrenceVerdict& v) {
        bool ok = true;
        if (v.is_uniform())
            ok = ok && v.is_recurrent();
        if (v.is_recurrent())
            ok = ok && v.is_weak();
        if (v.weak_uniform.computed)
            ok = ok && v.weak_uniform.value.sign() >= 0;
        return ok;
    };
    while (tuples < 1000) {
        const auto& name = names[rnd.below(names.size())];
        GeneratorSet g = build_example(name, ExampleParams{16, Rational(1)});
        Rational x = rnd.point();
        Rational eps = Rational::pow2(-static_cast<int>(2 + rnd.below(6)));
        try {
        if (g.size() == 1) {
            std::size_t n = 5 + rnd.below(200);
            auto a = classify_map_point(g[0], x, eps, n, opts);
            auto b = classify_map_point(g[0], x, eps, 2 * n, opts);
            r.require(inclusions_hold(a) && inclusions_hold(b), name + ": inclusion chain");
            r.require((!a.is_recurrent() || b.is_recurrent()) && (!a.is_weak() || b.is_weak()),
                      name + ": certificate lost at larger horizon");
            inclusion += 2;
            ++monotone;
            if (g.is_affine()) {
                auto c = classify_chain_point(MarkovChain::uniform(g), x, eps, n, opts);
                r.require(c.recurrent == a.recurrent && c.recurrent_time == a.recurrent_time && c.weak == a.weak,
                          name + ": map and chain flags differ at x=" + x.str());
                ++consistent;
            }
        } else {
            std::size_t n = 3 + rnd.below(8);
            auto p = uniform_p(g.size());
            auto a = classify_semigroup_point(g, p, x, eps, n, opts);
            auto b = classify_semigroup_point(g, p, x, eps, n + 4, opts);
            r.require(inclusions_hold(a) && inclusions_hold(b), name + ": inclusion chain");
            r.require((!a.is_recurrent() || b.is_recurrent()) && (!a.is_weak() || b.is_weak()),
                      name + ": certificate lost at larger horizon");
            inclusion += 2;
            ++monotone;
        }
        } catch (const BitCapExceeded&) {
            // squaring past the bit cap is reported, not approximated; draw another tuple
            r.require(name == "example-qu", name + ": unexpected bit cap");
            ++capped;
            continue;
        }
        ++tuples;
    }
    auto wu = classify_map_point(build_example("example-wu")[0], 0, Rational::pow2(-4), 1000);
    r.require(wu.is_weak(), "wu: 0 not weakly recurrent");
    r.require(wu.weak_uniform.computed && wu.weak_uniform.value == 0, "wu: weak-uniform window min not 0");
    r.detail << tuples << " tuples: " << inclusion << " inclusion checks, " << monotone << " horizon pairs, " << consistent
             << " map/chain pairs, " << capped << " squaring tuples stopped at the bit cap; wu at 0: weak " << to_string(wu.weak) << ", weak-uniform min "
             << wu.weak_uniform.value;
}

// ---------------------------------------------------------------- 11
void radius_bracket(Result& r)
{
    PiecewiseMap t = build_example("example1")[0];
    Rational tol = Rational::pow2(-16);
    auto b = r_function(t, Rational(1, 4), 50, tol);
    // (1/4 + r)/2 <= 1/4 - r  <=>  r <= 1/12
    Rational analytic(1, 12);
    r.require(b.lower <= analytic && analytic <= b.upper, "1/12 outside [" + b.lower.str() + "," + b.upper.str() + "]");
    r.require(b.upper - b.lower <= tol, "bracket width " + (b.upper - b.lower).str());
    auto z = r_function(t, 0, 50, tol);
    r.require(z.upper <= tol, "upper bound at 0 is " + z.upper.str());
    r.detail << "x=1/4: [" << b.lower << ", " << b.upper << "]; x=0: [" << z.lower << ", " << z.upper << "]";
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Result&)> body;
};

} // namespace

int main(int argc, char** argv)
{
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--only K]\n";
            return 2;
        }
    }
    const std::vector<Criterion> criteria{
        {1, "finite multivalued maps have return witnesses", lemma_census},
        {2, "zigzag pair: two uniform Ulam components", zigzag_components},
        {3, "zigzag pair: no generator recurrence, semigroup recurrence", zigzag_recurrence},
        {4, "uniformly recurrent pair: return mass decays", recurrent_pair_decay},
        {5, "squaring pair: exact trajectory proportions", squaring_statistics},
        {6, "proportions equal uniform chain masses", kappa_identity},
        {7, "positivity flags independent of p", p_invariance},
        {8, "return series anchors", series_anchors},
        {9, "propagation equals word enumeration", oracle_equivalence},
        {10, "verdict invariants over random tuples", verdict_sweep},
        {11, "separation radius bracket", radius_bracket},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        if (only && c.id != only)
            continue;
        Result r;
        auto t0 = Clock::now();
        try {
            c.body(r);
        } catch (const std::exception& e) {
            r.require(false, std::string("exception: ") + e.what());
        }
        failures += r.pass ? 0 : 1;
        std::cout << (r.pass ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.title << " (" << seconds_since(t0)
                  << " s): " << r.summary() << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
