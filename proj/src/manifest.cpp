#include "semirec/manifest.hpp"

#include <cmath>

#include "semirec/classify.hpp"
#include "semirec/error.hpp"
#include "semirec/semigroup.hpp"
#include "semirec/serialize.hpp"
#include "semirec/series.hpp"
#include "semirec/ulam.hpp"

namespace semirec {

using nlohmann::json;

std::string to_string(Source s)
{
    switch (s) {
    case Source::stated:
        return "stated";
    case Source::oracle:
        return "oracle";
    case Source::elementary:
        break;
    }
    return "elementary";
}

namespace {

Expectation expect(std::string op, json args, json expected, Source src, std::string claim, std::string note = {})
{
    return Expectation{std::move(op), std::move(args), std::move(expected), src, std::move(claim), std::move(note)};
}

void add_eq2(ExampleManifest& m)
{
    auto& e = m.expectations;
    e.push_back(expect("eval", {{"generator", 1}, {"x", "0"}}, {{"value", "1"}}, Source::stated, "0 is sent to 1"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "1/2"}}, {{"value", "1/4"}}, Source::stated,
                       "positive points are halved"));
    e.push_back(expect("preimage", {{"generator", 1}, {"set", "{0}"}}, {{"value", "{}"}}, Source::stated,
                       "nothing maps onto 0"));
    e.push_back(expect("preimage", {{"generator", 1}, {"set", "(1/2,1]"}}, {{"value", "{0}"}}, Source::oracle,
                       "only the override lands in the upper half"));
    e.push_back(expect("poincare",
                       {{"generator", 1}, {"measure", "dirac:0"}, {"set", "{0}"}, {"horizon", 10}},
                       {{"last", "0"}, {"trend", "bounded"}}, Source::stated,
                       "the series for {0} under the point mass at 0 stays at 0"));
    e.push_back(expect("poincare",
                       {{"generator", 1}, {"measure", "lebesgue"}, {"set", "(1/4,1/2)"}, {"horizon", 10}},
                       {{"last", "1/2"}, {"trend", "bounded"}}, Source::oracle,
                       "preimages (1/2,1], then {0}, then empty"));
    e.push_back(expect("classify_map",
                       {{"generator", 1}, {"x", "0"}, {"eps", "1/32"}, {"horizon", 100}},
                       {{"recurrent", "certified"}, {"recurrent_time", 7}, {"uniform_meets", true}},
                       Source::oracle, "0 returns at step 7 and keeps returning"));
}

void add_example1(ExampleManifest& m)
{
    auto& e = m.expectations;
    e.push_back(expect("eval", {{"generator", 1}, {"x", "0"}}, {{"value", "4/5"}}, Source::stated, "0 goes to 4/5"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "1"}}, {{"value", "1/5"}}, Source::oracle,
                       "1 goes to 1/5 by the reflected clause"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "3/4"}}, {{"value", "7/8"}}, Source::elementary,
                       "upper branch x/2+1/2"));
    e.push_back(expect("classify_map",
                       {{"generator", 1}, {"x", "1/4"}, {"eps", "1/16"}, {"horizon", 10000}, {"weak_grid", 0}},
                       {{"recurrent", "none-within-horizon"}}, Source::oracle,
                       "the orbit of 1/4 decreases monotonically to 0"));
    e.push_back(expect("classify_chain",
                       {{"x", "1"}, {"eps", "1/8"}, {"horizon", 100}, {"weak_grid", 0}},
                       {{"recurrent", "none-within-horizon"}, {"weak", "certified"}}, Source::stated,
                       "1 is weakly recurrent but not recurrent"));
    e.push_back(expect("classify_map",
                       {{"generator", 1}, {"x", "0"}, {"eps", "1/8"}, {"horizon", 100}, {"weak_grid", 0}},
                       {{"recurrent", "none-within-horizon"}, {"weak", "certified"}}, Source::stated,
                       "0 is weakly recurrent but not recurrent"));
    e.push_back(expect("r_function",
                       {{"generator", 1}, {"x", "1/4"}, {"horizon", 50}, {"r_tol", "1/65536"}, {"target", "1/12"}},
                       {{"contains_target", true}, {"width_ok", true}}, Source::oracle,
                       "the largest separated radius at 1/4 solves (1/4+r)/2 = 1/4-r"));
}

void add_example1exp(ExampleManifest& m)
{
    auto& e = m.expectations;
    e.push_back(expect("eval", {{"generator", 1}, {"x", "1"}}, {{"value", "3/4"}}, Source::stated, "1 goes to 3/4"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "0"}}, {{"value", "3/4"}}, Source::elementary,
                       "0 is the same circle point as 1"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "3/8"}}, {{"value", "1/4"}}, Source::elementary,
                       "block (1/4,1/2] is shifted by 1/8 at slope 1"));
    e.push_back(expect("classify_map",
                       {{"generator", 1}, {"x", "1"}, {"eps", "1/16"}, {"horizon", 1000}, {"weak_grid", 0}},
                       {{"recurrent", "certified"}}, Source::oracle,
                       "the orbit of 1 approaches 0, which is 1 on the circle",
                       "computed at depth 40; the orbit settles in the identity residual near 0"));
}

void add_wu(ExampleManifest& m)
{
    auto& e = m.expectations;
    e.push_back(expect("eval", {{"generator", 1}, {"x", "0"}}, {{"value", "2/3"}}, Source::stated, "0 goes to 2/3"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "3/16"}}, {{"value", "1/4"}}, Source::stated,
                       "block (1/8,1/4] shifts right by 1/16"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "3/4"}}, {{"value", "3/4"}}, Source::stated,
                       "upper half is fixed"));
    e.push_back(expect("classify_map",
                       {{"generator", 1}, {"x", "0"}, {"eps", "1/16"}, {"horizon", 1000}, {"weak_grid", 128}},
                       {{"weak", "certified"}, {"weak_uniform_window_min", "0"}, {"recurrent", "none-within-horizon"}},
                       Source::stated, "0 is weakly recurrent without uniform weak recurrence"));
}

void add_example2(ExampleManifest& m)
{
    auto& e = m.expectations;
    e.push_back(expect("eval", {{"generator", 1}, {"x", "1"}}, {{"value", "0"}}, Source::stated, "T1 sends 1 to 0"));
    e.push_back(expect("eval", {{"generator", 2}, {"x", "0"}}, {{"value", "1"}}, Source::stated, "T2 sends 0 to 1"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "1/2"}}, {{"value", "3/4"}}, Source::stated,
                       "T1 sends 1/2 to 3/4"));
    e.push_back(expect("eval", {{"generator", 2}, {"x", "1/2"}}, {{"value", "1/4"}}, Source::oracle,
                       "formula value of T2 at 1/2", "text and formula disagree; formula kept"));
    e.push_back(expect("stationary_components", {{"bins", 16}},
                       {{"count", 2}, {"supports", json::array({json::array({0, 7}), json::array({8, 15})})},
                        {"uniform", true}},
                       Source::stated, "two invariant components, one per half"));
    e.push_back(expect("classify_map",
                       {{"generator", 1}, {"x", "1/3"}, {"eps", "1/64"}, {"horizon", 1000}, {"weak_grid", 0}},
                       {{"recurrent", "none-within-horizon"}}, Source::stated, "T1 alone has no recurrent point"));
    e.push_back(expect("classify_map",
                       {{"generator", 2}, {"x", "1/3"}, {"eps", "1/64"}, {"horizon", 1000}, {"weak_grid", 0}},
                       {{"recurrent", "none-within-horizon"}}, Source::stated, "T2 alone has no recurrent point"));
    e.push_back(expect("classify_semigroup",
                       {{"x", "1/3"}, {"eps", "1/64"}, {"horizon", 10000}, {"mc_seed", 1}, {"mc_samples", 100}},
                       {{"recurrent", "certified"}}, Source::oracle,
                       "the semigroup returns near 1/3 with positive probability"));
}

void add_example3(ExampleManifest& m)
{
    auto& e = m.expectations;
    e.push_back(expect("eval", {{"generator", 1}, {"x", "0"}}, {{"value", "1/4"}}, Source::stated,
                       "T1 sends 0 to 1/4", "override wins over the branch x/2"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "1/3"}}, {{"value", "3/5"}}, Source::stated,
                       "T1 sends 1/3 to 3/5"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "1/2"}}, {{"value", "1/2"}}, Source::elementary,
                       "the reflected clause at 1/2 forces a fixed point"));
    e.push_back(expect("eval", {{"generator", 2}, {"x", "1/2"}}, {{"value", "1/3"}}, Source::stated,
                       "T2 sends 1/2 to 1/3"));
    e.push_back(expect("classify_map",
                       {{"generator", 1}, {"x", "0"}, {"eps", "1/50"}, {"horizon", 1000}, {"weak_grid", 0}},
                       {{"recurrent", "certified"}, {"uniform_meets", true}}, Source::stated,
                       "0 is uniformly recurrent for T1"));
    e.push_back(expect("classify_map",
                       {{"generator", 1}, {"x", "1/3"}, {"eps", "1/50"}, {"horizon", 1000}, {"weak_grid", 0}},
                       {{"recurrent", "none-within-horizon"}}, Source::oracle,
                       "formula orbit of 1/3 falls into the 2-cycle {4/9,5/9}",
                       "text lists 1/3 as uniformly recurrent for T1; the formulas do not return"));
    e.push_back(expect("classify_map",
                       {{"generator", 2}, {"x", "1/2"}, {"eps", "1/50"}, {"horizon", 1000}, {"weak_grid", 0}},
                       {{"recurrent", "certified"}, {"uniform_meets", true}}, Source::stated,
                       "1/2 is uniformly recurrent for T2"));
    e.push_back(expect("return_profile",
                       {{"x", "0"}, {"eps", "1/8"}, {"horizon", 24}, {"probe", 4}, {"window_lo", 12}},
                       {{"decays", true}, {"nonincreasing", true}}, Source::oracle,
                       "return mass at 0 decays like 2^-n"));
    e.push_back(expect("return_profile",
                       {{"x", "1"}, {"eps", "1/8"}, {"horizon", 24}, {"probe", 4}, {"window_lo", 12}},
                       {{"decays", true}, {"nonincreasing", true}}, Source::oracle,
                       "return mass at 1 decays like 2^-n"));
    e.push_back(expect("return_profile",
                       {{"x", "1/2"}, {"eps", "1/50"}, {"horizon", 24}, {"probe", 4}, {"window_lo", 12}},
                       {{"decays", false}}, Source::oracle,
                       "return mass at 1/2 stays near 1/4",
                       "text expects decay at 1/2; the middle third is invariant and T2 contracts it onto 1/2"));
}

void add_example4(ExampleManifest& m)
{
    auto& e = m.expectations;
    e.push_back(expect("eval", {{"generator", 1}, {"x", "1/3"}}, {{"value", "1/3"}}, Source::elementary,
                       "left-limit value at 1/3"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "1/2"}}, {{"value", "7/12"}}, Source::elementary,
                       "left-limit value at 1/2"));
    e.push_back(expect("eval", {{"generator", 1}, {"x", "2/3"}}, {{"value", "5/9"}}, Source::elementary,
                       "left-limit value at 2/3"));
    e.push_back(expect("classify_map",
                       {{"generator", 1}, {"x", "1/6"}, {"eps", "1/100"}, {"horizon", 10}, {"weak_grid", 0}},
                       {{"recurrent", "certified"}, {"recurrent_time", 1}}, Source::elementary,
                       "points of [0,1/3) are fixed by T1"));
    e.push_back(expect("classify_map",
                       {{"generator", 2}, {"x", "1/2"}, {"eps", "1/100"}, {"horizon", 100}, {"weak_grid", 0}},
                       {{"recurrent", "certified"}}, Source::stated, "1/2 is recurrent for T2"));
    e.push_back(expect("rec_fraction",
                       {{"generator", 1}, {"points", 300}, {"eps", "1/1000"}, {"horizon", 1000}},
                       {{"value", "1/3"}, {"tol", "1/30"}}, Source::stated,
                       "recurrent set of T1 has length 1/3"));
    e.push_back(expect("rec_fraction",
                       {{"generator", 2}, {"points", 300}, {"eps", "1/1000"}, {"horizon", 1000}},
                       {{"value", "1/3"}, {"tol", "1/30"}}, Source::stated,
                       "recurrent set of T2 has length 1/3"));
}

void add_qu(ExampleManifest& m)
{
    auto& e = m.expectations;
    e.push_back(expect("eval", {{"generator", 1}, {"x", "1/2"}}, {{"value", "1/4"}}, Source::stated, "T1 squares"));
    e.push_back(expect("eval", {{"generator", 2}, {"x", "1/3"}}, {{"value", "1"}}, Source::stated,
                       "T2 is constant 1"));
    e.push_back(expect("kappa", {{"x", "0"}, {"set", "[0,1/4)"}, {"n", 10}}, {{"value", "1/1024"}}, Source::oracle,
                       "only the all-T1 word fixes 0"));
    e.push_back(expect("kappa", {{"x", "1"}, {"set", "{1}"}, {"n", 10}}, {{"value", "1"}}, Source::oracle,
                       "both maps fix 1"));
    e.push_back(expect("classify_semigroup", {{"x", "1"}, {"eps", "1/4"}, {"horizon", 20}, {"weak_grid", 0}},
                       {{"recurrent", "certified"}, {"uniform_window_min", "1"}}, Source::stated,
                       "1 is uniformly recurrent"));
    e.push_back(expect("classify_semigroup", {{"x", "0"}, {"eps", "1/4"}, {"horizon", 20}, {"weak_grid", 0}},
                       {{"recurrent", "certified"}, {"uniform_window_min", "1/1048576"}}, Source::stated,
                       "0 is recurrent but not uniformly"));
}

void add_anchor(ExampleManifest& m)
{
    auto& e = m.expectations;
    if (m.name == "doubling") {
        e.push_back(expect("poincare",
                           {{"generator", 1}, {"measure", "lebesgue"}, {"set", "(0,1/2)"}, {"horizon", 10}},
                           {{"last", "5"}, {"trend", "linear-growth"}}, Source::elementary,
                           "Lebesgue measure is invariant"));
        e.push_back(expect("stationary_components", {{"bins", 2}},
                           {{"count", 1}, {"supports", json::array({json::array({0, 1})})}, {"uniform", true}},
                           Source::oracle, "one uniform component"));
    } else if (m.name == "identity") {
        e.push_back(expect("classify_map", {{"generator", 1}, {"x", "1/3"}, {"eps", "1/100"}, {"horizon", 10}},
                           {{"recurrent", "certified"}, {"recurrent_time", 1}}, Source::elementary,
                           "every point is fixed"));
        e.push_back(expect("stationary_components", {{"bins", 4}}, {{"count", 4}}, Source::elementary,
                           "each bin is closed"));
    } else {
        e.push_back(expect("classify_map", {{"generator", 1}, {"x", "0"}, {"eps", "1/10"}, {"horizon", 10}},
                           {{"recurrent", "certified"}, {"recurrent_time", 3}}, Source::elementary,
                           "rotation by 1/3 has period 3"));
        e.push_back(expect("stationary_components", {{"bins", 3}},
                           {{"count", 1}, {"uniform", true}}, Source::elementary, "cyclic permutation of thirds"));
    }
}

const GeneratorSet& cached_generators(const ExampleManifest& m)
{
    thread_local std::string key;
    thread_local std::optional<GeneratorSet> gens;
    std::string k = m.name + "/" + std::to_string(m.params.depth) + "/" + m.params.slope.str();
    if (!gens || key != k) {
        gens = build_example(m.name, m.params);
        key = k;
    }
    return *gens;
}

Rational arg_rational(const json& args, const char* key) { return args.at(key).get<Rational>(); }

std::vector<Rational> arg_probs(const json& args, std::size_t d)
{
    if (args.contains("p"))
        return args.at("p").get<std::vector<Rational>>();
    return std::vector<Rational>(d, Rational(1, static_cast<std::int64_t>(d)));
}

const PiecewiseMap& arg_generator(const GeneratorSet& g, const json& args)
{
    auto i = args.at("generator").get<std::size_t>();
    if (i < 1 || i > g.size())
        throw InvalidArgument("generator index out of range");
    return g[i - 1];
}

ClassifyOptions arg_options(const json& args)
{
    ClassifyOptions o;
    o.weak_grid = args.value("weak_grid", std::size_t{128});
    o.compute_weak = args.value("weak", true);
    if (args.contains("mc_seed"))
        o.mc = MonteCarloInfo{args.at("mc_seed").get<std::uint64_t>(), args.at("mc_samples").get<std::size_t>()};
    return o;
}

json verdict_summary(const RecurrenceVerdict& v)
{
    json j{{"recurrent", to_string(v.recurrent)}, {"weak", to_string(v.weak)}};
    if (v.recurrent_time)
        j["recurrent_time"] = *v.recurrent_time;
    if (v.uniform.computed) {
        j["uniform_window_min"] = v.uniform.value;
        j["uniform_meets"] = v.uniform.meets;
    }
    if (v.weak_uniform.computed)
        j["weak_uniform_window_min"] = v.weak_uniform.value;
    return j;
}

} // namespace

ExampleManifest manifest(std::string_view name)
{
    const auto& entry = catalogue_entry(name);
    ExampleManifest m;
    m.name = entry.name;
    if (entry.truncated)
        m.truncation = "blocks below 2^-" + std::to_string(m.params.depth) + " replaced by the identity on (0,2^-" +
                       std::to_string(m.params.depth) + "]";
    if (name == "eq2-map") {
        add_eq2(m);
    } else if (name == "example1") {
        add_example1(m);
    } else if (name == "example1exp") {
        m.conventions.push_back("slope a = " + m.params.slope.str());
        m.conventions.push_back("0 is identified with 1 and sent to T(1) = 3/4");
        m.discrepancies.push_back(
            "Point 1 is described as recurrent while every measure is pushed towards the point mass at 1 and "
            "T moves that mass to 3/4; at finite depth the orbit of 1 is computed directly.");
        add_example1exp(m);
    } else if (name == "example-wu") {
        add_wu(m);
    } else if (name == "example2") {
        m.discrepancies.push_back("T2 at 1/2: the formula gives 1/4, the text gives 1. The formula is used.");
        add_example2(m);
    } else if (name == "example3") {
        m.conventions.push_back("T1 at 0: the override 1/4 wins over the branch x/2");
        m.conventions.push_back("T1 at 1/2: the self-referential clause has the unique solution 1/2");
        m.conventions.push_back("T2 on the upper half uses 1 - T2(1-x)");
        m.discrepancies.push_back("T1 at 1/3 is listed as uniformly recurrent, but the formula orbit falls into "
                                  "the attracting 2-cycle {4/9, 5/9}.");
        m.discrepancies.push_back("T2's reflected clause names T1; read literally it contradicts the described "
                                  "behaviour of T2, so the self-reflection of T2 is used.");
        m.discrepancies.push_back("Return mass near 1/2 is expected to vanish, but the middle third is invariant "
                                  "under both maps and T2 contracts it onto 1/2; the mass settles near 0.24.");
        add_example3(m);
    } else if (name == "example4") {
        m.conventions.push_back("T1 at 1/3, 1/2, 2/3 takes the left-limit values 1/3, 7/12, 5/9");
        m.discrepancies.push_back("The recurrent set of T2 is listed as {1/2} u [2/3,1]; by the formula 2/3 is "
                                  "not fixed, giving {1/2} u (2/3,1]. Both have length 1/3.");
        add_example4(m);
    } else if (name == "example-qu") {
        add_qu(m);
    } else {
        add_anchor(m);
    }
    return m;
}

bool matches(const json& actual, const json& expected)
{
    for (const auto& [key, want] : expected.items()) {
        if (key == "tol")
            continue;
        if (!actual.contains(key))
            return false;
        if (key == "value" && expected.contains("tol")) {
            Rational diff = abs(actual.at(key).get<Rational>() - want.get<Rational>());
            if (diff > expected.at("tol").get<Rational>())
                return false;
            continue;
        }
        if (actual.at(key) != want)
            return false;
    }
    return true;
}

json run_operation(const ExampleManifest& m, const std::string& op, const json& args)
{
    const GeneratorSet& g = cached_generators(m);
    if (op == "eval")
        return {{"value", arg_generator(g, args).eval(arg_rational(args, "x"))}};
    if (op == "preimage")
        return {{"value", format_interval_set(preimage(arg_generator(g, args),
                                                       parse_interval_set(args.at("set").get<std::string>())))}};
    if (op == "poincare") {
        auto rep = poincare_partial_sums(arg_generator(g, args), parse_measure(args.at("measure").get<std::string>()),
                                         parse_interval_set(args.at("set").get<std::string>()),
                                         args.at("horizon").get<std::size_t>());
        return {{"last", rep.partial_sums.back()}, {"trend", to_string(rep.trend)}};
    }
    if (op == "classify_map")
        return verdict_summary(classify_map_point(arg_generator(g, args), arg_rational(args, "x"),
                                                  arg_rational(args, "eps"), args.at("horizon").get<std::size_t>(),
                                                  arg_options(args)));
    if (op == "classify_chain" || op == "classify_semigroup") {
        auto p = arg_probs(args, g.size());
        auto x = arg_rational(args, "x");
        auto eps = arg_rational(args, "eps");
        auto n = args.at("horizon").get<std::size_t>();
        if (op == "classify_chain")
            return verdict_summary(classify_chain_point(MarkovChain(g, p), x, eps, n, arg_options(args)));
        return verdict_summary(classify_semigroup_point(g, p, x, eps, n, arg_options(args)));
    }
    if (op == "stationary_components") {
        MarkovChain q(g, arg_probs(args, g.size()));
        auto comps = stationary_components(ulam_matrix(q, args.at("bins").get<std::size_t>()), 1e-12);
        json supports = json::array();
        bool uniform = true;
        for (const auto& c : comps) {
            supports.push_back({c.support.front(), c.support.back()});
            double target = 1.0 / static_cast<double>(c.support.size());
            for (double w : c.weights)
                if (std::fabs(w - target) >= 1e-9)
                    uniform = false;
            if (c.support.back() - c.support.front() + 1 != c.support.size())
                uniform = false;
        }
        return {{"count", comps.size()}, {"supports", supports}, {"uniform", uniform}};
    }
    if (op == "kappa")
        return {{"value", kappa(g, arg_rational(args, "x"), parse_interval_set(args.at("set").get<std::string>()),
                                args.at("n").get<std::size_t>())}};
    if (op == "rec_fraction") {
        const auto& t = arg_generator(g, args);
        auto pts = args.at("points").get<std::int64_t>();
        ClassifyOptions o;
        o.compute_weak = false;
        o.weak_grid = 0;
        std::int64_t hits = 0;
        for (std::int64_t j = 0; j < pts; ++j)
            if (classify_map_point(t, Rational(2 * j + 1, 2 * pts), arg_rational(args, "eps"),
                                   args.at("horizon").get<std::size_t>(), o)
                    .is_recurrent())
                ++hits;
        return {{"value", Rational(hits, pts)}};
    }
    if (op == "return_profile") {
        auto x = arg_rational(args, "x");
        auto n = args.at("horizon").get<std::size_t>();
        auto probe = args.at("probe").get<std::size_t>();
        auto lo = args.at("window_lo").get<std::size_t>();
        if (probe < 1 || probe > n || lo < 1 || lo > n)
            throw InvalidArgument("probe and window must lie within the horizon");
        MarkovChain q(g, arg_probs(args, g.size()));
        auto prof = return_profile(q, x, ball(x, arg_rational(args, "eps"), BallStyle::open), n);
        std::vector<Rational> window(prof.mass.begin() + static_cast<std::ptrdiff_t>(lo - 1), prof.mass.end());
        Rational wmin = *std::min_element(window.begin(), window.end());
        Rational slope = least_squares_slope(window);
        return {{"masses", prof.mass},
                {"probe_value", prof.mass[probe - 1]},
                {"window_min", wmin},
                {"slope", slope},
                {"decays", wmin < prof.mass[probe - 1] / Rational(4)},
                {"nonincreasing", slope.sign() <= 0}};
    }
    if (op == "r_function") {
        auto tol = arg_rational(args, "r_tol");
        auto br = r_function(arg_generator(g, args), arg_rational(args, "x"), args.at("horizon").get<std::size_t>(),
                             tol);
        json j{{"lower", br.lower}, {"upper", br.upper}, {"width_ok", br.upper - br.lower <= tol}};
        if (args.contains("target")) {
            auto target = arg_rational(args, "target");
            j["contains_target"] = br.lower <= target && target <= br.upper;
        }
        return j;
    }
    throw InvalidArgument("unknown manifest operation '" + op + "'");
}

ExpectationResult run_expectation(const ExampleManifest& m, const Expectation& e)
{
    ExpectationResult r;
    r.actual = run_operation(m, e.operation, e.args);
    r.pass = matches(r.actual, e.expected);
    return r;
}

json manifest_to_json(const ExampleManifest& m)
{
    json j;
    j["name"] = m.name;
    j["params"] = {{"depth", m.params.depth}, {"slope", m.params.slope}};
    if (!m.truncation.empty())
        j["truncation"] = m.truncation;
    j["conventions"] = m.conventions;
    j["discrepancies"] = m.discrepancies;
    j["expectations"] = json::array();
    for (const auto& e : m.expectations)
        j["expectations"].push_back({{"operation", e.operation},
                                     {"args", e.args},
                                     {"expected", e.expected},
                                     {"source", to_string(e.source)},
                                     {"claim", e.claim},
                                     {"note", e.note}});
    return j;
}

} // namespace semirec
