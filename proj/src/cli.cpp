#include "semirec/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "semirec/catalogue.hpp"
#include "semirec/classify.hpp"
#include "semirec/error.hpp"
#include "semirec/manifest.hpp"
#include "semirec/map_io.hpp"
#include "semirec/multimap.hpp"
#include "semirec/semigroup.hpp"
#include "semirec/serialize.hpp"
#include "semirec/series.hpp"
#include "semirec/ulam.hpp"

namespace semirec {

using nlohmann::json;

namespace {

void add_source_options(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--example", c.example, "catalogue entry name");
    sub->add_option("--map", c.map_files, "map definition file (repeat for several generators)");
    sub->add_option("--depth", c.depth, "truncation depth K for countable partitions");
    sub->add_option("--slope", c.slope, "slope a of the circle example");
}

void add_chain_options(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--p", c.probs, "comma-separated probabilities p/q (default uniform)");
}

void add_mc_options(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--mode", c.mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    sub->add_option("--seed", c.seed, "Monte Carlo seed");
    sub->add_option("--samples", c.samples, "Monte Carlo trials");
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty())
            out.push_back(cur);
    return out;
}

GeneratorSet load_generators(const RunConfig& c)
{
    if (!c.map_files.empty()) {
        std::vector<PiecewiseMap> maps;
        for (const auto& f : c.map_files)
            maps.push_back(load_map_file(f));
        return GeneratorSet(std::move(maps));
    }
    if (c.example.empty())
        throw InvalidArgument("give --example NAME or --map FILE");
    ExampleParams p;
    p.depth = c.depth;
    p.slope = Rational::parse(c.slope);
    return build_example(c.example, p);
}

std::vector<Rational> parse_probs(const RunConfig& c, std::size_t d)
{
    if (c.probs.empty())
        return std::vector<Rational>(d, Rational(1, static_cast<std::int64_t>(d)));
    std::vector<Rational> p;
    for (const auto& s : split(c.probs, ','))
        p.push_back(Rational::parse(s));
    return p;
}

const PiecewiseMap& pick_generator(const GeneratorSet& g, const RunConfig& c)
{
    if (c.generator < 1 || c.generator > g.size())
        throw InvalidArgument("--generator must lie in 1.." + std::to_string(g.size()));
    return g[c.generator - 1];
}

std::vector<Rational> parse_points(const RunConfig& c)
{
    std::vector<Rational> pts;
    for (const auto& s : c.points)
        pts.push_back(Rational::parse(s));
    if (c.grid > 0)
        for (std::size_t k = 0; k <= c.grid; ++k)
            pts.emplace_back(static_cast<std::int64_t>(k), static_cast<std::int64_t>(c.grid));
    if (pts.empty())
        throw InvalidArgument("give --x p/q or --grid n");
    return pts;
}

IntervalSet parse_set(const RunConfig& c)
{
    if (c.set.empty())
        throw InvalidArgument("give --set");
    return parse_interval_set(c.set);
}

std::optional<MonteCarloInfo> mc_info(const RunConfig& c)
{
    if (c.mode != "mc")
        return std::nullopt;
    if (!c.seed || !c.samples)
        throw InvalidArgument("mc mode requires --seed and --samples");
    return MonteCarloInfo{*c.seed, *c.samples};
}

json config_json(const RunConfig& c)
{
    json j{{"command", c.command}};
    if (!c.series_kind.empty())
        j["kind"] = c.series_kind;
    if (!c.example.empty())
        j["example"] = c.example;
    if (!c.map_files.empty())
        j["maps"] = c.map_files;
    if (c.command == "classify" || c.command == "r-function" || c.command == "series")
        j["generator"] = c.generator;
    if (c.command == "classify") {
        j["subject"] = c.subject;
        j["points"] = c.points;
        j["grid"] = c.grid;
        j["eps"] = c.eps;
        j["weak_grid"] = c.weak_grid;
        j["weak"] = !c.no_weak;
        j["threshold"] = c.threshold;
        j["r_min"] = c.r_min;
    }
    if (c.command == "classify" || c.command == "series" || c.command == "kappa" || c.command == "r-function" ||
        c.command == "distribution")
        j["horizon"] = c.horizon;
    if (!c.probs.empty())
        j["p"] = c.probs;
    if (c.command == "classify" || c.command == "distribution") {
        j["mode"] = c.mode;
        if (c.mode == "mc") {
            j["seed"] = c.seed.value_or(0);
            j["samples"] = c.samples.value_or(0);
        }
    }
    if (c.command == "series")
        j["measure"] = c.measure;
    if (!c.set.empty())
        j["set"] = c.set;
    if (!c.indices.empty())
        j["indices"] = c.indices;
    if (!c.words.empty())
        j["words"] = c.words;
    if (c.command == "ulam") {
        j["bins"] = c.bins;
        j["tol"] = c.tol;
    }
    if (c.command == "r-function")
        j["r_tol"] = c.r_tol;
    if (c.command == "lemma-l1") {
        if (c.exhaustive)
            j["exhaustive"] = c.exhaustive;
        if (!c.multimap.empty())
            j["multimap"] = c.multimap;
        if (c.cover_cells)
            j["cover_cells"] = c.cover_cells;
    }
    if (c.example == "example1exp" || c.example == "example-wu") {
        j["depth"] = c.depth;
        if (c.example == "example1exp")
            j["slope"] = c.slope;
    }
    if (c.bit_cap)
        j["bit_cap"] = c.bit_cap;
    return j;
}

void emit(std::ostream& out, const RunConfig& c, json report)
{
    report["config"] = config_json(c);
    out << report.dump(2) << '\n';
}

json series_json(const SeriesReport& r)
{
    return {{"terms", r.terms},
            {"partial_sums", r.partial_sums},
            {"reference_mass", r.reference_mass},
            {"slope", r.slope},
            {"trend", to_string(r.trend)}};
}

void write_plot(const std::string& path, const std::vector<Rational>& sums, std::size_t first_index)
{
    if (path.empty())
        return;
    std::ofstream f(path);
    if (!f)
        throw InvalidArgument("cannot write plot file " + path);
    for (std::size_t i = 0; i < sums.size(); ++i)
        f << i + first_index << ' ' << sums[i].to_double() << '\n';
}

int cmd_list(const RunConfig& c, std::ostream& out)
{
    if (c.format == "csv") {
        out << "name,generators,params,claims,discrepancies,anchor\n";
        for (const auto& e : catalogue()) {
            auto m = manifest(e.name);
            out << e.name << ',' << e.generators << ',' << (e.truncated ? "depth=40" : "") << ','
                << m.expectations.size() << ',' << m.discrepancies.size() << ',' << (e.anchor ? 1 : 0) << '\n';
        }
        return 0;
    }
    json list = json::array();
    for (const auto& e : catalogue()) {
        auto m = manifest(e.name);
        json params = json::object();
        if (e.truncated)
            params["depth"] = m.params.depth;
        if (e.name == "example1exp")
            params["slope"] = m.params.slope;
        list.push_back({{"name", e.name},
                        {"summary", e.summary},
                        {"generators", e.generators},
                        {"params", params},
                        {"claims", m.expectations.size()},
                        {"discrepancies", m.discrepancies.size()},
                        {"anchor", e.anchor}});
    }
    emit(out, c, {{"examples", list}});
    return 0;
}

int cmd_classify(const RunConfig& c, std::ostream& out)
{
    auto g = load_generators(c);
    auto pts = parse_points(c);
    Rational eps = Rational::parse(c.eps);
    ClassifyOptions o;
    o.weak_grid = c.weak_grid;
    o.compute_weak = !c.no_weak;
    o.chain_threshold = Rational::parse(c.threshold);
    o.r_min = c.r_min;
    o.mc = mc_info(c);
    if (c.subject == "map" && o.mc)
        throw InvalidArgument("mc mode applies to chain and semigroup subjects");
    std::vector<RecurrenceVerdict> verdicts;
    for (const auto& x : pts) {
        if (c.subject == "map")
            verdicts.push_back(classify_map_point(pick_generator(g, c), x, eps, c.horizon, o));
        else if (c.subject == "chain")
            verdicts.push_back(classify_chain_point(MarkovChain(g, parse_probs(c, g.size())), x, eps, c.horizon, o));
        else
            verdicts.push_back(classify_semigroup_point(g, parse_probs(c, g.size()), x, eps, c.horizon, o));
    }
    if (c.format == "csv") {
        out << "x,recurrent,recurrent_time,weak,weak_time,uniform_value,uniform_meets,weak_uniform_value\n";
        for (const auto& v : verdicts)
            out << v.x << ',' << to_string(v.recurrent) << ',' << (v.recurrent_time ? std::to_string(*v.recurrent_time) : "")
                << ',' << to_string(v.weak) << ',' << (v.weak_time ? std::to_string(*v.weak_time) : "") << ','
                << (v.uniform.computed ? v.uniform.value.str() : "") << ',' << (v.uniform.meets ? 1 : 0) << ','
                << (v.weak_uniform.computed ? v.weak_uniform.value.str() : "") << '\n';
        return 0;
    }
    json arr = json::array();
    for (const auto& v : verdicts)
        arr.push_back(verdict_to_json(v));
    emit(out, c, {{"verdicts", arr}});
    return 0;
}

int cmd_series(const RunConfig& c, std::ostream& out)
{
    auto g = load_generators(c);
    Measure m = parse_measure(c.measure);
    IntervalSet a = parse_set(c);
    json rep;
    if (c.series_kind == "poincare") {
        auto r = poincare_partial_sums(pick_generator(g, c), m, a, c.horizon);
        write_plot(c.plot_file, r.partial_sums, 1);
        rep = series_json(r);
    } else if (c.series_kind == "chain-return") {
        auto r = chain_return_sums(MarkovChain(g, parse_probs(c, g.size())), m, a, c.horizon);
        write_plot(c.plot_file, r.partial_sums, 1);
        rep = series_json(r);
    } else if (c.series_kind == "naive") {
        auto per_gen = naive_generator_sums(g, m, a, c.horizon);
        rep["generator_sums"] = series_json(per_gen);
        if (!c.indices.empty()) {
            Word w;
            for (const auto& s : split(c.indices, ',')) {
                long v = std::stol(s);
                if (v < 1)
                    throw InvalidArgument("indices are 1-based");
                w.push_back(static_cast<std::uint32_t>(v - 1));
            }
            auto seq = naive_sequence_sums(g, m, a, w);
            rep["sequence_sums"] = series_json(seq);
            write_plot(c.plot_file, seq.partial_sums, 1);
        } else {
            write_plot(c.plot_file, per_gen.partial_sums, 0);
        }
    } else {
        throw InvalidArgument("series kind must be poincare, chain-return or naive");
    }
    emit(out, c, rep);
    return 0;
}

int cmd_ulam(const RunConfig& c, std::ostream& out)
{
    auto g = load_generators(c);
    MarkovChain q(g, parse_probs(c, g.size()));
    UlamMatrix mat = ulam_matrix(q, c.bins);
    if (!c.matrix_file.empty()) {
        std::ofstream f(c.matrix_file);
        if (!f)
            throw InvalidArgument("cannot write matrix file " + c.matrix_file);
        f << mat.matrix_market();
    }
    bool stochastic = true;
    for (std::size_t i = 0; i < mat.bins(); ++i)
        if (mat.row_sum(i) != Rational(1))
            stochastic = false;
    json comps = json::array();
    for (const auto& sc : stationary_components(mat, c.tol)) {
        json w = json::array();
        for (double v : sc.weights)
            w.push_back(Rational::from_double(v));
        comps.push_back({{"support", sc.support}, {"weights", w}, {"residual", sc.residual},
                         {"iterations", sc.iterations}});
    }
    emit(out, c, {{"bins", mat.bins()}, {"rows_sum_to_one", stochastic}, {"components", comps}});
    return 0;
}

int cmd_kappa(const RunConfig& c, std::ostream& out)
{
    auto g = load_generators(c);
    auto pts = parse_points(c);
    if (pts.size() != 1)
        throw InvalidArgument("kappa takes a single --x");
    auto rows = kappa_sequence(g, pts.front(), parse_set(c), c.horizon);
    if (c.format == "csv") {
        out << kappa_csv(rows);
        return 0;
    }
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"n", r.n}, {"count", r.count.get_str()}, {"total", r.total.get_str()}, {"kappa", r.kappa}});
    emit(out, c, {{"rows", arr}});
    return 0;
}

int cmd_r_function(const RunConfig& c, std::ostream& out)
{
    auto g = load_generators(c);
    auto pts = parse_points(c);
    json arr = json::array();
    for (const auto& x : pts) {
        auto br = r_function(pick_generator(g, c), x, c.horizon, Rational::parse(c.r_tol));
        arr.push_back({{"x", x}, {"lower", br.lower}, {"upper", br.upper}});
    }
    emit(out, c, {{"brackets", arr}});
    return 0;
}

int cmd_rebase(const RunConfig& c, std::ostream& out)
{
    auto g = load_generators(c);
    std::vector<Word> words;
    for (const auto& ws : split(c.words, ';')) {
        Word w;
        for (const auto& s : split(ws, ',')) {
            long v = std::stol(s);
            if (v < 1)
                throw InvalidArgument("word letters are 1-based");
            w.push_back(static_cast<std::uint32_t>(v - 1));
        }
        words.push_back(std::move(w));
    }
    auto rb = rebase_generators(g, parse_probs(c, g.size()), words);
    json maps = json::array();
    for (const auto& m : rb.generators.maps())
        maps.push_back(map_to_json(m));
    emit(out, c, {{"generators", maps}, {"p", rb.probs}});
    return 0;
}

int cmd_lemma(const RunConfig& c, std::ostream& out)
{
    if (c.exhaustive) {
        auto rep = l1_exhaustive(c.exhaustive);
        emit(out, c, {{"size", rep.size}, {"instances", rep.instances}, {"failures", rep.failures}, {"max_n", rep.max_n}});
        return 0;
    }
    std::optional<MultivaluedMap> g;
    if (!c.multimap.empty()) {
        std::vector<std::uint64_t> images;
        for (const auto& row : split(c.multimap, ';')) {
            std::uint64_t mask = 0;
            for (const auto& s : split(row, ',')) {
                long v = std::stol(s);
                if (v < 1 || v > 64)
                    throw InvalidArgument("multimap elements are 1-based and at most 64");
                mask |= std::uint64_t{1} << (v - 1);
            }
            images.push_back(mask);
        }
        g.emplace(std::move(images));
    } else if (c.cover_cells) {
        auto gens = load_generators(c);
        std::vector<IntervalSet> cover;
        for (std::size_t i = 0; i < c.cover_cells; ++i)
            cover.push_back(IntervalSet{grid_cell(i, c.cover_cells)});
        g.emplace(cover_multimap(MarkovChain(gens, parse_probs(c, gens.size())), cover));
    } else {
        throw InvalidArgument("lemma-l1 needs --exhaustive M, --multimap or --cover-cells");
    }
    auto w = l1_search(*g);
    json images = json::array();
    for (auto mask : g->images()) {
        json row = json::array();
        for (std::size_t j = 0; j < g->size(); ++j)
            if ((mask >> j) & 1u)
                row.push_back(j + 1);
        images.push_back(row);
    }
    emit(out, c, {{"images", images}, {"element", w.element + 1}, {"n", w.steps}, {"verified", l1_verify(*g, w)}});
    return 0;
}

int cmd_distribution(const RunConfig& c, std::ostream& out)
{
    auto g = load_generators(c);
    auto pts = parse_points(c);
    if (pts.size() != 1)
        throw InvalidArgument("distribution takes a single --x");
    MarkovChain q(g, parse_probs(c, g.size()));
    auto mc = mc_info(c);
    PointDistribution d = mc ? qn_distribution_mc(q, pts.front(), c.horizon, mc->samples, mc->seed)
                             : qn_distribution(q, pts.front(), c.horizon);
    json atoms = json::array();
    for (const auto& a : d.atoms)
        atoms.push_back({{"point", a.point}, {"mass", a.mass}, {"words", a.words.get_str()}});
    json rep{{"atoms", atoms}};
    if (d.mc)
        rep["monte_carlo"] = {{"seed", d.mc->seed}, {"samples", d.mc->samples}};
    emit(out, c, rep);
    return 0;
}

int cmd_manifest(const RunConfig& c, std::ostream& out)
{
    if (c.example.empty())
        throw InvalidArgument("manifest needs --example");
    auto m = manifest(c.example);
    json j = manifest_to_json(m);
    if (c.run_manifest) {
        bool all = true;
        for (std::size_t i = 0; i < m.expectations.size(); ++i) {
            auto r = run_expectation(m, m.expectations[i]);
            j["expectations"][i]["actual"] = r.actual;
            j["expectations"][i]["pass"] = r.pass;
            all = all && r.pass;
        }
        j["all_pass"] = all;
    }
    emit(out, c, j);
    return 0;
}

} // namespace

std::optional<int> parse_run_config(int argc, const char* const* argv, RunConfig& c, std::ostream& out,
                                    std::ostream& err)
{
    CLI::App app{"Exact recurrence analysis for semigroups of interval maps"};
    app.require_subcommand(1);
    std::size_t bit_cap = 0;
    app.add_option("--bit-cap", bit_cap, "bit limit for rational numerators and denominators");

    auto* list = app.add_subcommand("list-examples", "catalogue census");
    list->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));

    auto* cls = app.add_subcommand("classify", "recurrence verdicts for points");
    add_source_options(cls, c);
    add_chain_options(cls, c);
    add_mc_options(cls, c);
    cls->add_option("--subject", c.subject)->check(CLI::IsMember({"map", "chain", "semigroup"}));
    cls->add_option("--generator", c.generator, "1-based generator index for map verdicts");
    cls->add_option("--x", c.points, "point p/q (repeatable)");
    cls->add_option("--grid", c.grid, "classify k/n for k = 0..n");
    cls->add_option("--eps", c.eps, "neighbourhood radius");
    cls->add_option("--n", c.horizon, "horizon N");
    cls->add_option("--weak-grid", c.weak_grid, "sample count for the weak-uniform estimate (0 skips it)");
    cls->add_flag("--no-weak", c.no_weak, "skip the reachable-set iteration");
    cls->add_option("--threshold", c.threshold, "chain window-min threshold");
    cls->add_option("--r-min", c.r_min, "returns required in the window for a map");
    cls->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));

    auto* ser = app.add_subcommand("series", "partial sums of return series");
    add_source_options(ser, c);
    add_chain_options(ser, c);
    ser->add_option("kind", c.series_kind, "poincare | chain-return | naive")
        ->required()
        ->check(CLI::IsMember({"poincare", "chain-return", "naive"}));
    ser->add_option("--generator", c.generator);
    ser->add_option("--measure", c.measure, "lebesgue | dirac:p/q | density:w1,w2,...");
    ser->add_option("--set", c.set, "target set, e.g. \"(0,1/2)\" or \"0,0\"");
    ser->add_option("--n", c.horizon);
    ser->add_option("--indices", c.indices, "index sequence for the non-autonomous naive series");
    ser->add_option("--plot", c.plot_file, "write two-column plot data");

    auto* ul = app.add_subcommand("ulam", "Ulam matrix and stationary components");
    add_source_options(ul, c);
    add_chain_options(ul, c);
    ul->add_option("--bins", c.bins);
    ul->add_option("--tol", c.tol, "power iteration residual");
    ul->add_option("--matrix", c.matrix_file, "write the matrix in matrix-market form");

    auto* kp = app.add_subcommand("kappa", "trajectory proportions");
    add_source_options(kp, c);
    kp->add_option("--x", c.points);
    kp->add_option("--set", c.set);
    kp->add_option("--n", c.horizon);
    kp->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));

    auto* rf = app.add_subcommand("r-function", "bracket on the separation radius");
    add_source_options(rf, c);
    rf->add_option("--generator", c.generator);
    rf->add_option("--x", c.points);
    rf->add_option("--grid", c.grid);
    rf->add_option("--n", c.horizon);
    rf->add_option("--r-tol", c.r_tol);

    auto* rb = app.add_subcommand("rebase", "new generators from words");
    add_source_options(rb, c);
    add_chain_options(rb, c);
    rb->add_option("--words", c.words, "words as \"1,1;1,2;2,1\"")->required();

    auto* lm = app.add_subcommand("lemma-l1", "return witnesses for finite multivalued maps");
    add_source_options(lm, c);
    add_chain_options(lm, c);
    lm->add_option("--exhaustive", c.exhaustive, "check every map of size M (M <= 4)");
    lm->add_option("--multimap", c.multimap, "images as \"2;1,3;3\"");
    lm->add_option("--cover-cells", c.cover_cells, "build the multimap of an n-cell cover");

    auto* ds = app.add_subcommand("distribution", "n-step distribution of the chain");
    add_source_options(ds, c);
    add_chain_options(ds, c);
    add_mc_options(ds, c);
    ds->add_option("--x", c.points);
    ds->add_option("--n", c.horizon);

    auto* mf = app.add_subcommand("manifest", "expected properties of a catalogue entry");
    mf->add_option("--example", c.example)->required();
    mf->add_flag("--run", c.run_manifest, "execute every entry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    c.command = app.get_subcommands().front()->get_name();
    c.bit_cap = bit_cap;
    return std::nullopt;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    try {
        std::optional<ScopedBitCap> cap;
        if (c.bit_cap)
            cap.emplace(c.bit_cap);
        if (c.command == "list-examples")
            return cmd_list(c, out);
        if (c.command == "classify")
            return cmd_classify(c, out);
        if (c.command == "series")
            return cmd_series(c, out);
        if (c.command == "ulam")
            return cmd_ulam(c, out);
        if (c.command == "kappa")
            return cmd_kappa(c, out);
        if (c.command == "r-function")
            return cmd_r_function(c, out);
        if (c.command == "rebase")
            return cmd_rebase(c, out);
        if (c.command == "lemma-l1")
            return cmd_lemma(c, out);
        if (c.command == "distribution")
            return cmd_distribution(c, out);
        if (c.command == "manifest")
            return cmd_manifest(c, out);
        err << "error: unknown command '" << c.command << "'\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return 3;
    } catch (const InvalidArgument& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedOperation& e) {
        err << "unsupported: " << e.what() << '\n';
        return 2;
    } catch (const ConstructionError& e) {
        err << "invalid map: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        err << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "invalid number: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace semirec
