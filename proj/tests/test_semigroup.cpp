#include <doctest.h>

#include "oracles.hpp"
#include "semirec/catalogue.hpp"
#include "semirec/classify.hpp"
#include "semirec/error.hpp"
#include "semirec/semigroup.hpp"

using namespace semirec;

namespace {

std::vector<PiecewiseMap> maps_of(const GeneratorSet& g) { return {g.maps().begin(), g.maps().end()}; }

mpz_class brute_count(const GeneratorSet& g, const Rational& x, const IntervalSet& a, std::size_t n)
{
    std::vector<Rational> p(g.size(), Rational(1, static_cast<std::int64_t>(g.size())));
    mpz_class c = 0;
    for (const auto& [pt, cell] : oracle::enumerate_words(maps_of(g), p, x, n))
        if (a.contains(pt))
            c += cell.words;
    return c;
}

} // namespace

TEST_SUITE("semigroup")
{
    TEST_CASE("generator set")
    {
        CHECK_THROWS_AS(GeneratorSet({}), InvalidArgument);
        GeneratorSet g = build_example("example3");
        CHECK(g.size() == 2);
        CHECK(g.labels() == std::vector<std::string>{"T1", "T2"});
        CHECK(g.is_affine());
        CHECK_FALSE(build_example("example-qu").is_affine());
        CHECK(build_example("example1exp").circle());
    }

    TEST_CASE("count_returns examples")
    {
        oracle::Random rnd(41);
        for (const auto& e : catalogue()) {
            GeneratorSet g = build_example(e.name, ExampleParams{12, Rational(1)});
            for (std::size_t n = 0; n <= 5; ++n) {
                mpz_class dn = 1;
                for (std::size_t k = 0; k < n; ++k)
                    dn *= static_cast<unsigned long>(g.size());
                CHECK(count_returns(g, rnd.point(), IntervalSet::unit(), n) == dn);
            }
        }
        GeneratorSet qu = build_example("example-qu");
        for (std::size_t n = 1; n <= 12; ++n)
            CHECK(count_returns(qu, 0, IntervalSet::point(0), n) == 1);
        CHECK(count_returns(build_example("example2"), 0, IntervalSet{Interval::closed(0, Rational(1, 2))}, 1) == 1);
    }

    TEST_CASE("count_returns matches enumeration")
    {
        oracle::Random rnd(42);
        for (const auto& e : catalogue()) {
            GeneratorSet g = build_example(e.name, ExampleParams{12, Rational(1)});
            for (int i = 0; i < 4; ++i) {
                Rational x = rnd.point();
                IntervalSet a = rnd.set(2);
                std::size_t n = rnd.below(7);
                CHECK(count_returns(g, x, a, n) == brute_count(g, x, a, n));
            }
        }
    }

    TEST_CASE("kappa examples")
    {
        GeneratorSet qu = build_example("example-qu");
        auto rows = kappa_sequence(qu, 0, ball(0, Rational(1, 2), BallStyle::open), 20);
        REQUIRE(rows.size() == 20);
        for (const auto& r : rows) {
            CHECK(r.kappa == Rational::pow2(-static_cast<int>(r.n)));
            CHECK(r.count == 1);
        }
        for (std::size_t n = 1; n <= 10; ++n)
            CHECK(kappa(qu, 1, IntervalSet::point(1), n) == 1);
        CHECK(kappa(build_example("example3"), Rational(1, 5), IntervalSet::unit(), 6) == 1);
        std::string csv = kappa_csv(std::vector<KappaRow>(rows.begin(), rows.begin() + 2));
        CHECK(csv == "n,count,total,kappa\n1,1,2,1/2\n2,1,4,1/4\n");
    }

    TEST_CASE("kappa equals the uniform chain's return mass")
    {
        oracle::Random rnd(43);
        for (const auto& e : catalogue()) {
            GeneratorSet g = build_example(e.name, ExampleParams{12, Rational(1)});
            MarkovChain q = MarkovChain::uniform(g);
            for (int i = 0; i < 50; ++i) {
                Rational x = rnd.point();
                IntervalSet o = rnd.set(2);
                std::size_t n = 1 + rnd.below(8);
                CHECK(kappa(g, x, o, n) == qn_distribution(q, x, n).mass_in(o));
            }
        }
    }

    TEST_CASE("positivity of counts ignores generator order")
    {
        oracle::Random rnd(44);
        for (const auto* name : {"example2", "example3", "example4", "example-qu"}) {
            GeneratorSet g = build_example(name);
            GeneratorSet swapped({g[1], g[0]});
            for (int i = 0; i < 30; ++i) {
                Rational x = rnd.point();
                IntervalSet a = rnd.set(2);
                std::size_t n = rnd.below(7);
                CHECK(count_returns(g, x, a, n) == count_returns(swapped, x, a, n));
            }
        }
    }

    TEST_CASE("rebase examples")
    {
        GeneratorSet e2 = build_example("example2");
        std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
        Rebased same = rebase_generators(e2, half, {{0}, {1}});
        CHECK(same.probs == half);
        for (int k = 0; k <= 32; ++k)
            for (std::size_t i = 0; i < 2; ++i)
                CHECK(same.generators[i].eval(Rational(k, 32)) == e2[i].eval(Rational(k, 32)));

        Rebased four = rebase_generators(e2, half, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
        CHECK(four.generators.size() == 4);
        CHECK(four.probs == std::vector<Rational>(4, Rational(1, 4)));
        MarkovChain orig(e2, half), reb(four.generators, four.probs);
        oracle::Random rnd(45);
        for (int i = 0; i < 10; ++i) {
            Rational x = rnd.point();
            for (std::size_t n = 0; n <= 3; ++n) {
                auto a = qn_distribution(reb, x, n);
                auto b = qn_distribution(orig, x, 2 * n);
                REQUIRE(a.atoms.size() == b.atoms.size());
                for (std::size_t k = 0; k < a.atoms.size(); ++k) {
                    CHECK(a.atoms[k].point == b.atoms[k].point);
                    CHECK(a.atoms[k].mass == b.atoms[k].mass);
                }
            }
        }

        GeneratorSet qu = build_example("example-qu");
        Rebased c = rebase_generators(qu, half, {{1}});
        CHECK(c.generators.size() == 1);
        CHECK(c.probs == std::vector<Rational>{1});
        for (int k = 0; k <= 8; ++k)
            CHECK(c.generators[0].eval(Rational(k, 8)) == 1);

        Rebased skew = rebase_generators(e2, {Rational(1, 3), Rational(2, 3)}, {{0}, {1, 1}});
        CHECK(skew.probs == std::vector<Rational>{Rational(3, 7), Rational(4, 7)});
        CHECK_THROWS_AS(rebase_generators(e2, half, {{}}), InvalidArgument);
        CHECK_THROWS_AS(rebase_generators(e2, half, {{2}}), InvalidArgument);
    }

    TEST_CASE("rebased verdicts keep positivity flags")
    {
        GeneratorSet e2 = build_example("example2");
        std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
        Rebased four = rebase_generators(e2, half, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
        ClassifyOptions opts;
        opts.compute_weak = false;
        opts.weak_grid = 0;
        oracle::Random rnd(46);
        for (int i = 0; i < 12; ++i) {
            Rational x = rnd.point();
            Rational eps(1, 16);
            auto v4 = classify_semigroup_point(four.generators, four.probs, x, eps, 5, opts);
            // a rebased step is two original steps: compare the even-time return pattern
            MarkovChain q(e2, half);
            auto prof = return_profile(q, x, ball(x, eps, BallStyle::open), 10);
            bool even_return = false;
            for (std::size_t n = 2; n <= 10; n += 2)
                even_return = even_return || prof.mass[n - 1].sign() > 0;
            CHECK(v4.is_recurrent() == even_return);
        }
    }
}
