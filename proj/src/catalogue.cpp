#include "semirec/catalogue.hpp"

#include "semirec/error.hpp"

namespace semirec {

namespace {

using R = Rational;

Piece affine(Interval dom, R slope, R offset) { return Piece{std::move(dom), Polynomial::affine(slope, offset)}; }

Interval co(R a, R b) { return Interval::closed_open(a, b); }
Interval oc(R a, R b) { return Interval::open_closed(a, b); }
Interval op(R a, R b) { return Interval::open(a, b); }
Interval cl(R a, R b) { return Interval::closed(a, b); }

void check_depth(const ExampleParams& p)
{
    if (p.depth < 8 || p.depth > 2000)
        throw InvalidArgument("truncation depth must lie in [8, 2000], got " + std::to_string(p.depth));
}

PiecewiseMap eq2_map()
{
    return PiecewiseMap("T", {affine(oc(0, 1), R(1, 2), 0)}, {{R(0), R(1)}});
}

PiecewiseMap example1()
{
    return PiecewiseMap("T",
                        {affine(oc(0, R(1, 2)), R(1, 2), 0), affine(op(R(1, 2), 1), R(1, 2), R(1, 2))},
                        {{R(0), R(4, 5)}, {R(1), R(1, 5)}});
}

PiecewiseMap example1exp(const ExampleParams& p)
{
    check_depth(p);
    const R& a = p.slope;
    if (!(a > R(3, 4) && a < R(3, 2)))
        throw InvalidArgument("slope must lie in (3/4, 3/2), got " + a.str());
    std::vector<Piece> pieces;
    R shift = R(2) * a - R(3, 2);
    for (int k = 1; k <= p.depth; ++k) {
        R left = R::pow2(-k);
        pieces.push_back(affine(oc(left, left * R(2)), a, -shift * left));
    }
    pieces.push_back(affine(oc(0, R::pow2(-p.depth)), 1, 0));
    R at_one = a - shift / R(2);
    return PiecewiseMap("T_a", std::move(pieces), {{R(0), at_one}}, true);
}

PiecewiseMap example_wu(const ExampleParams& p)
{
    check_depth(p);
    std::vector<Piece> pieces;
    pieces.push_back(affine(oc(R(1, 2), 1), 1, 0));
    for (int k = 1; k < p.depth; ++k)
        pieces.push_back(affine(oc(R::pow2(-k - 1), R::pow2(-k)), 1, R::pow2(-k - 2)));
    pieces.push_back(affine(oc(0, R::pow2(-p.depth)), 1, 0));
    return PiecewiseMap("T", std::move(pieces), {{R(0), R(2, 3)}});
}

GeneratorSet example2()
{
    PiecewiseMap t1("T1", {affine(co(0, R(1, 2)), R(1, 2), R(1, 4)), affine(co(R(1, 2), 1), R(1, 2), R(1, 2))},
                    {{R(1), R(0)}});
    PiecewiseMap t2("T2", {affine(oc(0, R(1, 2)), R(1, 2), 0), affine(oc(R(1, 2), 1), R(1, 2), R(1, 4))},
                    {{R(0), R(1)}});
    return GeneratorSet({t1, t2});
}

GeneratorSet example3()
{
    const R third(1, 3), half(1, 2), two_thirds(2, 3);
    PiecewiseMap t1("T1",
                    {affine(co(0, third), half, 0), affine(op(third, half), half, third),
                     affine(op(half, two_thirds), half, R(1, 6)), affine(op(two_thirds, 1), half, half)},
                    {{R(0), R(1, 4)}, {third, R(3, 5)}, {half, half}, {two_thirds, R(2, 5)}, {R(1), R(3, 4)}});
    PiecewiseMap t2("T2",
                    {affine(co(0, third), 1, third), affine(co(third, half), -half, R(3, 4)),
                     affine(oc(half, two_thirds), -half, R(3, 4)), affine(oc(two_thirds, 1), 1, -third)},
                    {{half, third}});
    return GeneratorSet({t1, t2});
}

GeneratorSet example4()
{
    const R third(1, 3), half(1, 2), two_thirds(2, 3);
    PiecewiseMap t1("T1",
                    {affine(co(0, third), 1, 0), affine(op(third, half), half, third),
                     affine(op(half, two_thirds), half, R(2, 9)), affine(oc(two_thirds, 1), 1, -third)},
                    {{third, third}, {half, R(7, 12)}, {two_thirds, R(5, 9)}});
    PiecewiseMap t2("T2",
                    {affine(co(0, third), 1, third), affine(cl(third, two_thirds), -half, R(3, 4)),
                     affine(oc(two_thirds, 1), 1, 0)});
    return GeneratorSet({t1, t2});
}

GeneratorSet example_qu()
{
    PiecewiseMap t1("T1", {Piece{cl(0, 1), Polynomial({R(0), R(0), R(1)})}});
    PiecewiseMap t2("T2", {Piece{cl(0, 1), Polynomial::constant(1)}});
    return GeneratorSet({t1, t2});
}

PiecewiseMap doubling()
{
    return PiecewiseMap("doubling", {affine(co(0, R(1, 2)), 2, 0), affine(cl(R(1, 2), 1), 2, -1)});
}

PiecewiseMap rotation()
{
    return PiecewiseMap("rotation", {affine(co(0, R(2, 3)), 1, R(1, 3)), affine(cl(R(2, 3), 1), 1, R(-2, 3))});
}

} // namespace

const std::vector<CatalogueEntry>& catalogue()
{
    static const std::vector<CatalogueEntry> entries{
        {"eq2-map", "contraction x/2 with 0 sent to 1", 1, false, false},
        {"example1", "two-sided contraction with swapped end points", 1, false, false},
        {"example1exp", "circle map T_a on dyadic blocks (truncated)", 1, true, false},
        {"example-wu", "dyadic right shifts with fixed upper half (truncated)", 1, true, false},
        {"example2", "zigzag pair without recurrent points per generator", 2, false, false},
        {"example3", "pair with uniformly recurrent generators", 2, false, false},
        {"example4", "pair with generator recurrence sets of length 1/3", 2, false, false},
        {"example-qu", "squaring and constant one", 2, false, false},
        {"doubling", "x -> 2x mod 1", 1, false, true},
        {"identity", "x -> x", 1, false, true},
        {"rotation", "x -> x + 1/3 mod 1", 1, false, true},
    };
    return entries;
}

const CatalogueEntry& catalogue_entry(std::string_view name)
{
    for (const auto& e : catalogue())
        if (e.name == name)
            return e;
    throw InvalidArgument("unknown example '" + std::string(name) + "'");
}

GeneratorSet build_example(std::string_view name, const ExampleParams& params)
{
    catalogue_entry(name);
    if (name == "eq2-map")
        return GeneratorSet({eq2_map()});
    if (name == "example1")
        return GeneratorSet({example1()});
    if (name == "example1exp")
        return GeneratorSet({example1exp(params)});
    if (name == "example-wu")
        return GeneratorSet({example_wu(params)});
    if (name == "example2")
        return example2();
    if (name == "example3")
        return example3();
    if (name == "example4")
        return example4();
    if (name == "example-qu")
        return example_qu();
    if (name == "doubling")
        return GeneratorSet({doubling()});
    if (name == "identity")
        return GeneratorSet({PiecewiseMap::identity()});
    return GeneratorSet({rotation()});
}

} // namespace semirec
