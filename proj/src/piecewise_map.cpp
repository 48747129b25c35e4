#include "semirec/piecewise_map.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "semirec/error.hpp"

namespace semirec {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    while (!coeffs_.empty() && coeffs_.back().is_zero())
        coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const
{
    if (coeffs_.empty())
        return Rational();
    // Affine fast path: almost every branch in practice.
    if (coeffs_.size() == 1)
        return coeffs_[0];
    if (coeffs_.size() == 2)
        return coeffs_[1] * x + coeffs_[0];
    Rational acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;)
        acc = acc * x + coeffs_[i];
    return acc;
}

Polynomial Polynomial::after(const Polynomial& inner) const
{
    auto mul = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        if (a.empty() || b.empty())
            return std::vector<Rational>{};
        std::vector<Rational> r(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] += a[i] * b[j];
        return r;
    };
    std::vector<Rational> acc;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc = mul(acc, inner.coeffs_);
        if (acc.empty())
            acc.push_back(coeffs_[i]);
        else
            acc[0] += coeffs_[i];
    }
    return Polynomial(std::move(acc));
}

namespace {

std::optional<Rational> exact_sqrt(const Rational& r)
{
    if (r.sign() < 0)
        return std::nullopt;
    mpz_class n = r.numerator(), d = r.denominator();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return Rational(mpq_class(sn, sd));
}

Interval closure(const Interval& iv) { return Interval::closed(iv.lo, iv.hi); }

// x in closure(dom) with p(x) = y, for p monotone and nonconstant on dom.
Rational solve_monotone(const Polynomial& p, const Rational& y, const Interval& dom)
{
    if (y == p(dom.lo))
        return dom.lo;
    if (y == p(dom.hi))
        return dom.hi;
    if (p.degree() == 1)
        return (y - p.coeff(0)) / p.coeff(1);
    if (p.degree() > 2)
        throw UnsupportedOperation("breakpoint pull-back through a branch of degree " + std::to_string(p.degree()));
    const Rational& a = p.coeff(2);
    const Rational& b = p.coeff(1);
    Rational disc = b * b - Rational(4) * a * (p.coeff(0) - y);
    auto s = exact_sqrt(disc);
    if (!s)
        throw UnsupportedOperation("breakpoint pull-back through a quadratic branch is irrational (discriminant " +
                                   disc.str() + ")");
    Interval c = closure(dom);
    Rational r1 = (-b + *s) / (Rational(2) * a);
    if (c.contains(r1))
        return r1;
    Rational r2 = (-b - *s) / (Rational(2) * a);
    if (c.contains(r2))
        return r2;
    throw Error("internal: no root of monotone branch inside its domain");
}

// Preimage of `target` under a monotone nonconstant piece, within its domain.
std::optional<Interval> piece_preimage(const Piece& piece, const Interval& target)
{
    Interval range = piece_image(piece, piece.domain);
    auto j = intersect(range, target);
    if (!j)
        return std::nullopt;
    Rational x_lo = solve_monotone(piece.poly, j->lo, piece.domain);
    Rational x_hi = solve_monotone(piece.poly, j->hi, piece.domain);
    Interval pre;
    if (x_lo <= x_hi)
        pre = Interval{x_lo, x_hi, j->lo_closed, j->hi_closed};
    else
        pre = Interval{x_hi, x_lo, j->hi_closed, j->lo_closed};
    return intersect(pre, piece.domain);
}

bool lower_less(const Interval& a, const Interval& b)
{
    auto c = a.lo <=> b.lo;
    if (c != 0)
        return c < 0;
    return a.lo_closed && !b.lo_closed;
}

} // namespace

Interval piece_image(const Piece& piece, const Interval& part)
{
    const Polynomial& p = piece.poly;
    if (p.degree() == 0 || part.is_point())
        return Interval::point(p(part.lo));
    Rational a = p(part.lo);
    Rational b = p(part.hi);
    if (a < b)
        return Interval{a, b, part.lo_closed, part.hi_closed};
    return Interval{b, a, part.hi_closed, part.lo_closed};
}

PiecewiseMap::PiecewiseMap(std::string label, std::vector<Piece> pieces, std::map<Rational, Rational> overrides,
                           bool circle)
    : label_(std::move(label)), overrides_(std::move(overrides)), circle_(circle)
{
    for (auto& pc : pieces) {
        if (pc.domain.empty())
            throw ConstructionError(label_ + ": empty piece domain " + [&] {
                std::ostringstream os;
                os << pc.domain;
                return os.str();
            }());
        if (pc.domain.lo < Rational(0) || pc.domain.hi > Rational(1))
            throw ConstructionError(label_ + ": piece domain leaves [0,1]");
        if (pc.poly.degree() > 2)
            throw ConstructionError(label_ + ": branch degree above 2");
        if (pc.poly.degree() == 2 && !pc.domain.is_point()) {
            Rational v = -pc.poly.coeff(1) / (Rational(2) * pc.poly.coeff(2));
            if (pc.domain.lo < v && v < pc.domain.hi) {
                pieces_.push_back(Piece{Interval{pc.domain.lo, v, pc.domain.lo_closed, true}, pc.poly});
                pieces_.push_back(Piece{Interval{v, pc.domain.hi, false, pc.domain.hi_closed}, pc.poly});
                continue;
            }
        }
        pieces_.push_back(std::move(pc));
    }
    validate();
}

PiecewiseMap::PiecewiseMap(MonotonePieces, std::string label, std::vector<Piece> pieces,
                           std::map<Rational, Rational> overrides, bool circle)
    : label_(std::move(label)), pieces_(std::move(pieces)), overrides_(std::move(overrides)), circle_(circle)
{
    validate();
}

void PiecewiseMap::validate()
{
    const Rational zero(0), one(1);
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Piece& a, const Piece& b) { return lower_less(a.domain, b.domain); });

    std::vector<Interval> cover;
    cover.reserve(pieces_.size() + overrides_.size());
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (i > 0 && intersect(pieces_[i - 1].domain, pieces_[i].domain))
            throw ConstructionError(label_ + ": overlapping piece domains");
        if (i > 0 && pieces_[i].domain.lo < pieces_[i - 1].domain.hi)
            throw ConstructionError(label_ + ": overlapping piece domains");
        Interval img = piece_image(pieces_[i], pieces_[i].domain);
        if (img.lo < zero || img.hi > one)
            throw ConstructionError(label_ + ": branch maps outside [0,1]");
        cover.push_back(pieces_[i].domain);
    }
    for (const auto& [pt, val] : overrides_) {
        if (pt < zero || pt > one || val < zero || val > one)
            throw ConstructionError(label_ + ": override outside [0,1] at " + pt.str());
        cover.push_back(Interval::point(pt));
    }
    if (!(IntervalSet(std::move(cover)) == IntervalSet::unit()))
        throw ConstructionError(label_ + ": pieces and overrides do not cover [0,1]");
}

PiecewiseMap PiecewiseMap::identity()
{
    return PiecewiseMap("identity", {Piece{Interval::closed(0, 1), Polynomial::identity()}});
}

bool PiecewiseMap::is_affine() const noexcept { return max_degree() <= 1; }

int PiecewiseMap::max_degree() const noexcept
{
    int d = 0;
    for (const auto& p : pieces_)
        d = std::max(d, p.poly.degree());
    return d;
}

std::size_t PiecewiseMap::piece_index(const Rational& x) const
{
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Rational& v, const Piece& p) { return v < p.domain.lo; });
    for (int back = 0; back < 2 && it != pieces_.begin(); ++back) {
        --it;
        if (it->domain.contains(x))
            return static_cast<std::size_t>(it - pieces_.begin());
    }
    return npos;
}

Rational PiecewiseMap::eval(const Rational& x) const
{
    if (!overrides_.empty()) {
        auto o = overrides_.find(x);
        if (o != overrides_.end())
            return o->second;
    }
    std::size_t i = piece_index(x);
    if (i == npos)
        throw ConstructionError(label_ + ": point " + x.str() + " is not covered");
    return pieces_[i].poly(x);
}

PiecewiseMap PiecewiseMap::with_label(std::string label) const
{
    PiecewiseMap m = *this;
    m.label_ = std::move(label);
    return m;
}

IntervalSet image(const PiecewiseMap& map, const IntervalSet& s)
{
    if (s.empty())
        return {};
    std::vector<Interval> out;
    std::vector<Interval> hit_points;
    for (const auto& [pt, val] : map.overrides()) {
        if (s.contains(pt)) {
            hit_points.push_back(Interval::point(pt));
            out.push_back(Interval::point(val));
        }
    }
    IntervalSet rest = hit_points.empty() ? s : difference(s, IntervalSet(std::move(hit_points)));
    const auto& pieces = map.pieces();
    const auto& parts = rest.intervals();
    std::size_t i = 0, j = 0;
    while (i < pieces.size() && j < parts.size()) {
        if (auto c = intersect(pieces[i].domain, parts[j]))
            out.push_back(piece_image(pieces[i], *c));
        // Advance whichever ends first.
        auto ch = pieces[i].domain.hi <=> parts[j].hi;
        bool piece_first = ch < 0 || (ch == 0 && !pieces[i].domain.hi_closed);
        if (piece_first)
            ++i;
        else
            ++j;
    }
    return IntervalSet(std::move(out));
}

IntervalSet preimage(const PiecewiseMap& map, const IntervalSet& s)
{
    if (!map.is_affine())
        throw UnsupportedOperation(map.label() +
                                   ": preimage needs affine branches; nonlinear maps are analysed by forward "
                                   "evaluation only");
    std::vector<Interval> out;
    const auto& parts = s.intervals();
    if (!parts.empty()) {
        for (const auto& pc : map.pieces()) {
            if (pc.poly.degree() == 0) {
                if (s.contains(pc.poly.coeff(0)))
                    out.push_back(pc.domain);
                continue;
            }
            Interval range = piece_image(pc, pc.domain);
            auto first = std::partition_point(parts.begin(), parts.end(),
                                              [&](const Interval& iv) { return iv.hi < range.lo; });
            for (auto it = first; it != parts.end() && it->lo <= range.hi; ++it)
                if (auto pre = piece_preimage(pc, *it))
                    out.push_back(std::move(*pre));
        }
    }
    IntervalSet result(std::move(out));
    if (map.overrides().empty())
        return result;
    std::vector<Interval> removed, added;
    for (const auto& [pt, val] : map.overrides()) {
        if (s.contains(val))
            added.push_back(Interval::point(pt));
        else
            removed.push_back(Interval::point(pt));
    }
    if (!removed.empty())
        result = difference(result, IntervalSet(std::move(removed)));
    if (!added.empty())
        result = unite(result, IntervalSet(std::move(added)));
    return result;
}

PiecewiseMap compose(const PiecewiseMap& f, const PiecewiseMap& g, const MapOptions& opts)
{
    std::vector<Piece> pieces;
    std::map<Rational, Rational> overrides;
    for (const auto& [pt, val] : f.overrides())
        overrides[pt] = g.eval(val);

    for (const auto& pf : f.pieces()) {
        if (pf.poly.degree() == 0) {
            pieces.push_back(Piece{pf.domain, Polynomial::constant(g.eval(pf.poly.coeff(0)))});
            continue;
        }
        for (const auto& pg : g.pieces()) {
            auto sub = piece_preimage(pf, pg.domain);
            if (!sub)
                continue;
            Polynomial composed = pg.poly.after(pf.poly);
            pieces.push_back(Piece{*sub, std::move(composed)});
            if (pieces.size() > opts.piece_budget)
                throw ResourceError("composition exceeds piece budget of " + std::to_string(opts.piece_budget));
        }
        // Points sent onto an override of g.
        Interval range = piece_image(pf, pf.domain);
        for (const auto& [q, val] : g.overrides()) {
            if (!range.contains(q))
                continue;
            auto pre = piece_preimage(pf, Interval::point(q));
            if (pre && !overrides.contains(pre->lo))
                overrides[pre->lo] = val;
        }
    }
    return PiecewiseMap(PiecewiseMap::MonotonePieces{}, g.label() + " o " + f.label(), std::move(pieces),
                        std::move(overrides), f.circle() || g.circle());
}

void check_word(const Word& w, std::size_t d)
{
    for (auto letter : w)
        if (letter >= d)
            throw InvalidArgument("word letter " + std::to_string(letter + 1) + " out of range 1.." +
                                  std::to_string(d));
}

PiecewiseMap compose(std::span<const PiecewiseMap> generators, const Word& w, const MapOptions& opts)
{
    check_word(w, generators.size());
    if (w.empty())
        return PiecewiseMap::identity();
    PiecewiseMap acc = generators[w.front()];
    for (std::size_t k = 1; k < w.size(); ++k)
        acc = compose(acc, generators[w[k]], opts);
    return acc;
}

Rational eval_word(std::span<const PiecewiseMap> generators, const Word& w, const Rational& x)
{
    check_word(w, generators.size());
    Rational y = x;
    for (auto letter : w)
        y = generators[letter].eval(y);
    return y;
}

} // namespace semirec
