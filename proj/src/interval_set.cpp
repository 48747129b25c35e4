#include "semirec/interval_set.hpp"

#include <algorithm>
#include <ostream>

#include "semirec/error.hpp"

namespace semirec {

bool Interval::empty() const
{
    if (lo < hi)
        return false;
    return !(lo == hi && lo_closed && hi_closed);
}

bool Interval::contains(const Rational& x) const
{
    auto c_lo = x <=> lo;
    if (c_lo < 0 || (c_lo == 0 && !lo_closed))
        return false;
    auto c_hi = x <=> hi;
    return c_hi < 0 || (c_hi == 0 && hi_closed);
}

std::optional<Interval> intersect(const Interval& a, const Interval& b)
{
    Interval r;
    auto cl = a.lo <=> b.lo;
    if (cl > 0) {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed;
    } else if (cl < 0) {
        r.lo = b.lo;
        r.lo_closed = b.lo_closed;
    } else {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed && b.lo_closed;
    }
    auto ch = a.hi <=> b.hi;
    if (ch < 0) {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed;
    } else if (ch > 0) {
        r.hi = b.hi;
        r.hi_closed = b.hi_closed;
    } else {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed && b.hi_closed;
    }
    if (r.empty())
        return std::nullopt;
    return r;
}

namespace {

// Lower-bound order: smaller value first; a closed bound precedes an open one.
bool lower_before(const Interval& a, const Interval& b)
{
    auto c = a.lo <=> b.lo;
    if (c != 0)
        return c < 0;
    return a.lo_closed && !b.lo_closed;
}

// Upper-bound order: does `a` end no later than `b`?
bool upper_not_after(const Interval& a, const Interval& b)
{
    auto c = a.hi <=> b.hi;
    if (c != 0)
        return c < 0;
    return !a.hi_closed || b.hi_closed;
}

// Merges an already lower-sorted sequence of nonempty intervals.
std::vector<Interval> merge_sorted(std::vector<Interval>&& sorted)
{
    std::vector<Interval> out;
    out.reserve(sorted.size());
    for (auto& iv : sorted) {
        if (!out.empty()) {
            Interval& cur = out.back();
            auto c = iv.lo <=> cur.hi;
            bool joins = c < 0 || (c == 0 && (iv.lo_closed || cur.hi_closed));
            if (joins) {
                auto ch = iv.hi <=> cur.hi;
                if (ch > 0) {
                    cur.hi = std::move(iv.hi);
                    cur.hi_closed = iv.hi_closed;
                } else if (ch == 0) {
                    cur.hi_closed = cur.hi_closed || iv.hi_closed;
                }
                continue;
            }
        }
        out.push_back(std::move(iv));
    }
    return out;
}

const Interval& unit_interval()
{
    static const Interval u = Interval::closed(0, 1);
    return u;
}

} // namespace

IntervalSet::IntervalSet(std::vector<Interval> pieces)
{
    std::vector<Interval> clipped;
    clipped.reserve(pieces.size());
    for (auto& iv : pieces) {
        if (iv.empty())
            continue;
        if (iv.lo.sign() >= 0 && iv.hi <= Rational(1)) {
            clipped.push_back(std::move(iv));
            continue;
        }
        if (auto c = semirec::intersect(iv, unit_interval()))
            clipped.push_back(std::move(*c));
    }
    if (!std::is_sorted(clipped.begin(), clipped.end(), lower_before))
        std::sort(clipped.begin(), clipped.end(), lower_before);
    pieces_ = merge_sorted(std::move(clipped));
}

bool IntervalSet::contains(const Rational& x) const
{
    // First interval whose lower end is > x; the candidate is its predecessor.
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Rational& v, const Interval& iv) { return v < iv.lo; });
    if (it == pieces_.begin())
        return false;
    return std::prev(it)->contains(x);
}

bool IntervalSet::intersects(const IntervalSet& other) const
{
    std::size_t i = 0, j = 0;
    while (i < pieces_.size() && j < other.pieces_.size()) {
        if (semirec::intersect(pieces_[i], other.pieces_[j]))
            return true;
        if (upper_not_after(pieces_[i], other.pieces_[j]))
            ++i;
        else
            ++j;
    }
    return false;
}

bool IntervalSet::subset_of(const IntervalSet& other) const { return difference(*this, other).empty(); }

IntervalSet IntervalSet::complement() const
{
    std::vector<Interval> gaps;
    Rational cursor(0);
    bool cursor_closed = true;
    for (const auto& iv : pieces_) {
        Interval g{cursor, iv.lo, cursor_closed, !iv.lo_closed};
        if (!g.empty())
            gaps.push_back(std::move(g));
        cursor = iv.hi;
        cursor_closed = !iv.hi_closed;
    }
    Interval tail{cursor, Rational(1), cursor_closed, true};
    if (!tail.empty())
        gaps.push_back(std::move(tail));
    return IntervalSet(Normalized{}, std::move(gaps));
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b)
{
    if (a.empty())
        return b;
    if (b.empty())
        return a;
    std::vector<Interval> all;
    all.reserve(a.size() + b.size());
    std::merge(a.pieces_.begin(), a.pieces_.end(), b.pieces_.begin(), b.pieces_.end(), std::back_inserter(all),
               lower_before);
    return IntervalSet(IntervalSet::Normalized{}, merge_sorted(std::move(all)));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b)
{
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    const auto& pa = a.pieces_;
    const auto& pb = b.pieces_;
    while (i < pa.size() && j < pb.size()) {
        if (auto c = semirec::intersect(pa[i], pb[j]))
            out.push_back(std::move(*c));
        if (upper_not_after(pa[i], pb[j]))
            ++i;
        else
            ++j;
    }
    return IntervalSet(IntervalSet::Normalized{}, merge_sorted(std::move(out)));
}

IntervalSet difference(const IntervalSet& a, const IntervalSet& b)
{
    if (b.empty() || a.empty())
        return a;
    return intersect(a, b.complement());
}

IntervalSet unite_all(std::span<const IntervalSet> sets)
{
    std::vector<Interval> all;
    std::size_t total = 0;
    for (const auto& s : sets)
        total += s.size();
    all.reserve(total);
    for (const auto& s : sets)
        all.insert(all.end(), s.intervals().begin(), s.intervals().end());
    return IntervalSet(std::move(all));
}

IntervalSet set_algebra(const IntervalSet& a, const IntervalSet& b, SetOp op)
{
    switch (op) {
    case SetOp::unite:
        return unite(a, b);
    case SetOp::intersect:
        return intersect(a, b);
    case SetOp::difference:
        return difference(a, b);
    }
    return {};
}

Rational length(const IntervalSet& s)
{
    Rational total;
    for (const auto& iv : s.intervals())
        total += iv.length();
    return total;
}

IntervalSet ball(const Rational& x, const Rational& eps, BallStyle style, bool circle)
{
    if (eps.sign() <= 0)
        throw InvalidArgument("ball radius must be positive, got " + eps.str());
    if (x.sign() < 0 || x > Rational(1))
        throw InvalidArgument("ball centre must lie in [0,1], got " + x.str());
    bool closed = style == BallStyle::closed;
    std::vector<Interval> parts{Interval{x - eps, x + eps, closed, closed}};
    if (circle) {
        // 0 and 1 are the same point: shift the overflow to the other end.
        parts.push_back(Interval{x - eps + 1, x + eps + 1, closed, closed});
        parts.push_back(Interval{x - eps - 1, x + eps - 1, closed, closed});
        bool touches_end = parts[0].contains(0) || parts[0].contains(1) || parts[1].contains(1) ||
                           parts[2].contains(0);
        if (touches_end) {
            parts.push_back(Interval::point(0));
            parts.push_back(Interval::point(1));
        }
    }
    return IntervalSet(std::move(parts));
}

std::ostream& operator<<(std::ostream& os, const Interval& iv)
{
    if (iv.is_point())
        return os << '{' << iv.lo << '}';
    return os << (iv.lo_closed ? '[' : '(') << iv.lo << ',' << iv.hi << (iv.hi_closed ? ']' : ')');
}

std::ostream& operator<<(std::ostream& os, const IntervalSet& s)
{
    if (s.empty())
        return os << "{}";
    bool first = true;
    for (const auto& iv : s.intervals()) {
        if (!first)
            os << " u ";
        os << iv;
        first = false;
    }
    return os;
}

} // namespace semirec
