#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "semirec/rational.hpp"

namespace semirec {

/// Interval of [0,1] with independently open or closed ends.
///
/// A single point is the closed degenerate interval [a,a].
struct Interval {
    Rational lo;
    Rational hi;
    bool lo_closed = true;
    bool hi_closed = true;

    static Interval closed(Rational a, Rational b) { return {std::move(a), std::move(b), true, true}; }
    static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b), false, false}; }
    static Interval closed_open(Rational a, Rational b) { return {std::move(a), std::move(b), true, false}; }
    static Interval open_closed(Rational a, Rational b) { return {std::move(a), std::move(b), false, true}; }
    static Interval point(const Rational& a) { return {a, a, true, true}; }

    /// True when the interval contains no point.
    bool empty() const;
    bool is_point() const { return lo == hi && lo_closed && hi_closed; }
    bool contains(const Rational& x) const;
    Rational length() const { return hi - lo; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Intersection of two intervals; nullopt when empty.
std::optional<Interval> intersect(const Interval& a, const Interval& b);

/// Finite union of intervals in [0,1], kept sorted, disjoint and maximally merged.
class IntervalSet {
public:
    IntervalSet() = default;
    /// Normalizes arbitrary input: clips to [0,1], drops empty pieces, merges overlaps and adjacency.
    explicit IntervalSet(std::vector<Interval> pieces);
    IntervalSet(std::initializer_list<Interval> pieces) : IntervalSet(std::vector<Interval>(pieces)) {}

    static IntervalSet unit() { return IntervalSet{Interval::closed(0, 1)}; }
    static IntervalSet point(const Rational& x) { return IntervalSet{Interval::point(x)}; }

    const std::vector<Interval>& intervals() const noexcept { return pieces_; }
    std::size_t size() const noexcept { return pieces_.size(); }
    bool empty() const noexcept { return pieces_.empty(); }
    bool contains(const Rational& x) const;
    bool intersects(const IntervalSet& other) const;
    bool subset_of(const IntervalSet& other) const;

    /// Complement relative to [0,1].
    IntervalSet complement() const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    struct Normalized {};
    IntervalSet(Normalized, std::vector<Interval> pieces) : pieces_(std::move(pieces)) {}
    friend IntervalSet unite(const IntervalSet&, const IntervalSet&);
    friend IntervalSet intersect(const IntervalSet&, const IntervalSet&);

    std::vector<Interval> pieces_;
};

IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet difference(const IntervalSet& a, const IntervalSet& b);
/// Union of many sets in one normalization pass.
IntervalSet unite_all(std::span<const IntervalSet> sets);

enum class SetOp { unite, intersect, difference };
IntervalSet set_algebra(const IntervalSet& a, const IntervalSet& b, SetOp op);

/// Sum of interval lengths; open/closed flags do not matter.
Rational length(const IntervalSet& s);

enum class BallStyle { open, closed };

/// Ball of radius eps about x clipped to [0,1]. With `circle` the ends 0 and 1
/// are identified and the ball wraps around.
IntervalSet ball(const Rational& x, const Rational& eps, BallStyle style, bool circle = false);

std::ostream& operator<<(std::ostream& os, const Interval& iv);
std::ostream& operator<<(std::ostream& os, const IntervalSet& s);

} // namespace semirec
