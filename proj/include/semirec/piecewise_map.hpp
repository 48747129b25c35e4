#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "semirec/interval_set.hpp"
#include "semirec/rational.hpp"

namespace semirec {

/// c0 + c1 x + c2 x^2 + ... with exact coefficients; trailing zeros trimmed.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial constant(Rational c) { return Polynomial({std::move(c)}); }
    static Polynomial affine(Rational slope, Rational offset) { return Polynomial({std::move(offset), std::move(slope)}); }
    static Polynomial identity() { return affine(1, 0); }

    /// Degree, with the zero polynomial reported as 0.
    int degree() const noexcept { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(); }

    Rational operator()(const Rational& x) const;
    /// this(inner(x)).
    Polynomial after(const Polynomial& inner) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<Rational> coeffs_;
};

/// One branch of a piecewise map.
struct Piece {
    Interval domain;
    Polynomial poly;
};

struct MapOptions {
    std::size_t piece_budget = 1'000'000;
};

/// Exact piecewise-polynomial self-map of [0,1] with finitely many point overrides.
///
/// Construction checks that piece domains are disjoint, that pieces and
/// override points together cover [0,1], and that every value lies in [0,1].
/// Quadratic branches are split at an interior vertex so that every stored
/// piece is monotone. An override value takes precedence over any piece.
class PiecewiseMap {
public:
    PiecewiseMap(std::string label, std::vector<Piece> pieces, std::map<Rational, Rational> overrides = {},
                 bool circle = false);

    static PiecewiseMap identity();

    const std::string& label() const noexcept { return label_; }
    const std::vector<Piece>& pieces() const noexcept { return pieces_; }
    const std::map<Rational, Rational>& overrides() const noexcept { return overrides_; }
    /// Whether 0 and 1 are identified (affects only neighbourhoods).
    bool circle() const noexcept { return circle_; }
    bool is_affine() const noexcept;
    int max_degree() const noexcept;

    Rational operator()(const Rational& x) const { return eval(x); }
    Rational eval(const Rational& x) const;

    /// Covering piece index for a non-override point, or npos.
    std::size_t piece_index(const Rational& x) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    PiecewiseMap with_label(std::string label) const;

private:
    struct MonotonePieces {};
    // Pieces already known to be monotone (products of composition); any degree allowed.
    PiecewiseMap(MonotonePieces, std::string label, std::vector<Piece> pieces, std::map<Rational, Rational> overrides,
                 bool circle);
    void validate();
    friend PiecewiseMap compose(const PiecewiseMap& f, const PiecewiseMap& g, const MapOptions& opts);

    std::string label_;
    std::vector<Piece> pieces_;
    std::map<Rational, Rational> overrides_;
    bool circle_ = false;
};

/// Image of a single monotone piece restricted to an interval of its domain.
Interval piece_image(const Piece& piece, const Interval& part);

/// Exact forward image {T(x) : x in S}.
IntervalSet image(const PiecewiseMap& map, const IntervalSet& s);

/// Exact preimage {x : T(x) in S}. Only affine maps are supported.
IntervalSet preimage(const PiecewiseMap& map, const IntervalSet& s);

/// Generator indices, 0-based; applied first-to-last.
using Word = std::vector<std::uint32_t>;

/// g after f, i.e. x -> g(f(x)).
PiecewiseMap compose(const PiecewiseMap& f, const PiecewiseMap& g, const MapOptions& opts = {});

/// The composition T_{w_n} o ... o T_{w_1}; the first letter is applied first.
/// Throws UnsupportedOperation when a breakpoint of the result would be irrational;
/// eval_word still works in that case.
PiecewiseMap compose(std::span<const PiecewiseMap> generators, const Word& w, const MapOptions& opts = {});

/// Evaluates a word at a point without materializing the composed map.
Rational eval_word(std::span<const PiecewiseMap> generators, const Word& w, const Rational& x);

/// Throws InvalidArgument unless every letter indexes one of `d` generators.
void check_word(const Word& w, std::size_t d);

} // namespace semirec
