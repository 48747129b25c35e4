#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace semirec {

/// Default cap on the bit length of a rational's numerator or denominator.
inline constexpr std::size_t default_bit_cap = 32768;

/// Current process-wide bit cap.
std::size_t bit_cap() noexcept;
void set_bit_cap(std::size_t bits);

/// Restores the previous bit cap when it goes out of scope.
class ScopedBitCap {
public:
    explicit ScopedBitCap(std::size_t bits);
    ~ScopedBitCap();
    ScopedBitCap(const ScopedBitCap&) = delete;
    ScopedBitCap& operator=(const ScopedBitCap&) = delete;

private:
    std::size_t saved_;
};

/// Exact rational number in canonical form (reduced, positive denominator).
///
/// Values whose numerator and denominator fit in 64 bits are stored inline;
/// larger ones fall back to GMP. Every operation that produces a number wider
/// than bit_cap() throws BitCapExceeded instead of degrading precision.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n); // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(const mpq_class& q);

    /// Parses "p/q" or "p". Decimal notation is rejected.
    static Rational parse(std::string_view text);
    /// Exact value of a finite double (a dyadic rational).
    static Rational from_double(double v);
    /// 2^k for k >= 0, 2^-|k| for k < 0.
    static Rational pow2(int k);

    bool is_small() const noexcept { return !big_; }
    int sign() const noexcept;
    bool is_zero() const noexcept { return sign() == 0; }
    bool is_integer() const;

    mpq_class to_mpq() const;
    mpz_class numerator() const;
    mpz_class denominator() const;
    double to_double() const;
    std::string str() const;
    /// Bit length of the wider of numerator and denominator.
    std::size_t bits() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::size_t hash() const;

private:
    static Rational from_big(mpq_class q);
    /// Already reduced parts with d > 0.
    static Rational reduced(std::int64_t n, std::int64_t d) noexcept
    {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }
    friend Rational make_small_or_big(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
/// Integer power, exponent >= 0.
Rational pow(const Rational& base, unsigned exponent);

std::ostream& operator<<(std::ostream& os, const Rational& r);

struct RationalHash {
    std::size_t operator()(const Rational& r) const { return r.hash(); }
};

} // namespace semirec
