#include "semirec/rational.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "semirec/error.hpp"

namespace semirec {

namespace {

using i128 = __int128;

std::atomic<std::size_t> g_bit_cap{default_bit_cap};

constexpr std::int64_t small_max = std::numeric_limits<std::int64_t>::max();

bool fits_small(i128 v) { return v <= small_max && v >= -small_max; }

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b)
{
    if (a == 0)
        return b;
    if (b == 0)
        return a;
    int shift = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    do {
        b >>= __builtin_ctzll(b);
        if (a > b)
            std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

i128 gcd128(i128 a, i128 b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    constexpr i128 u64max = static_cast<i128>(~std::uint64_t{0});
    if (a <= u64max && b <= u64max)
        return static_cast<i128>(gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool mpz_fits_small(const mpz_class& z)
{
    return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
}

std::int64_t mpz_to_i64(const mpz_class& z)
{
    return static_cast<std::int64_t>(z.get_si());
}

mpz_class i64_to_mpz(std::int64_t v)
{
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
}

} // namespace

std::size_t bit_cap() noexcept { return g_bit_cap.load(std::memory_order_relaxed); }

void set_bit_cap(std::size_t bits)
{
    if (bits < 64)
        throw InvalidArgument("bit cap must be at least 64 bits");
    g_bit_cap.store(bits, std::memory_order_relaxed);
}

ScopedBitCap::ScopedBitCap(std::size_t bits) : saved_(bit_cap()) { set_bit_cap(bits); }
ScopedBitCap::~ScopedBitCap() { g_bit_cap.store(saved_, std::memory_order_relaxed); }

Rational::Rational(std::int64_t n) : num_(n), den_(1)
{
    if (n == std::numeric_limits<std::int64_t>::min())
        *this = from_big(mpq_class(i64_to_mpz(n)));
}

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0)
        throw InvalidArgument("rational with zero denominator");
    i128 nn = n, dd = d;
    if (dd < 0) {
        nn = -nn;
        dd = -dd;
    }
    i128 g = gcd128(nn, dd);
    if (g > 1) {
        nn /= g;
        dd /= g;
    }
    if (fits_small(nn) && fits_small(dd)) {
        num_ = static_cast<std::int64_t>(nn);
        den_ = static_cast<std::int64_t>(dd);
    } else {
        mpq_class q(i64_to_mpz(n), i64_to_mpz(d));
        q.canonicalize();
        *this = from_big(std::move(q));
    }
}

Rational::Rational(const mpq_class& q)
{
    mpq_class c(q);
    c.canonicalize();
    *this = from_big(std::move(c));
}

Rational Rational::from_big(mpq_class q)
{
    Rational r;
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (mpz_fits_small(n) && mpz_fits_small(d)) {
        r.num_ = mpz_to_i64(n);
        r.den_ = mpz_to_i64(d);
        return r;
    }
    std::size_t nb = mpz_sizeinbase(n.get_mpz_t(), 2);
    std::size_t db = mpz_sizeinbase(d.get_mpz_t(), 2);
    std::size_t cap = bit_cap();
    if (nb > cap || db > cap)
        throw BitCapExceeded("rational exceeds bit cap of " + std::to_string(cap) + " bits (" +
                             std::to_string(std::max(nb, db)) + " bits needed)");
    r.num_ = 0;
    r.den_ = 1;
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
}

Rational Rational::parse(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view ns = text.substr(0, slash);
    std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(ns, true) || !valid_int(ds, false))
        throw InvalidArgument("cannot parse rational '" + std::string(text) + "' (expected p/q)");
    std::string nstr(ns);
    if (!nstr.empty() && nstr[0] == '+')
        nstr.erase(0, 1);
    mpz_class n(nstr, 10), d(std::string(ds), 10);
    if (d == 0)
        throw InvalidArgument("rational with zero denominator: '" + std::string(text) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return from_big(std::move(q));
}

Rational Rational::from_double(double v)
{
    if (!std::isfinite(v))
        throw InvalidArgument("cannot convert a non-finite double to a rational");
    mpq_class q(v);
    q.canonicalize();
    return from_big(std::move(q));
}

Rational Rational::pow2(int k)
{
    if (k >= 0 && k < 62)
        return Rational(std::int64_t{1} << k);
    if (k < 0 && k > -62)
        return Rational(1, std::int64_t{1} << (-k));
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k >= 0 ? k : -k));
    return k >= 0 ? from_big(mpq_class(p)) : from_big(mpq_class(mpz_class(1), p));
}

int Rational::sign() const noexcept
{
    if (big_)
        return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

mpq_class Rational::to_mpq() const
{
    if (big_)
        return *big_;
    return mpq_class(i64_to_mpz(num_), i64_to_mpz(den_));
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : i64_to_mpz(num_); }
mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : i64_to_mpz(den_); }

double Rational::to_double() const
{
    if (big_)
        return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const
{
    if (big_) {
        if (big_->get_den() == 1)
            return big_->get_num().get_str();
        return big_->get_str();
    }
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::bits() const
{
    if (big_)
        return std::max(mpz_sizeinbase(big_->get_num_mpz_t(), 2), mpz_sizeinbase(big_->get_den_mpz_t(), 2));
    auto width = [](std::int64_t v) {
        std::uint64_t u = v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v);
        return u == 0 ? std::size_t{1} : static_cast<std::size_t>(64 - __builtin_clzll(u));
    };
    return std::max(width(num_), width(den_));
}

Rational Rational::operator-() const
{
    if (big_)
        return from_big(-*big_);
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational make_small_or_big(i128 n, i128 d)
{
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (fits_small(n) && fits_small(d))
        return Rational::reduced(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    auto to_mpz = [](i128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        mpz_class hi(static_cast<unsigned long>(u >> 64));
        mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
        mpz_class z = (hi << 64) + lo;
        return neg ? mpz_class(-z) : z;
    };
    return Rational(mpq_class(to_mpz(n), to_mpz(d)));
}

Rational operator+(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_) {
        if (a.den_ == b.den_)
            return make_small_or_big(i128(a.num_) + b.num_, a.den_);
        return make_small_or_big(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    return Rational::from_big(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_) {
        if (a.den_ == b.den_)
            return make_small_or_big(i128(a.num_) - b.num_, a.den_);
        return make_small_or_big(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    return Rational::from_big(a.to_mpq() - b.to_mpq());
}

Rational operator*(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_) {
        i128 g1 = gcd128(a.num_, b.den_);
        i128 g2 = gcd128(b.num_, a.den_);
        if (g1 == 0)
            g1 = 1;
        if (g2 == 0)
            g2 = 1;
        i128 n = (i128(a.num_) / g1) * (i128(b.num_) / g2);
        i128 d = (i128(a.den_) / g2) * (i128(b.den_) / g1);
        if (fits_small(n) && fits_small(d)) {
            if (n == 0)
                return Rational();
            return Rational::reduced(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
        }
        return make_small_or_big(n, d);
    }
    return Rational::from_big(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.is_zero())
        throw InvalidArgument("division by zero");
    if (!a.big_ && !b.big_) {
        Rational inv;
        inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
        inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
        return a * inv;
    }
    return Rational::from_big(a.to_mpq() / b.to_mpq());
}

bool operator==(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_)
        return a.num_ == b.num_ && a.den_ == b.den_;
    if (!a.big_ || !b.big_)
        return false; // canonical storage: a small value is never stored big
    return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_) {
        i128 l = i128(a.num_) * b.den_;
        i128 r = i128(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::size_t Rational::hash() const
{
    if (big_) {
        std::size_t h = std::hash<std::string>{}(big_->get_str());
        return h;
    }
    std::size_t h = std::hash<std::int64_t>{}(num_);
    return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow(const Rational& base, unsigned exponent)
{
    Rational result(1);
    Rational b = base;
    while (exponent > 0) {
        if (exponent & 1u)
            result *= b;
        exponent >>= 1u;
        if (exponent > 0)
            b *= b;
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace semirec
