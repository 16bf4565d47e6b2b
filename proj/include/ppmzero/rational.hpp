#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational numbers with checked 128-bit arithmetic.
 *
 * Values are always kept in lowest terms with a positive denominator.
 * Every intermediate product is computed in 128 bits and overflow raises
 * Error(ErrorKind::overflow) instead of wrapping. Comparisons never
 * overflow: when cross products do not fit, they fall back to a
 * continued-fraction comparison.
 *
 * ExtendedRational adds a single positive infinity, used for unbounded
 * clock drift.
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include "ppmzero/error.hpp"

namespace ppmzero {

using wide_int = __int128;

namespace detail {

inline wide_int abs_wide(wide_int v)
{
    if (v < 0) {
        if (v == -v) // the minimum value has no positive counterpart
            throw Error(ErrorKind::overflow, "negation of the minimum 128-bit value");
        return -v;
    }
    return v;
}

inline wide_int gcd_wide(wide_int a, wide_int b)
{
    a = abs_wide(a);
    b = abs_wide(b);
    while (b != 0) {
        wide_int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline wide_int checked_mul(wide_int a, wide_int b)
{
    wide_int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(ErrorKind::overflow, "128-bit multiplication");
    return r;
}

inline wide_int checked_add(wide_int a, wide_int b)
{
    wide_int r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(ErrorKind::overflow, "128-bit addition");
    return r;
}

inline wide_int checked_sub(wide_int a, wide_int b)
{
    wide_int r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Error(ErrorKind::overflow, "128-bit subtraction");
    return r;
}

inline wide_int floor_div(wide_int n, wide_int d)
{
    wide_int q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0)))
        --q;
    return q;
}

inline std::string wide_to_string(wide_int v)
{
    if (v == 0)
        return "0";
    bool negative = v < 0;
    unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                   : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u != 0) {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (negative)
        digits.insert(digits.begin(), '-');
    return digits;
}

inline wide_int parse_unsigned_digits(std::string_view digits, std::string_view whole)
{
    if (digits.empty())
        throw Error(ErrorKind::parse, "missing digits in '" + std::string(whole) + "'");
    wide_int v = 0;
    for (char c : digits) {
        if (c < '0' || c > '9')
            throw Error(ErrorKind::parse, "unexpected character in '" + std::string(whole) + "'");
        v = checked_add(checked_mul(v, 10), c - '0');
    }
    return v;
}

// Sign of (a/b - c/d) for b, d > 0, exact without overflow.
inline int compare_fractions(wide_int a, wide_int b, wide_int c, wide_int d)
{
    wide_int lhs, rhs;
    if (!__builtin_mul_overflow(a, d, &lhs) && !__builtin_mul_overflow(c, b, &rhs))
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    int flip = 1;
    for (;;) {
        wide_int qa = floor_div(a, b), qc = floor_div(c, d);
        if (qa != qc)
            return qa < qc ? -flip : flip;
        wide_int ra = a - qa * b, rc = c - qc * d; // both in [0, den)
        if (ra == 0 || rc == 0) {
            if (ra == rc)
                return 0;
            return ra == 0 ? -flip : flip;
        }
        // ra/b < rc/d  <=>  b/ra > d/rc
        wide_int next_b = ra, next_d = rc;
        a = b;
        c = d;
        b = next_b;
        d = next_d;
        flip = -flip;
    }
}

} // namespace detail

class Rational {
public:
    constexpr Rational() = default;

    Rational(wide_int numerator, wide_int denominator = 1)
    {
        if (denominator == 0)
            throw Error(ErrorKind::invalid_argument, "zero denominator");
        if (denominator < 0) {
            numerator = detail::checked_sub(0, numerator);
            denominator = detail::checked_sub(0, denominator);
        }
        wide_int g = detail::gcd_wide(numerator, denominator);
        num_ = numerator / g;
        den_ = denominator / g;
    }

    template <typename I>
        requires std::is_integral_v<I>
    Rational(I value) : Rational(static_cast<wide_int>(value), 1)
    {
    }

    wide_int numerator() const noexcept { return num_; }
    wide_int denominator() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }
    bool is_positive() const noexcept { return num_ > 0; }

    wide_int floor() const { return detail::floor_div(num_, den_); }

    double to_double() const
    {
        return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
    }

    Rational reciprocal() const
    {
        if (num_ == 0)
            throw Error(ErrorKind::invalid_argument, "reciprocal of zero");
        return Rational(den_, num_);
    }

    Rational operator-() const { return Rational(detail::checked_sub(0, num_), den_); }

    friend Rational operator+(const Rational& x, const Rational& y)
    {
        wide_int g = detail::gcd_wide(x.den_, y.den_);
        wide_int yd = y.den_ / g;
        wide_int n = detail::checked_add(detail::checked_mul(x.num_, yd),
                                         detail::checked_mul(y.num_, x.den_ / g));
        return Rational(n, detail::checked_mul(x.den_, yd));
    }

    friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

    friend Rational operator*(const Rational& x, const Rational& y)
    {
        wide_int g1 = detail::gcd_wide(x.num_, y.den_);
        wide_int g2 = detail::gcd_wide(y.num_, x.den_);
        if (g1 == 0 || g2 == 0)
            return Rational();
        return Rational(detail::checked_mul(x.num_ / g1, y.num_ / g2),
                        detail::checked_mul(x.den_ / g2, y.den_ / g1));
    }

    friend Rational operator/(const Rational& x, const Rational& y)
    {
        if (y.num_ == 0)
            throw Error(ErrorKind::invalid_argument, "division by zero");
        return x * y.reciprocal();
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& x, const Rational& y) noexcept
    {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }

    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y)
    {
        int s = detail::compare_fractions(x.num_, x.den_, y.num_, y.den_);
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// "p/q", "p", or a decimal such as "1.03" (parsed exactly as 103/100).
    static Rational parse(std::string_view text);

    /// Canonical text: "p" for integers, otherwise "p/q".
    std::string to_string() const
    {
        if (den_ == 1)
            return detail::wide_to_string(num_);
        return detail::wide_to_string(num_) + "/" + detail::wide_to_string(den_);
    }

    /// Exact decimal form when the expansion terminates ("51/50" -> "1.02"),
    /// otherwise the canonical "p/q" form.
    std::string to_decimal_string() const;

private:
    wide_int num_ = 0;
    wide_int den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

} // namespace detail

inline Rational Rational::parse(std::string_view text)
{
    std::string_view s = detail::trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        throw Error(ErrorKind::parse, "empty rational '" + std::string(text) + "'");

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        wide_int n = detail::parse_unsigned_digits(s.substr(0, slash), text);
        wide_int d = detail::parse_unsigned_digits(s.substr(slash + 1), text);
        if (d == 0)
            throw Error(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
        value = Rational(n, d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty())
            throw Error(ErrorKind::parse, "no digits in '" + std::string(text) + "'");
        wide_int w = whole.empty() ? 0 : detail::parse_unsigned_digits(whole, text);
        wide_int f = frac.empty() ? 0 : detail::parse_unsigned_digits(frac, text);
        wide_int scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale = detail::checked_mul(scale, 10);
        value = Rational(detail::checked_add(detail::checked_mul(w, scale), f), scale);
    } else {
        value = Rational(detail::parse_unsigned_digits(s, text), 1);
    }
    return negative ? -value : value;
}

inline std::string Rational::to_decimal_string() const
{
    wide_int d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1)
        return to_string();
    int places = twos > fives ? twos : fives;
    if (places == 0)
        return to_string();
    wide_int scale = 1;
    for (int i = 0; i < places; ++i)
        scale = detail::checked_mul(scale, 10);
    wide_int scaled = detail::checked_mul(detail::abs_wide(num_), scale / den_);
    std::string digits = detail::wide_to_string(scaled);
    if (digits.size() <= static_cast<std::size_t>(places))
        digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    return (num_ < 0 ? "-" : "") + digits;
}

/// A rational or positive infinity. Infinity compares above every rational.
class ExtendedRational {
public:
    ExtendedRational() = default;
    ExtendedRational(Rational value) : value_(value) {}
    template <typename I>
        requires std::is_integral_v<I>
    ExtendedRational(I value) : value_(Rational(value))
    {
    }

    static ExtendedRational infinity()
    {
        ExtendedRational r;
        r.value_.reset();
        return r;
    }

    bool is_infinite() const noexcept { return !value_.has_value(); }
    bool is_finite() const noexcept { return value_.has_value(); }

    const Rational& value() const
    {
        if (!value_)
            throw Error(ErrorKind::invalid_argument, "infinite value has no rational form");
        return *value_;
    }

    friend bool operator==(const ExtendedRational&, const ExtendedRational&) = default;

    friend std::strong_ordering operator<=>(const ExtendedRational& x, const ExtendedRational& y)
    {
        if (x.is_infinite() || y.is_infinite())
            return x.is_infinite() <=> y.is_infinite();
        return *x.value_ <=> *y.value_;
    }

    friend bool operator==(const ExtendedRational& x, const Rational& y) { return x.value_ && *x.value_ == y; }
    friend std::strong_ordering operator<=>(const ExtendedRational& x, const Rational& y)
    {
        if (x.is_infinite())
            return std::strong_ordering::greater;
        return *x.value_ <=> y;
    }

    /// Accepts everything Rational::parse does plus "inf".
    static ExtendedRational parse(std::string_view text)
    {
        std::string_view s = detail::trim(text);
        if (s == "inf" || s == "+inf" || s == "infinity")
            return infinity();
        return ExtendedRational(Rational::parse(s));
    }

    std::string to_string() const { return value_ ? value_->to_string() : "inf"; }
    std::string to_decimal_string() const { return value_ ? value_->to_decimal_string() : "inf"; }

private:
    std::optional<Rational> value_ = Rational(0);
};

inline std::ostream& operator<<(std::ostream& os, const ExtendedRational& r) { return os << r.to_string(); }

} // namespace ppmzero
