#ifndef CYCLECUT_RATIONAL_HPP
#define CYCLECUT_RATIONAL_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cyclecut/error.hpp"

namespace cyclecut {

/// Exact rational number, always normalized (gcd 1, positive denominator).
///
/// Numerator and denominator are 64-bit; intermediate products run through
/// 128-bit arithmetic and overflow of the normalized result throws
/// NumericOverflow rather than wrapping. Every quantity the guarantees are
/// stated about (costs, probabilities, distributions) stays well inside this
/// range at the instance sizes the toolkit handles.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Renders "p/q", or just "p" when the value is an integer.
    std::string str() const;

    /// Parses "p" or "p/q" (optionally signed). Throws ParseError on anything else.
    static Rational parse(const std::string& text);

private:
    std::int64_t num_;
    std::int64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational rat(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

}  // namespace cyclecut

#endif
