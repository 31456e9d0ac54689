#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pcrot {

using Rational = mpq_class;

// Closed rational interval [lo, hi].
struct Interval {
    Rational lo, hi;

    static Interval point(const Rational& x) { return {x, x}; }
    bool degenerate() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    Rational mid() const { return (lo + hi) / 2; }
    Rational width() const { return hi - lo; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(long k, const Interval& a);

// Decimal literal with an explicit half-width of 10^-digits around it.
Interval enclose_decimal(std::string_view text, int digits);

// Either an exact rational or a binary64 value with a bound on |value - true|.
class Scalar {
public:
    Scalar() : exact_(true), q_(0) {}
    Scalar(long v) : exact_(true), q_(v) {}
    Scalar(const Rational& q) : exact_(true), q_(q) { q_.canonicalize(); }
    Scalar(long num, long den);

    static Scalar approx(double value, double err);
    // Decimal, scientific or "p/q" literal; decimals are exact unless approx is set.
    static Scalar parse(std::string_view text, bool approx = false);

    bool is_exact() const { return exact_; }
    const Rational& q() const;
    double value() const;
    double err() const { return exact_ ? 0.0 : err_; }

    // Rigorous rational enclosure of the true value.
    Interval enclosure() const;
    Scalar to_approx() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    // Throws BoundaryAmbiguous when approx enclosures overlap.
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }

    std::string str() const;

private:
    bool exact_;
    Rational q_;
    double v_ = 0.0;
    double err_ = 0.0;
};

Scalar abs(const Scalar& x);
Scalar pow(const Scalar& x, long n);
// Throws BoundaryAmbiguous when an approx value straddles an integer.
long floor_of(const Scalar& x);
Scalar frac(const Scalar& x);
Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);
// Both exact and equal, or approx enclosures overlapping.
bool may_equal(const Scalar& a, const Scalar& b);

std::ostream& operator<<(std::ostream& os, const Scalar& x);

long floor_of(const Rational& x);
Rational frac(const Rational& x);
std::string to_string(const Rational& x);

}  // namespace pcrot
