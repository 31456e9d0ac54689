#include "pcrot/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "pcrot/errors.hpp"

namespace pcrot {

namespace {

constexpr double kUlp = 0x1p-52;
constexpr double kTiny = 0x1p-1074;
constexpr double kUp = 1.0 + 0x1p-50;

double slack(double v) { return std::abs(v) * kUlp + kTiny; }

struct Approx {
    double v, e;
};

Approx as_approx(const Scalar& x) {
    if (!x.is_exact()) return {x.value(), x.err()};
    double v = x.q().get_d();
    if (!std::isfinite(v)) throw std::overflow_error("rational out of binary64 range");
    if (Rational(v) == x.q()) return {v, 0.0};
    return {v, slack(v)};
}

Rational rational_of(double v) {
    Rational r(v);
    return r;
}

Rational pow10(long n) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(n < 0 ? -n : n));
    return n < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

Rational parse_decimal(std::string_view s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    mpz_class mant = 0;
    long scale = 0;
    bool digits = false, dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mant = mant * 10 + (c - '0');
            if (dot) --scale;
            digits = true;
        } else if (c == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!digits) throw std::invalid_argument("bad number: " + std::string(s));
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
        long ex = 0;
        bool edig = false;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            ex = ex * 10 + (s[i] - '0');
            edig = true;
            if (ex > 100000) throw std::invalid_argument("exponent too large");
        }
        if (!edig) throw std::invalid_argument("bad exponent: " + std::string(s));
        scale += eneg ? -ex : ex;
    }
    if (i != s.size()) throw std::invalid_argument("bad number: " + std::string(s));
    Rational r = Rational(mant) * pow10(scale);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator*(long k, const Interval& a) {
    Rational kk(k);
    if (k >= 0) return {kk * a.lo, kk * a.hi};
    return {kk * a.hi, kk * a.lo};
}

Interval enclose_decimal(std::string_view text, int digits) {
    Rational c = parse_decimal(trim(text));
    Rational h = pow10(-digits);
    return {c - h, c + h};
}

Scalar::Scalar(long num, long den) : exact_(true), q_(num, den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    q_.canonicalize();
}

Scalar Scalar::approx(double value, double err) {
    if (!std::isfinite(value) || !std::isfinite(err) || err < 0)
        throw std::invalid_argument("approx scalar needs finite value and err >= 0");
    Scalar s;
    s.exact_ = false;
    s.v_ = value;
    s.err_ = err;
    return s;
}

Scalar Scalar::parse(std::string_view text, bool approx) {
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty number");
    Scalar out;
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        Rational n = parse_decimal(trim(s.substr(0, slash)));
        Rational d = parse_decimal(trim(s.substr(slash + 1)));
        if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
        out = Scalar(Rational(n / d));
    } else {
        out = Scalar(parse_decimal(s));
    }
    return approx ? out.to_approx() : out;
}

const Rational& Scalar::q() const {
    if (!exact_) throw std::logic_error("exact value requested from approx scalar");
    return q_;
}

double Scalar::value() const { return exact_ ? q_.get_d() : v_; }

Interval Scalar::enclosure() const {
    if (exact_) return Interval::point(q_);
    Rational v = rational_of(v_), e = rational_of(err_);
    return {v - e, v + e};
}

Scalar Scalar::to_approx() const {
    if (!exact_) return *this;
    Approx a = as_approx(*this);
    return approx(a.v, a.e);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (exact_) r.q_ = -q_;
    else r.v_ = -v_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (exact_ && o.exact_) {
        q_ += o.q_;
        return *this;
    }
    Approx a = as_approx(*this), b = as_approx(o);
    double v = a.v + b.v;
    *this = approx(v, (a.e + b.e) * kUp + slack(v));
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (exact_ && o.exact_) {
        q_ *= o.q_;
        return *this;
    }
    Approx a = as_approx(*this), b = as_approx(o);
    double v = a.v * b.v;
    double e = std::abs(a.v) * b.e + std::abs(b.v) * a.e + a.e * b.e;
    *this = approx(v, e * kUp + slack(v));
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (exact_ && o.exact_) {
        if (o.q_ == 0) throw std::domain_error("division by zero");
        q_ /= o.q_;
        return *this;
    }
    Approx a = as_approx(*this), b = as_approx(o);
    double den = std::abs(b.v) - b.e * kUp;
    if (!(den > 0)) throw BoundaryAmbiguous("divisor enclosure contains zero");
    double v = a.v / b.v;
    double e = (a.e + std::abs(v) * b.e) / den;
    *this = approx(v, e * kUp + slack(v));
    return *this;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }
    Approx x = as_approx(a), y = as_approx(b);
    double diff = x.v - y.v;
    double tol = (x.e + y.e) * kUp + slack(diff) + slack(x.v) + slack(y.v);
    if (diff > tol) return std::strong_ordering::greater;
    if (diff < -tol) return std::strong_ordering::less;
    throw BoundaryAmbiguous("cannot order " + a.str() + " and " + b.str());
}

std::string Scalar::str() const {
    if (exact_) return to_string(q_);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v_);
    return buf;
}

Scalar abs(const Scalar& x) {
    if (x.is_exact()) return Scalar(Rational(::abs(x.q())));
    return Scalar::approx(std::abs(x.value()), x.err());
}

Scalar pow(const Scalar& x, long n) {
    if (n < 0) return Scalar(1) / pow(x, -n);
    Scalar r(1), b = x;
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b *= b;
    }
    return r;
}

long floor_of(const Rational& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    if (!f.fits_slong_p()) throw std::overflow_error("floor out of range");
    return f.get_si();
}

Rational frac(const Rational& x) { return x - floor_of(x); }

long floor_of(const Scalar& x) {
    if (x.is_exact()) return floor_of(x.q());
    double lo = x.value() - x.err() * kUp - slack(x.value());
    double hi = x.value() + x.err() * kUp + slack(x.value());
    double fl = std::floor(lo), fh = std::floor(hi);
    if (fl != fh) throw BoundaryAmbiguous("integer part of " + x.str() + " is ambiguous");
    return static_cast<long>(fl);
}

Scalar frac(const Scalar& x) { return x - Scalar(floor_of(x)); }

Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

bool may_equal(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return a.q() == b.q();
    try {
        return (a <=> b) == std::strong_ordering::equal;
    } catch (const BoundaryAmbiguous&) {
        return true;
    }
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

std::string to_string(const Rational& x) {
    Rational c = x;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace pcrot
