#include "pcrot/series.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "pcrot/errors.hpp"

namespace pcrot {

namespace {

constexpr double kUp = 1.0 + 1e-12;

double upper(const Scalar& x) { return x.value() + x.err() * kUp + std::abs(x.value()) * 0x1p-51; }
double lower(const Scalar& x) { return x.value() - x.err() * kUp - std::abs(x.value()) * 0x1p-51; }

double abs_upper(const Interval& i) {
    Rational m = ::abs(i.lo) > ::abs(i.hi) ? Rational(::abs(i.lo)) : Rational(::abs(i.hi));
    return m.get_d() * kUp + 1e-300;
}

Scalar approx_of(const Interval& i) {
    Rational mid = i.mid();
    double v = mid.get_d();
    Rational rounding = ::abs(Rational(v) - mid);
    Rational half = i.width() / 2;
    double e = Rational(rounding + half).get_d() * kUp + 1e-300;
    return Scalar::approx(v, e);
}

void check_alpha(const Scalar& alpha) {
    if (alpha < Scalar(0) || Scalar(1) < alpha)
        throw OutOfDomain("alpha must lie in [0,1], got " + alpha.str());
}

void check_box(const Interval& box) {
    if (!(box.lo > 0 && box.hi < 1 && box.lo <= box.hi))
        throw OutOfDomain("rho enclosure must lie inside (0,1)");
}

}  // namespace

RotationTarget RotationTarget::rational(long p, long q, const Scalar& alpha) {
    if (!(0 < p && p < q)) throw OutOfDomain("rational rho needs 0 < p < q");
    if (std::gcd(p, q) != 1) throw OutOfDomain("rational rho must be reduced");
    check_alpha(alpha);
    RotationTarget t;
    t.kind_ = RhoKind::rational;
    t.p_ = p;
    t.q_ = q;
    t.box_ = Interval::point(Rational(p, q));
    t.alpha_ = RhoAffine::constant(alpha);
    return t;
}

RotationTarget RotationTarget::irrational(const Interval& box, const Scalar& alpha) {
    check_box(box);
    check_alpha(alpha);
    RotationTarget t;
    t.kind_ = RhoKind::irrational;
    t.box_ = box;
    t.alpha_ = RhoAffine::constant(alpha);
    return t;
}

RotationTarget RotationTarget::resonant(const Interval& box, long k) {
    check_box(box);
    RotationTarget t;
    t.kind_ = RhoKind::irrational;
    t.box_ = box;
    Interval kb = k * box;
    long f = pcrot::floor_of(kb.lo);
    if (f != pcrot::floor_of(kb.hi))
        throw PrecisionExhausted("rho enclosure too wide to place {k rho}");
    t.alpha_ = {Interval::point(Rational(-f)), k};
    return t;
}

RotationTarget RotationTarget::approximate(const Scalar& rho, const Scalar& alpha) {
    Interval box = rho.enclosure();
    check_box(box);
    check_alpha(alpha);
    RotationTarget t;
    t.kind_ = RhoKind::approximate;
    t.box_ = box;
    t.alpha_ = RhoAffine::constant(alpha);
    return t;
}

Scalar RotationTarget::rho() const {
    if (kind_ == RhoKind::rational) return Scalar(p_, q_);
    return approx_of(box_);
}

Scalar RotationTarget::alpha() const { return value(alpha_); }

std::optional<long> RotationTarget::resonance() const {
    if (kind_ != RhoKind::irrational || !alpha_.c.degenerate() || alpha_.m == 0) return std::nullopt;
    if (alpha_.c.lo.get_den() != 1) return std::nullopt;
    return alpha_.m;
}

bool RotationTarget::resonance_decidable() const {
    if (kind_ == RhoKind::approximate) return false;
    return alpha_.c.degenerate();
}

RotationTarget RotationTarget::with_alpha(const Scalar& alpha) const {
    check_alpha(alpha);
    RotationTarget t = *this;
    t.alpha_ = RhoAffine::constant(alpha);
    return t;
}

RhoAffine RotationTarget::orbit_point(long j) const {
    RhoAffine x{Interval::point(0), j};
    return x + (-floor_of(x));
}

int RotationTarget::sign(const RhoAffine& x) const {
    Interval v = x.c + x.m * box_;
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    if (v.lo == 0 && v.hi == 0) return 0;
    throw BoundaryAmbiguous("cannot decide the sign of c + m*rho with m=" + std::to_string(x.m));
}

long RotationTarget::floor_of(const RhoAffine& x) const {
    Interval v = x.c + x.m * box_;
    long n = pcrot::floor_of(v.lo);
    while (sign(x + (-(n + 1))) >= 0) ++n;
    return n;
}

Scalar RotationTarget::value(const RhoAffine& x) const {
    if (kind_ == RhoKind::rational && x.c.degenerate()) return Scalar(Rational(x.c.lo + x.m * box_.lo));
    if (x.m == 0 && x.c.degenerate()) return Scalar(x.c.lo);
    return approx_of(x.c + x.m * box_);
}

double tail_bound(long n, double lambda, double d, double rho, double y_abs) {
    double oml = 1.0 - lambda;
    double ln1 = std::pow(lambda, static_cast<double>(n + 1));
    double t1 = oml * rho * ln1 * ((n + 1) - n * lambda) / (oml * oml);
    double t2 = (oml * (y_abs + 1.0) + d) * ln1 / oml;
    return (t1 + t2) * kUp;
}

namespace {

double tail_bound_for(const Family& fam, long n, double rho, double y_abs) {
    double lam_hi = upper(fam.lambda), lam_lo = lower(fam.lambda);
    double oml_lo = 1.0 - lam_hi, oml_hi = 1.0 - lam_lo;
    double ln1 = std::pow(lam_hi, static_cast<double>(n + 1));
    double t1 = oml_hi * rho * ln1 * ((n + 1) - n * lam_lo) / (oml_lo * oml_lo);
    double t2 = (oml_hi * (y_abs + 1.0) + upper(fam.d)) * ln1 / oml_lo;
    return (t1 + t2) * kUp;
}

}  // namespace

long truncation_level(const Family& fam, double rho, double y_abs, const SeriesOptions& opt) {
    double lam = upper(fam.lambda);
    long guess = 1;
    if (opt.tol > 0 && lam < 1) {
        double g = std::log(opt.tol) / std::log(lam) - 8;
        if (g > 1) guess = static_cast<long>(std::min<double>(g, opt.n_max));
    }
    while (guess > 1 && tail_bound_for(fam, guess, rho, y_abs) <= opt.tol) guess /= 2;
    for (long n = std::max(1L, guess); n <= opt.n_max; ++n)
        if (tail_bound_for(fam, n, rho, y_abs) <= opt.tol) return n;
    throw PrecisionExhausted("tail bound above tolerance at the truncation cap");
}

Scalar psi_series(const Family& fam, const RotationTarget& t, const RhoAffine& y, int s,
                  const RhoAffine& beta, const SeriesOptions& opt) {
    const Scalar& lam = fam.lambda;
    Scalar oml = fam.one_minus_lambda();
    if (opt.closed_form && t.is_rational() && y.c.degenerate() && beta.c.degenerate()) {
        long p = t.p(), q = t.q();
        Rational rho(p, q);
        Rational y0 = y.c.lo + y.m * rho;
        Rational b = beta.c.lo + beta.m * rho;
        Scalar sum(0), lr(1);
        for (long r = 1; r <= q; ++r) {
            lr *= lam;
            Rational z = y0 + Rational(s * r) * rho;
            long fl = pcrot::floor_of(z);
            Scalar term = oml * Scalar(fl);
            if (z - fl >= b) term += fam.d;
            sum += lr * term;
        }
        // lr == lambda^q here
        Scalar den = Scalar(1) - lr;
        return sum / den + Scalar(s * p) * lr * lam / den;
    }

    double y_abs = abs_upper(y.c) + std::abs(static_cast<double>(y.m)) * t.rho_box().hi.get_d() * kUp;
    double rho_hi = t.rho_box().hi.get_d() * kUp;
    long n = truncation_level(fam, rho_hi, y_abs, opt);

    std::vector<long> fl(n + 1);
    std::vector<char> th(n + 1);
    for (long k = 1; k <= n; ++k) {
        RhoAffine z{y.c, y.m + s * k};
        fl[k] = t.floor_of(z);
        th[k] = t.sign(z + (-fl[k]) - beta) >= 0;
    }
    Scalar la = lam.to_approx(), oa = oml.to_approx(), da = fam.d.to_approx();
    Scalar acc = Scalar::approx(0, 0);
    for (long k = n; k >= 1; --k) {
        Scalar c = oa * Scalar(fl[k]);
        if (th[k]) c += da;
        acc = la * (c + acc);
    }
    return acc + Scalar::approx(0, tail_bound_for(fam, n, rho_hi, y_abs));
}

namespace {

// r in 1..q-1 with r p / q in Z + alpha, or 0.
long rational_resonance(const RotationTarget& t) {
    const RhoAffine& al = t.alpha_form();
    for (long r = 1; r < t.q(); ++r) {
        Rational fr((r * t.p()) % t.q(), t.q());
        if (t.sign(al - RhoAffine{Interval::point(fr), 0}) == 0) return r;
    }
    return 0;
}

bool alpha_is_endpoint(const RotationTarget& t) {
    const RhoAffine& al = t.alpha_form();
    if (al.m != 0 && t.kind() == RhoKind::irrational) return false;
    return t.sign(al) == 0 || t.sign(al + (-1)) == 0;
}

RhoAffine one_minus(const RhoAffine& x) { return RhoAffine{Interval::point(1), 0} - x; }

}  // namespace

Scalar rational_delta_gap(const Family& fam, const RotationTarget& t) {
    if (!t.is_rational()) throw std::logic_error("rational gap needs rational rho");
    const Scalar& lam = fam.lambda;
    Scalar oml = fam.one_minus_lambda();
    long q = t.q();
    Scalar lq = pow(lam, q);
    Scalar inner = oml - fam.d;
    if (alpha_is_endpoint(t)) inner += fam.d;
    long r = rational_resonance(t);
    if (r) inner += pow(lam, -r) * fam.d;
    return pow(lam, q - 1) / (Scalar(1) - lq) * oml * inner;
}

Scalar rational_a_gap(const Family& fam, const RotationTarget& t) {
    if (!t.is_rational()) throw std::logic_error("rational gap needs rational rho");
    const Scalar& lam = fam.lambda;
    Scalar oml = fam.one_minus_lambda();
    long q = t.q();
    Scalar den = Scalar(1) - pow(lam, q);
    Scalar inner = fam.d;
    if (alpha_is_endpoint(t)) inner += oml - fam.d;
    Scalar gap = pow(lam, q - 1) / den * inner;
    long r = rational_resonance(t);
    if (r) gap += pow(lam, r - 1) / den * (oml - fam.d);
    return gap;
}

SidedValue delta_of(const Family& fam, const RotationTarget& t, const SeriesOptions& opt) {
    Scalar oml = fam.one_minus_lambda();
    Scalar sum = psi_series(fam, t, RhoAffine{Interval::point(0), 0}, +1, one_minus(t.alpha_form()), opt);
    SidedValue out;
    out.value = oml - fam.d + oml / fam.lambda * sum;
    if (t.is_rational()) {
        out.limit = out.value - rational_delta_gap(fam, t);
    } else if (auto k = t.resonance(); k && *k < 0) {
        out.limit = out.value - oml * fam.d * pow(fam.lambda, -*k - 1);
    } else {
        out.limit = out.value;
        out.caveat = !t.resonance_decidable();
    }
    return out;
}

SidedValue a_of(const Family& fam, const Scalar& delta, const RotationTarget& t, const SeriesOptions& opt) {
    Scalar oml = fam.one_minus_lambda();
    Scalar sum = psi_series(fam, t, t.alpha_form(), -1, t.alpha_form(), opt);
    SidedValue out;
    out.value = delta / oml + sum / fam.lambda;
    if (t.is_rational()) {
        out.limit = out.value - rational_a_gap(fam, t);
    } else if (auto k = t.resonance(); k && *k > 0) {
        out.limit = out.value - (oml - fam.d) * pow(fam.lambda, *k - 1);
    } else {
        out.limit = out.value;
        out.caveat = !t.resonance_decidable();
    }
    return out;
}

SidedValue phi(const Family& fam, const Scalar& delta, const RotationTarget& t, const RhoAffine& y,
               const SeriesOptions& opt) {
    Scalar oml = fam.one_minus_lambda();
    SidedValue out;
    out.value = delta / oml + psi_series(fam, t, y, -1, t.alpha_form(), opt) / fam.lambda;
    out.limit = (delta + fam.d) / oml - Scalar(1) -
                psi_series(fam, t, -y, +1, one_minus(t.alpha_form()), opt) / fam.lambda;
    return out;
}

SidedValue phi(const Family& fam, const Scalar& delta, const RotationTarget& t, const Scalar& y,
               const SeriesOptions& opt) {
    return phi(fam, delta, t, RhoAffine::constant(y), opt);
}

}  // namespace pcrot
