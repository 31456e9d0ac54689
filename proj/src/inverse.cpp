#include "pcrot/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "pcrot/errors.hpp"

namespace pcrot {

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (hi < lo) return simplest_between(hi, lo);
    long fl = floor_of(lo);
    if (lo == fl) return lo;
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    Rational inner = simplest_between(1 / (hi - fl), 1 / (lo - fl));
    Rational r = fl + 1 / inner;
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- rotation number

namespace {

Rational from_double(double x) { return Rational(x); }

Scalar clamp01(const Rational& x) {
    if (x < 0) return Scalar(0);
    if (x > 1) return Scalar(1);
    return Scalar(x);
}

struct Step {
    double x;
    int theta;  // 1 when x >= a
    int wind;   // floor of the lift image
};

// Re-derive the cycle traced by steps[from, from + q) exactly and check it.
std::optional<std::vector<Scalar>> confirm_cycle(const MapSpec& s, const std::vector<Step>& steps, long from, long q) {
    Scalar c(0);
    for (long j = 0; j < q; ++j) {
        const Step& st = steps[from + j];
        c = s.lambda * c + s.delta + (st.theta ? s.d : Scalar(0)) - Scalar(st.wind);
    }
    Scalar xs = c / (Scalar(1) - pow(s.lambda, q));
    if (xs < Scalar(0) || !(xs < Scalar(1))) return std::nullopt;
    std::vector<Scalar> cycle;
    Scalar x = xs;
    for (long j = 0; j < q; ++j) {
        const Step& st = steps[from + j];
        if (theta(s.a, x) != st.theta) return std::nullopt;
        Scalar lift = lift_eval(s, x);
        if (floor_of(lift) != st.wind) return std::nullopt;
        cycle.push_back(x);
        x = lift - Scalar(st.wind);
    }
    if (!(x == xs)) return std::nullopt;
    return cycle;
}

}  // namespace

RotationEstimate rotation_number(const MapSpec& s, const RotationOptions& opt) {
    if (opt.n_max < 1) throw OutOfDomain("n_max must be positive");
    RotationEstimate est;
    FixedPointInfo fp = fixed_point_check(s);
    if (fp.region != FixedRegion::none) {
        long r = fp.region == FixedRegion::F1 ? 0 : 1;
        est.lower = est.upper = Scalar(r);
        est.exact = Rational(r);
        est.p = r;
        est.q = 1;
        est.confirmed = s.delta.is_exact() && s.a.is_exact();
        if (!fp.ghost) est.cycle = {*fp.x_star};
        return est;
    }

    const double lam = s.lambda.value(), delta = s.delta.value(), d = s.d.value(), a = s.a.value();
    std::vector<Step> steps;
    steps.reserve(opt.n_max + 1);
    double x = 0.0;
    long winding = 0;
    const bool exact = s.lambda.is_exact() && s.d.is_exact() && s.delta.is_exact() && s.a.is_exact();

    auto circle_dist = [](double u, double v) {
        double t = std::abs(u - v);
        return std::min(t, 1.0 - t);
    };

    long next_check = 16;
    for (long n = 0; n < opt.n_max; ++n) {
        Step st{x, x >= a ? 1 : 0, 0};
        double lift = lam * x + delta + d * st.theta;
        st.wind = static_cast<int>(std::floor(lift));
        steps.push_back(st);
        winding += st.wind;
        x = lift - st.wind;
        if (x >= 1.0) x = std::nextafter(1.0, 0.0);
        if (x < 0.0) x = 0.0;
        long done = n + 1;
        if (done != next_check && done != opt.n_max) continue;
        next_check *= 2;
        // Search the smallest q with a return and a repeated symbol block.
        long qmax = std::min(opt.q_cap, done / 2);
        for (long q = 1; q <= qmax; ++q) {
            if (circle_dist(x, steps[done - q].x) >= opt.eps) continue;
            bool repeat = true;
            for (long j = 0; j < q && repeat; ++j) {
                const Step& u = steps[done - q + j];
                const Step& v = steps[done - 2 * q + j];
                repeat = u.theta == v.theta && u.wind == v.wind;
            }
            if (!repeat) continue;
            long p = 0;
            for (long j = 0; j < q; ++j) p += steps[done - q + j].wind;
            if (exact) {
                auto cyc = confirm_cycle(s, steps, done - q, q);
                if (!cyc) continue;
                est.cycle = std::move(*cyc);
                est.confirmed = true;
            }
            long g = std::gcd(p, q);
            est.p = p / g;
            est.q = q / g;
            est.exact = Rational(est.p, est.q);
            est.exact->canonicalize();
            est.lower = est.upper = Scalar(*est.exact);
            est.iterations = done;
            return est;
        }
    }
    // |F^n(0) - n rho| < 1 for a monotone degree-one lift; 1e-9 covers binary64 drift.
    long n = static_cast<long>(steps.size());
    Rational reach = Rational(winding) + from_double(x);
    Rational margin(1, 1000000000);
    est.lower = clamp01((reach - 1 - margin) / n);
    est.upper = clamp01((reach + 1 + margin) / n);
    est.iterations = n;
    if ((est.upper - est.lower).value() > opt.bracket_tol)
        throw Inconclusive("no cycle detected and rotation bracket wider than requested");
    return est;
}

// ---------------------------------------------------------------- rho_delta, Phi

namespace {

void check_delta(const Family& fam, const Scalar& delta) {
    if (!(Scalar(1) - fam.lambda - fam.d < delta && delta < Scalar(1)))
        throw OutOfDomain("delta must lie in (1-lambda-d, 1), got " + delta.str());
}

RotationTarget rational_target(const Rational& rho, const Scalar& alpha) {
    return RotationTarget::rational(rho.get_num().get_si(), rho.get_den().get_si(), alpha);
}

// delta(m, alpha) through the truncated series; used where q is too large for the periodic sum.
Scalar delta_value_truncated(const Family& fam, const Rational& m, const Scalar& alpha) {
    RotationTarget t = rational_target(m, alpha);
    SeriesOptions so;
    so.closed_form = false;
    RhoAffine beta = RhoAffine{Interval::point(1), 0} - t.alpha_form();
    Scalar sum = psi_series(fam, t, RhoAffine{Interval::point(0), 0}, +1, beta, so);
    Scalar oml = fam.one_minus_lambda();
    return oml - fam.d + oml / fam.lambda * sum;
}

Scalar approx_rho(const Rational& lo, const Rational& hi) {
    Rational mid = (lo + hi) / 2;
    double v = mid.get_d();
    double e = Rational(abs(Rational(v) - mid) + (hi - lo) / 2).get_d() * (1 + 1e-12) + 1e-300;
    return Scalar::approx(v, e);
}

}  // namespace

SidedValue phi_integer_rho(const Family& fam, const Scalar& delta, long r, const Scalar& alpha, const Scalar& y) {
    Scalar oml = fam.one_minus_lambda();
    auto eval = [&](long fl, int th) {
        return delta / oml + (oml * Scalar(fl) + (th ? fam.d : Scalar(0)) - Scalar(r)) / oml;
    };
    long fl = floor_of(y);
    Scalar fr = y - Scalar(fl);
    SidedValue out;
    out.value = eval(fl, fr >= alpha);
    if (fr == Scalar(0))
        out.limit = eval(fl - 1, alpha < Scalar(1));
    else
        out.limit = eval(fl, fr > alpha);
    return out;
}

RhoDelta rho_delta(const Family& fam, const Scalar& delta, const Scalar& alpha, const RhoDeltaOptions& opt) {
    check_delta(fam, delta);
    if (alpha < Scalar(0) || Scalar(1) < alpha) throw OutOfDomain("alpha must lie in [0,1]");
    RhoDelta out;
    auto exact_at = [&](const Rational& r) {
        out.lo = out.hi = r;
        out.plateau = true;
        out.rho = Scalar(r);
        return out;
    };
    // delta(0, alpha) = 1 - lambda - d + d 1{alpha = 1}; delta(1^-, alpha) = 1 - d 1{alpha = 0}.
    Scalar at_zero = Scalar(1) - fam.lambda - fam.d + (alpha == Scalar(1) ? fam.d : Scalar(0));
    if (delta <= at_zero) return exact_at(0);
    if (alpha == Scalar(0) && delta >= Scalar(1) - fam.d) return exact_at(1);

    // Stern-Brocot descent: left of m when delta < delta(m^-), right when delta > delta(m).
    long lp = 0, lq = 1, rp = 1, rq = 1;
    // An approx delta can tie with a plateau edge; the bracket so far stays valid.
    bool stalled = false;
    while (lq + rq <= opt.q_cap) {
        long mp = lp + rp, mq = lq + rq;
        SidedValue dv = delta_of(fam, RotationTarget::rational(mp, mq, alpha));
        try {
            if (delta < dv.limit) {
                rp = mp;
                rq = mq;
            } else if (dv.value < delta) {
                lp = mp;
                lq = mq;
            } else {
                return exact_at(Rational(mp, mq));
            }
        } catch (const BoundaryAmbiguous&) {
            stalled = true;
            break;
        }
    }
    Rational lo(lp, lq), hi(rp, rq);
    // No plateau with q <= q_cap: shrink the bracket with the truncated series.
    for (int it = 0; !stalled && it < 400 && Rational(hi - lo).get_d() > opt.tol; ++it) {
        Rational w = hi - lo;
        Rational m = simplest_between(lo + w / 4, hi - w / 4);
        try {
            if (delta_value_truncated(fam, m, alpha) < delta)
                lo = m;
            else
                hi = m;
        } catch (const BoundaryAmbiguous&) {
            break;
        }
    }
    out.lo = lo;
    out.hi = hi;
    out.rho = approx_rho(lo, hi);
    return out;
}

namespace {

Scalar big_phi_with(const Family& fam, const Scalar& delta, const Scalar& alpha, const RhoDelta& r) {
    if (r.plateau && (r.lo == 0 || r.lo == 1))
        return phi_integer_rho(fam, delta, r.lo.get_num().get_si(), alpha, alpha).value;
    if (r.plateau) return a_of(fam, delta, rational_target(r.lo, alpha)).value;
    // Off the searched plateaus rho_delta(alpha) is often a rational of large q; evaluating at
    // the simplest rational of the bracket keeps every symbol decidable.
    SeriesOptions so;
    so.closed_form = false;
    return phi(fam, delta, rational_target(simplest_between(r.lo, r.hi), alpha), alpha, so).value;
}

// phi_{delta, rho_delta(1), 1}(1^-), a lower bound for Phi_delta(1^-).
Scalar big_phi_left_of_one(const Family& fam, const Scalar& delta, const RhoDeltaOptions& opt) {
    RhoDelta r = rho_delta(fam, delta, Scalar(1), opt);
    if (r.plateau && (r.lo == 0 || r.lo == 1))
        return phi_integer_rho(fam, delta, r.lo.get_num().get_si(), Scalar(1), Scalar(1)).limit;
    if (r.plateau) return phi(fam, delta, rational_target(r.lo, Scalar(1)), Scalar(1)).limit;
    SeriesOptions so;
    so.closed_form = false;
    return phi(fam, delta, rational_target(simplest_between(r.lo, r.hi), Scalar(1)), Scalar(1), so).limit;
}

}  // namespace

Scalar big_phi(const Family& fam, const Scalar& delta, const Scalar& alpha, const RhoDeltaOptions& opt) {
    return big_phi_with(fam, delta, alpha, rho_delta(fam, delta, alpha, opt));
}

// ---------------------------------------------------------------- invert

InverseCertificate check_membership(const Family& fam, const Scalar& delta, const Scalar& a, long p, long q,
                                    const Scalar& alpha) {
    InverseCertificate c;
    c.p = p;
    c.q = q;
    c.rho = Scalar(p, q);
    c.alpha = alpha;
    Region r = region(fam, RotationTarget::rational(p, q, alpha));
    c.delta_check = r.delta_lo <= delta && delta <= r.delta_hi;
    c.a_check = c.delta_check && r.a_lo(delta) <= a && a <= r.a_hi(delta);
    c.containment = contains(r, delta, a);
    return c;
}

InverseCertificate invert(const Family& fam, const Scalar& delta, const Scalar& a, const InverseOptions& opt) {
    check_delta(fam, delta);
    if (a < Scalar(0) || Scalar(1) < a) throw OutOfDomain("a must lie in [0,1], got " + a.str());
    if (fixed_point_check(MapSpec::make(fam, delta, a)).region != FixedRegion::none)
        throw FixedPointRegion("(delta, a) lies in a fixed-point region; the rotation number is an integer");

    // Rationals whose whole alpha family was already ruled out.
    std::map<Rational, bool> rejected;
    auto certify = [&](const RhoDelta& r, const Scalar& hint) -> std::optional<InverseCertificate> {
        if (!r.plateau || r.lo <= 0 || r.lo >= 1 || rejected.count(r.lo)) return std::nullopt;
        long p = r.lo.get_num().get_si(), q = r.lo.get_den().get_si();
        InverseCertificate c = check_membership(fam, delta, a, p, q, hint);
        if (c.delta_check && c.a_check) return c;
        // The alpha-family for p/q is spanned by l/q and one point of each open cell.
        std::vector<Rational> reps;
        for (long j = 0; j <= 2 * q; ++j) reps.emplace_back(j, 2 * q);
        Rational h = hint.enclosure().mid();
        std::stable_sort(reps.begin(), reps.end(),
                         [&](const Rational& u, const Rational& v) { return abs(u - h) < abs(v - h); });
        for (const Rational& rep : reps) {
            c = check_membership(fam, delta, a, p, q, Scalar(rep));
            if (c.delta_check && c.a_check) return c;
        }
        rejected[r.lo] = true;
        return std::nullopt;
    };
    auto done = [](InverseCertificate c, int branch, const Rational& lo, const Rational& hi) {
        c.branch = branch;
        c.alpha_lo = lo;
        c.alpha_hi = hi;
        return c;
    };

    try {
        if (delta < Scalar(1) - fam.d) {
            RhoDelta r0 = rho_delta(fam, delta, Scalar(0), opt.rho);
            if (a <= big_phi_with(fam, delta, Scalar(0), r0))
                if (auto c = certify(r0, Scalar(0))) return done(*c, 1, 0, 0);
        }
        if (Scalar(1) - fam.lambda < delta && big_phi_left_of_one(fam, delta, opt.rho) <= a) {
            RhoDelta r1 = rho_delta(fam, delta, Scalar(1), opt.rho);
            if (auto c = certify(r1, Scalar(1))) return done(*c, 2, 1, 1);
        }

        // alpha_delta(a) = min { alpha : Phi_delta(alpha) >= a } by bisection on dyadics.
        Rational lo(0), hi(1);
        for (long it = 0; it < opt.max_bisections && Rational(hi - lo).get_d() > opt.alpha_tol; ++it) {
            Rational mid = (lo + hi) / 2;
            RhoDelta r = rho_delta(fam, delta, Scalar(mid), opt.rho);
            if (auto c = certify(r, Scalar(mid))) return done(*c, 3, lo, hi);
            if (a <= big_phi_with(fam, delta, Scalar(mid), r))
                hi = mid;
            else
                lo = mid;
        }
        for (const Rational& al : {simplest_between(lo, hi), hi}) {
            RhoDelta r = rho_delta(fam, delta, Scalar(al), opt.rho);
            if (auto c = certify(r, Scalar(al))) return done(*c, 3, lo, hi);
        }
        RhoDelta r = rho_delta(fam, delta, Scalar(hi), opt.rho);
        throw Inconclusive("no rational rotation number certified; rho in [" + to_string(r.lo) + ", " +
                           to_string(r.hi) + "], alpha in [" + to_string(lo) + ", " + to_string(hi) + "]");
    } catch (const BoundaryAmbiguous& e) {
        throw Inconclusive(std::string("bisection hit an undecidable comparison: ") + e.what());
    }
}

}  // namespace pcrot
