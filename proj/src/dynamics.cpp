#include "pcrot/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string_view>
#include <unordered_set>

#include "pcrot/errors.hpp"

namespace pcrot {

namespace {

// Approx seeds that only might lie outside [0,1) are let through.
bool surely_outside_unit(const Scalar& x) {
    try {
        return x < Scalar(0) || !(x < Scalar(1));
    } catch (const BoundaryAmbiguous&) {
        return false;
    }
}

}  // namespace

Orbit iterate_orbit(const MapSpec& spec, const Scalar& x0, long n) {
    if (surely_outside_unit(x0)) throw OutOfDomain("orbit seed must lie in [0,1)");
    Orbit o;
    o.points.reserve(n + 1);
    o.windings.reserve(n);
    o.points.push_back(x0);
    Scalar x = x0;
    for (long k = 0; k < n; ++k) {
        Scalar lift = lift_eval(spec, x);
        long w = floor_of(lift);
        o.windings.push_back(static_cast<int>(w));
        x = lift - Scalar(w);
        o.points.push_back(x);
    }
    return o;
}

namespace {

RhoAffine reduced(const RotationTarget& t, const RhoAffine& y) { return y + (-t.floor_of(y)); }

RhoAffine rho_form() { return RhoAffine{Interval::point(0), 1}; }

// Conjugacy hypothesis: rational regions must contain the point strictly. For
// irrational rho the region has no interior, so only "not certainly outside" is checked.
void require_inside(const MapSpec& spec, const RotationTarget& t, const SeriesOptions& opt) {
    Region r = region(spec.family(), t, opt);
    if (t.is_rational()) {
        Containment c = contains(r, spec.delta, spec.a);
        if (c != Containment::inside_strict)
            throw HypothesisViolated(std::string("(delta, a) is ") + std::string(name(c)) + " for this target");
        return;
    }
    try {
        if (contains(r, spec.delta, spec.a) == Containment::outside)
            throw HypothesisViolated("(delta, a) lies outside the region of this target");
    } catch (const BoundaryAmbiguous&) {
    }
}

Cycle cycle_through(const MapSpec& spec, const RotationTarget& t, const Rational& y0, const SeriesOptions& opt) {
    Family fam = spec.family();
    long p = t.p(), q = t.q();
    Cycle c;
    c.p = p;
    c.q = q;
    for (long n = 0; n < q; ++n) {
        Rational y = frac(Rational(y0 + Rational(n * p, q)));
        c.points.push_back(phi(fam, spec.delta, t, Scalar(y), opt).value);
    }
    c.verified = true;
    for (const Scalar& x0 : c.points) {
        Scalar x = x0;
        for (long n = 0; n < q; ++n) x = map_eval(spec, x);
        try {
            if (!(x == x0)) c.verified = false;
        } catch (const BoundaryAmbiguous&) {
            c.verified = may_equal(x, x0);
        }
    }
    return c;
}

}  // namespace

Attractor attractor(const MapSpec& spec, const RotationTarget& t, const AttractorOptions& opt) {
    require_inside(spec, t, opt.series);
    Family fam = spec.family();
    Attractor out;
    if (t.is_rational()) {
        out.kind = Attractor::Kind::periodic;
        long q = t.q();
        Rational alpha = t.alpha().q();
        Rational alpha0 = alpha - Rational(floor_of(Rational(alpha * q)), q);
        out.cycles.push_back(cycle_through(spec, t, 0, opt.series));
        if (alpha0 != 0) out.cycles.push_back(cycle_through(spec, t, alpha0, opt.series));
        return out;
    }

    out.kind = Attractor::Kind::cantor_sample;
    CantorSample s;
    s.depth = opt.depth;
    for (long j = 0; j < opt.grid; ++j) {
        Scalar y(j, opt.grid);
        s.y.push_back(y);
        s.x.push_back(phi(fam, spec.delta, t, y, opt.series).value);
    }
    for (long k = 1; k <= opt.depth; ++k) {
        for (bool fam_alpha : {false, true}) {
            RhoAffine y = fam_alpha ? RhoAffine{t.alpha_form().c, t.alpha_form().m + k} : RhoAffine{Interval::point(0), k};
            y = reduced(t, y);
            SidedValue v = phi(fam, spec.delta, t, y, opt.series);
            s.gaps.push_back({v.limit, v.value, t.value(y), k, fam_alpha});
        }
    }
    std::stable_sort(s.gaps.begin(), s.gaps.end(),
                     [](const Gap& u, const Gap& v) { return u.lo.value() < v.lo.value(); });
    s.unreported_gap_mass = std::pow(spec.lambda.value(), static_cast<double>(opt.depth)) * (1 + 1e-12);
    out.sample = std::move(s);
    return out;
}

std::string SymbolCode::str() const {
    std::string w;
    w.reserve(symbols.size() + 1);
    for (int s : symbols) w.push_back(static_cast<char>('0' + s));
    if (truncated) w.push_back('?');
    return w;
}

SymbolCode code(const MapSpec& spec, const Scalar& x0, long n) {
    if (surely_outside_unit(x0)) throw OutOfDomain("code seed must lie in [0,1)");
    auto [bp, cls] = classify(spec);
    SymbolCode c;
    switch (cls.tag) {
        case MapTag::M1: c.partition = {spec.a, bp.eta1}; break;
        case MapTag::M2: c.partition = {spec.a, spec.a}; break;
        case MapTag::M3: c.partition = {bp.eta2, spec.a}; break;
        case MapTag::OutOfM: throw OutOfDomain("coding needs a map in M");
    }
    c.symbols.reserve(n + 1);
    Scalar x = x0;
    try {
        for (long k = 0; k <= n; ++k) {
            c.symbols.push_back((c.partition[0] <= x) + (c.partition[1] <= x));
            if (k < n) x = map_eval(spec, x);
        }
    } catch (const BoundaryAmbiguous&) {
        c.truncated = true;
    }
    return c;
}

SymbolCode rotation_code(const RotationTarget& t, const RhoAffine& y0, long n) {
    SymbolCode c;
    RhoAffine cut_alpha = t.alpha_form();
    RhoAffine cut_rho = RhoAffine{Interval::point(1), 0} - rho_form();
    c.partition = {t.value(cut_alpha), t.value(cut_rho)};
    c.symbols.reserve(n + 1);
    RhoAffine y = y0;
    try {
        y = reduced(t, y);
        for (long k = 0; k <= n; ++k) {
            c.symbols.push_back((t.sign(y - cut_alpha) >= 0) + (t.sign(y - cut_rho) >= 0));
            y = reduced(t, y + rho_form());
        }
    } catch (const BoundaryAmbiguous&) {
        c.truncated = true;
    }
    return c;
}

SymbolCode rotation_code(const RotationTarget& t, const Scalar& y0, long n) {
    return rotation_code(t, RhoAffine::constant(y0), n);
}

namespace {

std::vector<long> count_factors(std::string_view text, long starts, long n_max) {
    std::vector<long> p;
    for (long n = 1; n <= n_max; ++n) {
        std::unordered_set<std::string_view> seen;
        for (long i = 0; i < starts && i + n <= static_cast<long>(text.size()); ++i) seen.insert(text.substr(i, n));
        p.push_back(static_cast<long>(seen.size()));
    }
    return p;
}

std::string as_text(const std::vector<int>& w) {
    std::string s;
    s.reserve(w.size());
    for (int c : w) s.push_back(static_cast<char>('0' + c));
    return s;
}

}  // namespace

std::vector<long> complexity(const std::vector<int>& word, long n_max) {
    if (n_max < 1) throw OutOfDomain("n_max must be positive");
    long need = 4 * (3 * n_max + 1);
    if (static_cast<long>(word.size()) < need)
        throw InsufficientLength("word of length " + std::to_string(word.size()) + " is shorter than " +
                                 std::to_string(need));
    std::string text = as_text(word);
    return count_factors(text, static_cast<long>(text.size()), n_max);
}

std::vector<long> complexity_periodic(const std::vector<int>& period, long n_max) {
    if (period.empty()) throw InsufficientLength("empty period");
    if (n_max < 1) throw OutOfDomain("n_max must be positive");
    std::string one = as_text(period), text;
    long len = static_cast<long>(one.size());
    while (static_cast<long>(text.size()) < len + n_max) text += one;
    return count_factors(text, len, n_max);
}

ResidualReport conjugacy_residual(const MapSpec& spec, const RotationTarget& t, const std::vector<Scalar>& grid,
                                  const SeriesOptions& opt) {
    require_inside(spec, t, opt);
    Family fam = spec.family();
    ResidualReport rep;
    rep.points = static_cast<long>(grid.size());
    bool all_exact = t.is_rational() && spec.delta.is_exact() && spec.a.is_exact() && spec.lambda.is_exact() &&
                     spec.d.is_exact();
    RhoAffine cut_alpha = t.alpha_form();
    RhoAffine cut_rho = RhoAffine{Interval::point(1), 0} - rho_form();
    Scalar worst(0);
    for (const Scalar& yv : grid) {
        if (surely_outside_unit(yv)) throw OutOfDomain("grid points must lie in [0,1)");
        RhoAffine y = RhoAffine::constant(yv);
        Scalar x = phi(fam, spec.delta, t, y, opt).value;
        Scalar rhs = phi(fam, spec.delta, t, reduced(t, y + rho_form()), opt).value;
        Scalar lhs;
        try {
            lhs = map_eval(spec, x);
        } catch (const BoundaryAmbiguous&) {
            // phi is increasing, so x >= a iff y >= alpha, and x >= eta iff y >= 1 - rho.
            ++rep.symbolic_branches;
            bool above_a = t.sign(y - cut_alpha) >= 0;
            bool wraps = t.sign(y - cut_rho) >= 0;
            lhs = spec.lambda * x + spec.delta + (above_a ? spec.d : Scalar(0)) - Scalar(wraps ? 1 : 0);
        }
        Scalar diff = lhs - rhs;
        rep.residual = std::max(rep.residual, std::abs(diff.value()));
        rep.bound = std::max(rep.bound, diff.err());
        if (all_exact) worst = max(worst, abs(diff));
    }
    rep.exact = all_exact;
    if (all_exact) rep.residual = worst.value();
    return rep;
}

Scalar generalized_inverse(const Family& fam, const Scalar& delta, const RotationTarget& t, const Scalar& x,
                           const SeriesOptions& opt) {
    Scalar lo_val = phi(fam, delta, t, Scalar(0), opt).value;
    Scalar hi_lim = phi(fam, delta, t, Scalar(1), opt).limit;
    // For rational rho the last step of phi already takes the value phi(1^-).
    bool outside;
    try {
        outside = x < lo_val || (t.is_rational() ? hi_lim < x : !(x < hi_lim));
    } catch (const BoundaryAmbiguous&) {
        outside = false;
    }
    if (outside) throw OutOfRange("x must lie in [phi(0), phi(1^-))");

    if (t.is_rational()) {
        // phi is a right-continuous step function with jumps at {i/q} and {alpha + i/q}.
        long q = t.q();
        Rational alpha = t.alpha().q();
        std::set<Rational> jumps;
        for (long i = 0; i < q; ++i) {
            jumps.insert(Rational(i, q));
            jumps.insert(frac(Rational(alpha + Rational(i, q))));
        }
        for (const Rational& j : jumps)
            if (x <= phi(fam, delta, t, Scalar(j), opt).value) return Scalar(j);
        throw OutOfRange("no jump point reaches x");
    }

    try {
        if (x <= lo_val) return Scalar(0);
    } catch (const BoundaryAmbiguous&) {
    }
    Rational lo(0), hi(1);
    for (int it = 0; it < 64; ++it) {
        Rational mid = (lo + hi) / 2;
        try {
            if (x <= phi(fam, delta, t, Scalar(mid), opt).value)
                hi = mid;
            else
                lo = mid;
        } catch (const BoundaryAmbiguous&) {
            break;
        }
    }
    Rational mid = (lo + hi) / 2;
    double v = mid.get_d();
    double e = Rational(abs(Rational(v) - mid) + (hi - lo) / 2).get_d() * (1 + 1e-12) + 1e-300;
    return Scalar::approx(v, e);
}

}  // namespace pcrot
