#include "pcrot/regions.hpp"

#include <algorithm>
#include <sstream>

#include "pcrot/errors.hpp"

namespace pcrot {

std::string_view name(Inclusion m) { return m == Inclusion::closed ? "closed" : "half_open"; }

std::string_view name(Containment c) {
    switch (c) {
        case Containment::inside_strict: return "inside_strict";
        case Containment::inside_boundary: return "inside_boundary";
        case Containment::outside: return "outside";
    }
    return "?";
}

std::string_view name(Strength s) { return s == Strength::all_points ? "all_points" : "exists_point"; }

Region region(const Family& fam, const RotationTarget& target, const SeriesOptions& opt) {
    Region r;
    r.fam = fam;
    r.target = target;
    SidedValue dv = delta_of(fam, target, opt);
    r.delta_lo = dv.limit;
    r.delta_hi = dv.value;
    // a(delta, rho, alpha) - delta/(1-lambda) does not depend on delta.
    SidedValue av = a_of(fam, Scalar(0), target, opt);
    r.a_offset_lo = av.limit;
    r.a_offset_hi = av.value;
    r.mode = target.is_rational() ? Inclusion::half_open : Inclusion::closed;
    r.caveat = dv.caveat || av.caveat;
    if (!target.is_rational()) {
        auto k = target.resonance();
        r.flat_delta = !(k && *k < 0);
        r.flat_a = !(k && *k > 0);
    }
    return r;
}

std::vector<AlphaRegion> enumerate_regions(const Family& fam, long p, long q) {
    std::vector<AlphaRegion> out;
    out.reserve(2 * q + 1);
    for (long j = 0; j <= 2 * q; ++j) {
        Scalar alpha(j, 2 * q);
        out.push_back({alpha, region(fam, RotationTarget::rational(p, q, alpha))});
    }
    return out;
}

std::optional<Region> intersect(const Region& x, const Region& y) {
    Region r = x;
    r.delta_lo = max(x.delta_lo, y.delta_lo);
    r.delta_hi = min(x.delta_hi, y.delta_hi);
    r.a_offset_lo = max(x.a_offset_lo, y.a_offset_lo);
    r.a_offset_hi = min(x.a_offset_hi, y.a_offset_hi);
    if (r.delta_hi < r.delta_lo || r.a_offset_hi < r.a_offset_lo) return std::nullopt;
    return r;
}

bool same_set(const Region& x, const Region& y) {
    return x.delta_lo == y.delta_lo && x.delta_hi == y.delta_hi && x.a_offset_lo == y.a_offset_lo &&
           x.a_offset_hi == y.a_offset_hi;
}

Containment contains(const Region& r, const Scalar& delta, const Scalar& a) {
    if (a < Scalar(0) || Scalar(1) < a) return Containment::outside;
    if (delta < r.delta_lo || r.delta_hi < delta) return Containment::outside;
    Scalar lo = r.a_lo(delta), hi = r.a_hi(delta);
    if (a < lo || hi < a) return Containment::outside;
    if (r.mode == Inclusion::half_open && (delta == r.delta_hi || a == lo)) return Containment::inside_boundary;
    return Containment::inside_strict;
}

AlphaClass classify_alpha(const RotationTarget& target) {
    // alpha - (1 - rho)
    RhoAffine diff = target.alpha_form() + RhoAffine{Interval::point(-1), 1};
    int s = target.sign(diff);
    MapTag tag = s < 0 ? MapTag::M1 : s == 0 ? MapTag::M2 : MapTag::M3;
    return {tag, target.is_rational() ? Strength::exists_point : Strength::all_points};
}

InteriorPoint interior_point(const Region& r) {
    InteriorPoint pt;
    pt.delta = (r.delta_lo + r.delta_hi) / Scalar(2);
    Scalar lo = r.a_lo(pt.delta), hi = r.a_hi(pt.delta);
    Scalar cut_lo(0), cut_hi(1);
    const Family& fam = r.fam;
    Scalar eta1 = (Scalar(1) - pt.delta - fam.d) / fam.lambda;
    Scalar eta2 = (Scalar(1) - pt.delta) / fam.lambda;
    switch (classify_alpha(r.target).tag) {
        case MapTag::M1: cut_hi = min(cut_hi, eta1); break;
        case MapTag::M2: cut_lo = max(cut_lo, eta1); cut_hi = min(cut_hi, eta2); break;
        case MapTag::M3: cut_lo = max(cut_lo, eta2); break;
        case MapTag::OutOfM: break;
    }
    // Irrational regions already sit inside the class window.
    if (!r.target.is_rational()) {
        pt.a = (lo + hi) / Scalar(2);
        return pt;
    }
    if (lo < cut_lo) { lo = cut_lo; pt.clipped = true; }
    if (cut_hi < hi) { hi = cut_hi; pt.clipped = true; }
    if (hi < lo) throw InfeasibleGoal("region misses the expected map class at the delta midpoint");
    pt.a = (lo + hi) / Scalar(2);
    return pt;
}

long complexity_offset(long k) {
    if (k <= -2) return -k;
    if (k <= 0) return 1;
    return k + 1;
}

SynthesisGoal SynthesisGoal::orbit_count(long p, long q, int orbits, std::optional<Scalar> alpha) {
    SynthesisGoal g;
    g.kind = Kind::orbit_count;
    g.p = p;
    g.q = q;
    g.orbits = orbits;
    g.alpha = std::move(alpha);
    return g;
}

SynthesisGoal SynthesisGoal::complexity_generic(const Interval& rho_box, std::optional<Scalar> alpha) {
    SynthesisGoal g;
    g.kind = Kind::complexity_generic;
    g.is_rational = false;
    g.rho_box = rho_box;
    g.alpha = std::move(alpha);
    return g;
}

SynthesisGoal SynthesisGoal::complexity_resonant(const Interval& rho_box, long k) {
    SynthesisGoal g;
    g.kind = Kind::complexity_resonant;
    g.is_rational = false;
    g.rho_box = rho_box;
    g.k = k;
    return g;
}

SynthesisGoal SynthesisGoal::map_type(long p, long q, MapTag tag) {
    SynthesisGoal g;
    g.kind = Kind::map_type;
    g.p = p;
    g.q = q;
    g.tag = tag;
    return g;
}

namespace {

bool on_lattice(const Scalar& alpha, long q) {
    Scalar s = alpha * Scalar(q);
    return s.is_exact() && s.q().get_den() == 1;
}

RotationTarget target_for(const SynthesisGoal& g) {
    using K = SynthesisGoal::Kind;
    switch (g.kind) {
        case K::orbit_count: {
            if (!g.is_rational) throw InfeasibleGoal("orbit counts need a rational rotation number");
            if (g.orbits != 1 && g.orbits != 2) throw InfeasibleGoal("attractors carry one or two cycles");
            Scalar alpha = g.alpha ? *g.alpha : g.orbits == 1 ? Scalar(0) : Scalar(1, 2 * g.q);
            if (!alpha.is_exact()) throw InfeasibleGoal("orbit-count goals need an exact alpha");
            if ((g.orbits == 1) != on_lattice(alpha, g.q))
                throw InfeasibleGoal(g.orbits == 1 ? "one cycle needs alpha in {i/q}"
                                                   : "two cycles need alpha outside {i/q}");
            return RotationTarget::rational(g.p, g.q, alpha);
        }
        case K::complexity_generic: {
            if (g.is_rational) throw InfeasibleGoal("complexity goals need an irrational rotation number");
            Scalar alpha = g.alpha ? *g.alpha : Scalar(1, 4);
            // A rational alpha strictly inside (0,1) is never {k rho} for irrational rho.
            if (!alpha.is_exact() || !(Scalar(0) < alpha && alpha < Scalar(1)))
                throw InfeasibleGoal("generic complexity needs an exact alpha in (0,1)");
            return RotationTarget::irrational(g.rho_box, alpha);
        }
        case K::complexity_resonant:
            if (g.is_rational) throw InfeasibleGoal("complexity goals need an irrational rotation number");
            if (g.k == 0) throw InfeasibleGoal("resonance index must be nonzero");
            return RotationTarget::resonant(g.rho_box, g.k);
        case K::map_type: {
            if (!g.is_rational) throw InfeasibleGoal("map-type goals are synthesized at rational rho");
            Scalar rho(g.p, g.q), one(1);
            Scalar alpha = g.tag == MapTag::M1   ? (one - rho) / Scalar(2)
                           : g.tag == MapTag::M2 ? one - rho
                           : g.tag == MapTag::M3 ? one - rho / Scalar(2)
                                                 : throw InfeasibleGoal("OutOfM is not a synthesis goal");
            return RotationTarget::rational(g.p, g.q, alpha);
        }
    }
    throw InfeasibleGoal("unknown goal");
}

}  // namespace

std::pair<MapSpec, SynthesisCertificate> synthesize(const Family& fam, const SynthesisGoal& goal,
                                                    const SeriesOptions& opt) {
    RotationTarget t = target_for(goal);
    SynthesisCertificate cert;
    cert.target = t;
    cert.region = region(fam, t, opt);
    cert.region.mode = t.is_rational() ? Inclusion::half_open : Inclusion::closed;
    cert.expected_class = classify_alpha(t);
    InteriorPoint pt = interior_point(cert.region);
    cert.clipped = pt.clipped;

    std::ostringstream os;
    if (t.is_rational()) {
        cert.period = t.q();
        cert.cycles = on_lattice(t.alpha(), t.q()) ? 1 : 2;
        os << "rho=" << t.p() << "/" << t.q() << ": attractor of " << cert.cycles << " cycle"
           << (cert.cycles == 2 ? "s" : "") << " of period " << t.q();
    } else if (auto k = t.resonance()) {
        cert.complexity_b = complexity_offset(*k);
        os << "irrational rho, alpha={" << *k << " rho}: p(n)=n+" << cert.complexity_b << " for n>="
           << std::max(1L, cert.complexity_b - 1);
    } else {
        cert.generic_complexity = true;
        os << "irrational rho, generic alpha: p(n)=2n+1";
    }
    os << "; expected class " << name(cert.expected_class.tag);
    cert.summary = os.str();

    MapSpec spec = MapSpec::make(fam, pt.delta, pt.a);
    if (t.is_rational() && contains(cert.region, spec.delta, spec.a) != Containment::inside_strict)
        throw InfeasibleGoal("interior point fell on the region boundary");
    return {spec, cert};
}

}  // namespace pcrot
