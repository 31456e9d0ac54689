#include "pcrot/core.hpp"

#include "pcrot/errors.hpp"

namespace pcrot {

Family Family::make(Scalar lambda, Scalar d) {
    if (!(Scalar(0) < lambda && lambda < Scalar(1)))
        throw OutOfDomain("lambda must lie in (0,1), got " + lambda.str());
    if (!(Scalar(0) < d && d < Scalar(1) - lambda))
        throw OutOfDomain("d must lie in (0, 1-lambda), got " + d.str());
    return {std::move(lambda), std::move(d)};
}

MapSpec MapSpec::make(Scalar lambda, Scalar d, Scalar delta, Scalar a) {
    Family fam = Family::make(std::move(lambda), std::move(d));
    return make(fam, std::move(delta), std::move(a));
}

MapSpec MapSpec::make(const Family& fam, Scalar delta, Scalar a) {
    if (delta < Scalar(0) || Scalar(1) < delta)
        throw OutOfDomain("delta must lie in [0,1], got " + delta.str());
    if (a < Scalar(0) || Scalar(1) < a)
        throw OutOfDomain("a must lie in [0,1], got " + a.str());
    return {fam.lambda, fam.d, std::move(delta), std::move(a)};
}

std::string_view name(MapTag t) {
    switch (t) {
        case MapTag::M1: return "M1";
        case MapTag::M2: return "M2";
        case MapTag::M3: return "M3";
        case MapTag::OutOfM: return "OutOfM";
    }
    return "?";
}

std::string_view name(BranchForm f) {
    switch (f) {
        case BranchForm::three_piece_low: return "three_piece_low";
        case BranchForm::two_piece: return "two_piece";
        case BranchForm::three_piece_high: return "three_piece_high";
        case BranchForm::none: return "none";
    }
    return "?";
}

std::string_view name(FixedRegion r) {
    switch (r) {
        case FixedRegion::F1: return "F1";
        case FixedRegion::F2: return "F2";
        case FixedRegion::none: return "none";
    }
    return "?";
}

int theta(const Scalar& threshold, const Scalar& z) { return z >= threshold ? 1 : 0; }

Scalar psi(const Family& fam, const Scalar& alpha, const Scalar& z) {
    long fl = floor_of(z);
    Scalar r = fam.one_minus_lambda() * Scalar(fl);
    if (theta(alpha, z - Scalar(fl))) r += fam.d;
    return r;
}

Scalar lift_eval(const MapSpec& s, const Scalar& x) {
    long fl = floor_of(x);
    Scalar r = s.lambda * x + s.delta + (Scalar(1) - s.lambda) * Scalar(fl);
    if (theta(s.a, x - Scalar(fl))) r += s.d;
    return r;
}

Scalar map_eval(const MapSpec& s, const Scalar& x) { return frac(lift_eval(s, x)); }

Breakpoints breakpoints(const MapSpec& s) {
    return {(Scalar(1) - s.delta - s.d) / s.lambda, (Scalar(1) - s.delta) / s.lambda};
}

bool in_parameter_set(const MapSpec& s) {
    Scalar lo = Scalar(1) - s.lambda - s.d;
    return lo < s.delta && s.delta < Scalar(1);
}

std::pair<Breakpoints, MapClass> classify(const MapSpec& s) {
    Breakpoints bp = breakpoints(s);
    if (!in_parameter_set(s)) return {bp, {MapTag::OutOfM, BranchForm::none}};
    if (s.a < bp.eta1) return {bp, {MapTag::M1, BranchForm::three_piece_low}};
    if (s.a > bp.eta2) return {bp, {MapTag::M3, BranchForm::three_piece_high}};
    return {bp, {MapTag::M2, BranchForm::two_piece}};
}

FixedPointInfo fixed_point_check(const MapSpec& s) {
    FixedPointInfo info;
    Scalar oml = Scalar(1) - s.lambda;
    Scalar lo = oml - s.d;
    if (lo < s.delta && s.delta <= oml) {
        Scalar xs = s.delta / oml;
        if (s.a >= xs) {
            info.region = FixedRegion::F1;
            info.ghost = s.a == xs || xs == Scalar(1);
            info.x_star = std::move(xs);
            return info;
        }
    }
    if (Scalar(1) - s.d <= s.delta && s.delta < Scalar(1)) {
        Scalar xs = (s.delta + s.d - Scalar(1)) / oml;
        if (s.a <= xs) {
            info.region = FixedRegion::F2;
            info.x_star = std::move(xs);
        }
    }
    return info;
}

Scalar rotation_eval(const Scalar& rho, const Scalar& y) { return frac(y + rho); }

}  // namespace pcrot
