#pragma once

#include <optional>
#include <vector>

#include "pcrot/core.hpp"
#include "pcrot/regions.hpp"
#include "pcrot/series.hpp"

namespace pcrot {

struct RotationOptions {
    long n_max = 10000;
    // Return-distance threshold of the binary64 cycle search.
    double eps = 1e-12;
    long q_cap = 1000;
    // Throw Inconclusive when no cycle was found and the bracket is wider than this.
    double bracket_tol = 1.0;
};

struct RotationEstimate {
    Scalar lower, upper;
    std::optional<Rational> exact;
    // Total winding p and period q of the detected cycle.
    long p = 0, q = 0;
    // The cycle was re-derived and checked in exact arithmetic.
    bool confirmed = false;
    std::vector<Scalar> cycle;
    long iterations = 0;
};

// Orbit of 0 under the lift. Points of F1 give 0 and points of F2 give 1 without iterating.
RotationEstimate rotation_number(const MapSpec& spec, const RotationOptions& opt = {});

struct RhoDeltaOptions {
    // Largest denominator tried by the plateau search.
    long q_cap = 64;
    // Width at which the bracket refinement stops when no plateau is found.
    double tol = 1e-13;
};

struct RhoDelta {
    // rho_delta(alpha) lies in [lo, hi]; lo == hi when known exactly.
    Rational lo, hi;
    bool plateau = false;
    // Exact value when plateau is set, otherwise an approx midpoint.
    Scalar rho;
};

// min { rho in [0,1] : delta(rho, alpha) >= delta }.
RhoDelta rho_delta(const Family& fam, const Scalar& delta, const Scalar& alpha, const RhoDeltaOptions& opt = {});

// phi_{delta, rho_delta(alpha), alpha}(alpha).
Scalar big_phi(const Family& fam, const Scalar& delta, const Scalar& alpha, const RhoDeltaOptions& opt = {});

// phi_{delta, r, alpha} and its left limit at y for the integer rotations r = 0, 1.
SidedValue phi_integer_rho(const Family& fam, const Scalar& delta, long r, const Scalar& alpha, const Scalar& y);

struct InverseOptions {
    RhoDeltaOptions rho;
    // Width of the final alpha bracket.
    double alpha_tol = 1e-12;
    long max_bisections = 80;
};

struct InverseCertificate {
    Scalar rho, alpha;
    long p = 0, q = 0;
    bool delta_check = false;
    bool a_check = false;
    Containment containment = Containment::outside;
    // Which branch of the construction produced alpha: 1 (alpha = 0), 2 (alpha = 1), 3 (bisection).
    int branch = 0;
    Rational alpha_lo, alpha_hi;
};

// Throws FixedPointRegion on F1/F2 inputs, OutOfDomain outside the parameter set and
// Inconclusive when no rational rotation number could be certified.
InverseCertificate invert(const Family& fam, const Scalar& delta, const Scalar& a, const InverseOptions& opt = {});

// Closed-region membership checks of (delta, a) against region(p/q, alpha).
InverseCertificate check_membership(const Family& fam, const Scalar& delta, const Scalar& a, long p, long q,
                                    const Scalar& alpha);

// The rational with the smallest denominator in [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace pcrot
