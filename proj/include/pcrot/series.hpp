#pragma once

#include <optional>

#include "pcrot/core.hpp"
#include "pcrot/scalar.hpp"

namespace pcrot {

// The real number c + m * rho, with c known up to an interval. Keeping the
// integer coefficient of rho explicit lets equalities that hold symbolically
// (alpha = {k rho}, orbit points {j rho}) be decided exactly.
struct RhoAffine {
    Interval c;
    long m = 0;

    static RhoAffine constant(const Scalar& x) { return {x.enclosure(), 0}; }
    RhoAffine operator-() const { return {{-c.hi, -c.lo}, -m}; }
    friend RhoAffine operator+(const RhoAffine& a, const RhoAffine& b) { return {a.c + b.c, a.m + b.m}; }
    friend RhoAffine operator-(const RhoAffine& a, const RhoAffine& b) { return {a.c - b.c, a.m - b.m}; }
    friend RhoAffine operator+(const RhoAffine& a, long n) { return {a.c + Interval::point(n), a.m}; }
};

enum class RhoKind { rational, irrational, approximate };

class RotationTarget {
public:
    // rho = p/q reduced, 0 < p < q.
    static RotationTarget rational(long p, long q, const Scalar& alpha);
    // rho declared irrational and known to lie in box; alpha carries no declared resonance.
    static RotationTarget irrational(const Interval& box, const Scalar& alpha);
    // rho declared irrational, alpha = {k rho}.
    static RotationTarget resonant(const Interval& box, long k);
    // rho known only through an approximation; no symbolic facts assumed.
    static RotationTarget approximate(const Scalar& rho, const Scalar& alpha);

    RhoKind kind() const { return kind_; }
    bool is_rational() const { return kind_ == RhoKind::rational; }
    long p() const { return p_; }
    long q() const { return q_; }
    const Interval& rho_box() const { return box_; }
    Scalar rho() const;
    Scalar alpha() const;
    const RhoAffine& alpha_form() const { return alpha_; }
    // k with alpha = {k rho}, k != 0, for irrational rho given symbolically.
    std::optional<long> resonance() const;
    // False when rho is irrational or approximate and alpha is not symbolic, so a
    // resonance k rho in Z + alpha can neither be confirmed nor excluded.
    bool resonance_decidable() const;

    RotationTarget with_alpha(const Scalar& alpha) const;

    // The orbit point {j rho} as a symbolic affine form.
    RhoAffine orbit_point(long j) const;
    // Sign of c + m rho; throws BoundaryAmbiguous when the enclosure cannot decide.
    int sign(const RhoAffine& x) const;
    long floor_of(const RhoAffine& x) const;
    Scalar value(const RhoAffine& x) const;

private:
    RhoKind kind_ = RhoKind::rational;
    long p_ = 0, q_ = 1;
    Interval box_;
    RhoAffine alpha_;
};

// For delta_of the limit is delta(rho^-, alpha); for a_of it is a(delta, rho^+, alpha);
// for phi it is phi(y^-).
struct SidedValue {
    Scalar value;
    Scalar limit;
    // Set when a possible resonance could not be decided and the gap was taken as 0.
    bool caveat = false;
};

struct SeriesOptions {
    double tol = 1e-30;
    long n_max = 4096;
    // Rational rho uses the exact periodic sum unless this is cleared.
    bool closed_form = true;
};

double tail_bound(long n, double lambda, double d, double rho, double y_abs);
// Smallest N with tail_bound(N) <= tol; throws PrecisionExhausted past n_max.
long truncation_level(const Family& fam, double rho, double y_abs, const SeriesOptions& opt);

// sum_{k>=1} lambda^k psi_beta(y + s k rho), s = +1 or -1.
Scalar psi_series(const Family& fam, const RotationTarget& t, const RhoAffine& y, int s,
                  const RhoAffine& beta, const SeriesOptions& opt = {});

SidedValue delta_of(const Family& fam, const RotationTarget& t, const SeriesOptions& opt = {});
SidedValue a_of(const Family& fam, const Scalar& delta, const RotationTarget& t,
                const SeriesOptions& opt = {});
SidedValue phi(const Family& fam, const Scalar& delta, const RotationTarget& t, const RhoAffine& y,
               const SeriesOptions& opt = {});
SidedValue phi(const Family& fam, const Scalar& delta, const RotationTarget& t, const Scalar& y,
               const SeriesOptions& opt = {});

// delta(p/q, alpha) - delta(p/q^-, alpha) and a(., p/q, alpha) - a(., p/q^+, alpha).
Scalar rational_delta_gap(const Family& fam, const RotationTarget& t);
Scalar rational_a_gap(const Family& fam, const RotationTarget& t);

}  // namespace pcrot
