#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcrot/core.hpp"
#include "pcrot/regions.hpp"
#include "pcrot/series.hpp"

namespace pcrot {

struct Orbit {
    // x_0 .. x_n
    std::vector<Scalar> points;
    // floor(F(x_k)) - floor(x_k) for k < n
    std::vector<int> windings;
};

Orbit iterate_orbit(const MapSpec& spec, const Scalar& x0, long n);

struct Cycle {
    // Orbit order: points[k+1] = f(points[k]).
    std::vector<Scalar> points;
    long p = 0, q = 0;
    // f^q fixes every point, checked exactly (or within the approx error).
    bool verified = false;
};

struct Gap {
    Scalar lo, hi;  // phi(y^-), phi(y)
    Scalar y;
    long k = 0;
    // Jump at {alpha + k rho} rather than at {k rho}.
    bool alpha_family = false;
};

struct CantorSample {
    std::vector<Scalar> y, x;
    std::vector<Gap> gaps;  // sorted by lo
    long depth = 0;
    // Total length of the gaps with k > depth.
    double unreported_gap_mass = 0;
};

struct Attractor {
    enum class Kind { periodic, cantor_sample };
    Kind kind = Kind::periodic;
    std::vector<Cycle> cycles;
    std::optional<CantorSample> sample;
};

struct AttractorOptions {
    long grid = 256;
    long depth = 40;
    SeriesOptions series;
};

// Requires (delta, a) strictly inside region(target); throws HypothesisViolated otherwise.
Attractor attractor(const MapSpec& spec, const RotationTarget& target, const AttractorOptions& opt = {});

struct SymbolCode {
    std::vector<int> symbols;
    // The two cut points; symbol = number of cut points <= x.
    std::vector<Scalar> partition;
    // Set when an undecidable comparison stopped the word early.
    bool truncated = false;
    std::string str() const;
};

// Cuts at (a, eta1) for M1, (a, a) for M2 and (eta2, a) for M3.
SymbolCode code(const MapSpec& spec, const Scalar& x0, long n);
// Cuts at alpha and 1 - rho.
SymbolCode rotation_code(const RotationTarget& target, const RhoAffine& y0, long n);
SymbolCode rotation_code(const RotationTarget& target, const Scalar& y0, long n);

// p(1..n_max) over the factors of a finite word. Throws InsufficientLength when
// the word is shorter than 4 (3 n_max + 1).
std::vector<long> complexity(const std::vector<int>& word, long n_max);
// Factors of the bi-infinite repetition of one period.
std::vector<long> complexity_periodic(const std::vector<int>& period, long n_max);

struct ResidualReport {
    // max |f(phi(y)) - phi(R_rho(y))| over the grid, and the certified error attached to it.
    double residual = 0;
    double bound = 0;
    bool exact = false;
    // Grid points where the branch of f at phi(y) was fixed through y versus alpha and 1 - rho
    // because the binary64 value sat too close to a cut.
    long symbolic_branches = 0;
    long points = 0;
};

ResidualReport conjugacy_residual(const MapSpec& spec, const RotationTarget& target, const std::vector<Scalar>& grid,
                                  const SeriesOptions& opt = {});

// inf { y in [0,1) : phi(y) >= x }. Exact for rational rho; for irrational rho an
// enclosure from bisection. Throws OutOfRange unless phi(0) <= x < phi(1^-).
Scalar generalized_inverse(const Family& fam, const Scalar& delta, const RotationTarget& target, const Scalar& x,
                           const SeriesOptions& opt = {});

}  // namespace pcrot
