#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "pcrot/scalar.hpp"

namespace pcrot {

// Contraction rate and jump size shared by a whole parameter square.
struct Family {
    Scalar lambda;
    Scalar d;

    // Throws OutOfDomain unless 0 < lambda < 1 and 0 < d < 1 - lambda.
    static Family make(Scalar lambda, Scalar d);
    Scalar one_minus_lambda() const { return Scalar(1) - lambda; }
};

// F(x) = lambda x + delta + (1 - lambda) floor(x) + d theta_a({x}).
struct MapSpec {
    Scalar lambda, d, delta, a;

    static MapSpec make(Scalar lambda, Scalar d, Scalar delta, Scalar a);
    static MapSpec make(const Family& fam, Scalar delta, Scalar a);
    Family family() const { return {lambda, d}; }
};

struct Breakpoints {
    Scalar eta1;  // (1 - delta - d) / lambda
    Scalar eta2;  // (1 - delta) / lambda
};

enum class MapTag { M1, M2, M3, OutOfM };
enum class BranchForm { three_piece_low, two_piece, three_piece_high, none };

struct MapClass {
    MapTag tag = MapTag::OutOfM;
    BranchForm form = BranchForm::none;
};

std::string_view name(MapTag t);
std::string_view name(BranchForm f);

enum class FixedRegion { F1, F2, none };
std::string_view name(FixedRegion r);

struct FixedPointInfo {
    FixedRegion region = FixedRegion::none;
    std::optional<Scalar> x_star;
    bool ghost = false;
};

// 1 iff z >= threshold.
int theta(const Scalar& threshold, const Scalar& z);
// (1 - lambda) floor(z) + d theta_alpha({z}).
Scalar psi(const Family& fam, const Scalar& alpha, const Scalar& z);

Scalar lift_eval(const MapSpec& spec, const Scalar& x);
Scalar map_eval(const MapSpec& spec, const Scalar& x);

Breakpoints breakpoints(const MapSpec& spec);
// Points with delta outside (1 - lambda - d, 1) are tagged OutOfM rather than rejected.
std::pair<Breakpoints, MapClass> classify(const MapSpec& spec);
bool in_parameter_set(const MapSpec& spec);
FixedPointInfo fixed_point_check(const MapSpec& spec);

Scalar rotation_eval(const Scalar& rho, const Scalar& y);

}  // namespace pcrot
