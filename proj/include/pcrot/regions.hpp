#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcrot/core.hpp"
#include "pcrot/series.hpp"

namespace pcrot {

// closed: delta in [lo, hi], a in [a_lo, a_hi]. half_open additionally drops
// delta = hi and a = a_lo, which is what the conjugacy statements need.
enum class Inclusion { closed, half_open };
std::string_view name(Inclusion m);

// The parallelogram of (delta, a) giving rotation number rho with coding
// parameter alpha. At a given delta the admissible a are
// [delta/(1-lambda) + a_offset_lo, delta/(1-lambda) + a_offset_hi].
struct Region {
    Family fam;
    RotationTarget target;
    Scalar delta_lo, delta_hi;
    Scalar a_offset_lo, a_offset_hi;
    Inclusion mode = Inclusion::closed;
    // Structurally zero widths (irrational rho); the approx difference only bounds 0.
    bool flat_delta = false, flat_a = false;
    // Resonance undecidable for an approximate rho; widths were taken as 0.
    bool caveat = false;

    Scalar a_lo(const Scalar& delta) const { return delta / fam.one_minus_lambda() + a_offset_lo; }
    Scalar a_hi(const Scalar& delta) const { return delta / fam.one_minus_lambda() + a_offset_hi; }
    Scalar a_width() const { return a_offset_hi - a_offset_lo; }
    Scalar delta_width() const { return delta_hi - delta_lo; }
};

// Half-open for rational rho, closed otherwise.
Region region(const Family& fam, const RotationTarget& target, const SeriesOptions& opt = {});

struct AlphaRegion {
    Scalar alpha;
    Region region;
};

// The 2q+1 regions for rho = p/q: alpha = l/q and alpha = (2l+1)/(2q), sorted by alpha.
std::vector<AlphaRegion> enumerate_regions(const Family& fam, long p, long q);

// Same delta window and same a offsets (the a slope is shared by construction).
std::optional<Region> intersect(const Region& x, const Region& y);
bool same_set(const Region& x, const Region& y);

enum class Containment { inside_strict, inside_boundary, outside };
std::string_view name(Containment c);

// Also requires a in [0,1]. Approx inputs throw BoundaryAmbiguous near an edge.
Containment contains(const Region& r, const Scalar& delta, const Scalar& a);

struct InteriorPoint {
    Scalar delta, a;
    bool clipped = false;
};

// Midpoint in delta, then the midpoint of the a-interval cut to [0,1] and to the
// a-window of the class that classify_alpha predicts.
InteriorPoint interior_point(const Region& r);

enum class Strength { all_points, exists_point };
std::string_view name(Strength s);

struct AlphaClass {
    MapTag tag;
    Strength strength;
};

// M1 for alpha < 1 - rho, M2 at equality, M3 above.
AlphaClass classify_alpha(const RotationTarget& target);

struct SynthesisGoal {
    enum class Kind { orbit_count, complexity_generic, complexity_resonant, map_type };
    Kind kind = Kind::orbit_count;
    // Rational rho (p/q) or an irrational enclosure; is_rational selects.
    bool is_rational = true;
    long p = 0, q = 1;
    Interval rho_box;
    int orbits = 1;
    long k = 0;
    MapTag tag = MapTag::M1;
    // Overrides the default alpha for the goal; checked for consistency.
    std::optional<Scalar> alpha;

    static SynthesisGoal orbit_count(long p, long q, int orbits, std::optional<Scalar> alpha = {});
    static SynthesisGoal complexity_generic(const Interval& rho_box, std::optional<Scalar> alpha = {});
    static SynthesisGoal complexity_resonant(const Interval& rho_box, long k);
    static SynthesisGoal map_type(long p, long q, MapTag tag);
};

struct SynthesisCertificate {
    RotationTarget target;
    Region region;
    AlphaClass expected_class;
    // Rational rho: number of q-cycles in the attractor.
    int cycles = 0;
    long period = 0;
    // Irrational rho: p(n) = 2n+1 when generic, else p(n) = n + complexity_b for n >= max(1, b-1).
    bool generic_complexity = false;
    long complexity_b = 0;
    // The a-interval was cut back to [0,1].
    bool clipped = false;
    std::string summary;
};

std::pair<MapSpec, SynthesisCertificate> synthesize(const Family& fam, const SynthesisGoal& goal,
                                                    const SeriesOptions& opt = {});

// b of the n + b complexity law for a declared resonance alpha = {k rho}.
long complexity_offset(long k);

}  // namespace pcrot
