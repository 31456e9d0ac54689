#include "doctest.h"

#include <numeric>
#include <random>

#include "pcrot/errors.hpp"
#include "pcrot/inverse.hpp"

using namespace pcrot;

namespace {
Scalar S(long n, long d = 1) { return Scalar(n, d); }
Scalar P(const char* s) { return Scalar::parse(s); }
Family base_family() { return Family::make(P("0.7"), P("0.2")); }
Family half() { return Family::make(S(1, 2), S(1, 4)); }
}  // namespace

TEST_CASE("simplest rational in an interval") {
    CHECK(simplest_between(Rational(3, 10), Rational(2, 5)) == Rational(1, 3));
    CHECK(simplest_between(Rational(1, 2), Rational(1, 2)) == Rational(1, 2));
    CHECK(simplest_between(Rational(0), Rational(1, 7)) == Rational(0));
    CHECK(simplest_between(Rational(31, 100), Rational(32, 100)) == Rational(5, 16));
}

TEST_CASE("rotation number of the contracted rotation 2-cycle") {
    auto est = rotation_number(MapSpec::make(half(), S(3, 4), S(1)));
    REQUIRE(est.exact);
    CHECK(*est.exact == Rational(1, 2));
    CHECK(est.confirmed);
    REQUIRE(est.cycle.size() == 2);
    CHECK(std::min(est.cycle[0], est.cycle[1]) == S(1, 6));
    CHECK(std::max(est.cycle[0], est.cycle[1]) == S(5, 6));
}

TEST_CASE("rotation number of the two-cycle example") {
    auto est = rotation_number(MapSpec::make(base_family(), P("0.27"), P("0.34")));
    REQUIRE(est.exact);
    CHECK(*est.exact == Rational(1, 4));
    CHECK(est.confirmed);
}

TEST_CASE("rotation number in the fixed-point regions") {
    auto f1 = rotation_number(MapSpec::make(half(), P("0.3"), P("0.9")));
    CHECK(*f1.exact == 0);
    auto f2 = rotation_number(MapSpec::make(half(), P("0.8"), P("0.05")));
    CHECK(*f2.exact == 1);
}

TEST_CASE("rotation bracket for an irrational tongue point") {
    RotationOptions opt;
    opt.n_max = 4000;
    // A Cantor-attractor map found from the golden-ratio boundary values.
    Family fam = base_family();
    auto t = RotationTarget::irrational(Interval{Rational(618, 1000), Rational(619, 1000)}, S(1, 4));
    (void)t;
    auto est = rotation_number(MapSpec::make(fam, P("0.6"), P("0.2")), opt);
    CHECK(est.lower <= est.upper);
    CHECK((est.upper - est.lower).value() <= 2.0 / 4000 + 1e-6);
}

TEST_CASE("rho_delta plateaus") {
    auto r = rho_delta(half(), S(3, 4), S(1, 2));
    CHECK(r.plateau);
    CHECK(r.lo == Rational(1, 2));
    auto r1 = rho_delta(half(), S(3, 4), S(1));
    CHECK(r1.plateau);
    CHECK(r1.lo == Rational(1, 2));
    CHECK(rho_delta(half(), P("0.4"), S(1)).lo == 0);
    CHECK(rho_delta(half(), P("0.9"), S(0)).lo == 1);
    CHECK_THROWS_AS(rho_delta(half(), P("0.2"), S(1, 2)), OutOfDomain);
}

TEST_CASE("rho_delta brackets irrational values") {
    // delta between the golden-ratio boundary values is not on any low plateau.
    auto golden = delta_of(base_family(), RotationTarget::irrational(Interval{Rational(6180339887, 10000000000),
                                                                      Rational(6180339888, 10000000000)},
                                                             S(1, 4)));
    auto r = rho_delta(base_family(), golden.value, S(1, 4));
    if (!r.plateau) {
        CHECK(r.lo <= Rational(6180339888, 10000000000));
        CHECK(Rational(6180339887, 10000000000) <= r.hi);
    }
}

TEST_CASE("rho_delta is non-increasing in alpha") {
    Family fam = base_family();
    for (auto delta : {P("0.3"), P("0.45"), P("0.62"), P("0.88")}) {
        Rational prev_lo(2);
        for (int i = 0; i < 64; ++i) {
            auto r = rho_delta(fam, delta, S(i, 63));
            CHECK(r.lo <= prev_lo);
            prev_lo = r.hi;
        }
    }
}

TEST_CASE("big_phi values and monotonicity") {
    Family fam = half();
    CHECK(big_phi(fam, S(3, 4), S(1, 2)) == S(1));
    Scalar delta = P("0.8");
    CHECK(big_phi(fam, delta, S(0)) == (delta + fam.d - S(1)) / (S(1) - fam.lambda));
    Family f = base_family();
    for (auto dl : {P("0.3"), P("0.55"), P("0.85")}) {
        double prev = -1e9;
        for (int i = 0; i < 64; ++i) {
            Scalar v = big_phi(f, dl, S(i, 64));
            CHECK(v.value() + v.err() + 1e-12 >= prev);
            prev = v.value() - v.err();
        }
    }
}

TEST_CASE("phi at integer rotation numbers") {
    Family fam = base_family();
    Scalar delta = P("0.85");
    CHECK(phi_integer_rho(fam, delta, 1, S(0), S(0)).value == (delta + fam.d - S(1)) / (S(1) - fam.lambda));
    CHECK(phi_integer_rho(fam, delta, 0, S(1), S(1)).limit == delta / (S(1) - fam.lambda));
}

TEST_CASE("invert the two-cycle example") {
    auto c = invert(base_family(), P("0.27"), P("0.34"));
    CHECK(c.rho == S(1, 4));
    CHECK(c.delta_check);
    CHECK(c.a_check);
    CHECK(S(1, 4) <= c.alpha);
    CHECK(c.alpha <= S(1, 2));
    CHECK(c.containment == Containment::inside_strict);
}

TEST_CASE("invert rejects fixed-point inputs") {
    CHECK_THROWS_AS(invert(half(), P("0.3"), P("0.9")), FixedPointRegion);
    CHECK_THROWS_AS(invert(half(), P("0.8"), P("0.05")), FixedPointRegion);
    CHECK_THROWS_AS(invert(half(), P("0.1"), P("0.5")), OutOfDomain);
}

TEST_CASE("synthesize then invert round trip") {
    Family fam = base_family();
    std::mt19937 rng(11);
    int n = 0;
    for (long q = 2; q <= 6; ++q)
        for (long p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            for (int rep = 0; rep < 2; ++rep) {
                Scalar alpha(static_cast<long>(rng() % 97), 96);
                int orbits = (alpha * Scalar(q)).q().get_den() == 1 ? 1 : 2;
                auto [spec, cert] = synthesize(fam, SynthesisGoal::orbit_count(p, q, orbits, alpha));
                auto inv = invert(fam, spec.delta, spec.a);
                CHECK(inv.rho == S(p, q));
                CHECK(inv.delta_check);
                CHECK(inv.a_check);
                auto est = rotation_number(spec);
                CHECK(est.lower <= S(p, q));
                CHECK(S(p, q) <= est.upper);
                // The recovered alpha sits on the side of 1 - rho that the map class dictates.
                MapTag tag = classify(spec).second.tag;
                if (tag == MapTag::M1) CHECK(inv.alpha <= S(1) - inv.rho);
                if (tag == MapTag::M3) CHECK(S(1) - inv.rho <= inv.alpha);
                ++n;
            }
        }
    CHECK(n == 22);
}

TEST_CASE("rotation number is stable under in-region perturbations") {
    Family fam = base_family();
    std::mt19937 rng(5);
    for (long q : {3L, 5L}) {
        auto [spec, cert] = synthesize(fam, SynthesisGoal::orbit_count(1, q, 2));
        const Region& r = cert.region;
        for (int i = 0; i < 8; ++i) {
            Scalar u(static_cast<long>(rng() % 1000) + 1, 1002), v(static_cast<long>(rng() % 1000) + 1, 1002);
            Scalar delta = r.delta_lo + u * r.delta_width();
            Scalar lo = max(r.a_lo(delta), S(0)), hi = min(r.a_hi(delta), S(1));
            Scalar a = lo + v * (hi - lo);
            auto est = rotation_number(MapSpec::make(fam, delta, a));
            REQUIRE(est.exact);
            CHECK(*est.exact == Rational(1, q));
        }
    }
}
