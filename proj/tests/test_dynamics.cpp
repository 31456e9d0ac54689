#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <tuple>

#include "oracle.hpp"
#include "pcrot/constants.hpp"
#include "pcrot/dynamics.hpp"
#include "pcrot/errors.hpp"
#include "pcrot/inverse.hpp"

using namespace pcrot;

namespace {
Scalar S(long n, long d = 1) { return Scalar(n, d); }
Scalar P(const char* s) { return Scalar::parse(s); }
Family base_family() { return Family::make(P("0.7"), P("0.2")); }
Family half() { return Family::make(S(1, 2), S(1, 4)); }
MapSpec two_cycle_map() { return MapSpec::make(base_family(), P("0.27"), P("0.34")); }
RotationTarget two_cycle_target() { return RotationTarget::rational(1, 4, S(5, 16)); }

double circle_dist(double x, double y) {
    double t = std::abs(x - y);
    return std::min(t, 1 - t);
}

std::vector<Scalar> sorted_points(const Cycle& c) {
    auto v = c.points;
    std::sort(v.begin(), v.end());
    return v;
}
}  // namespace

TEST_CASE("orbit of the contracted-rotation 2-cycle") {
    MapSpec spec = MapSpec::make(half(), S(3, 4), S(1));
    Orbit o = iterate_orbit(spec, S(1, 6), 2);
    REQUIRE(o.points.size() == 3);
    CHECK(o.points[0] == S(1, 6));
    CHECK(o.points[1] == S(5, 6));
    CHECK(o.points[2] == S(1, 6));
    // One full turn per period of the rotation number 1/2.
    CHECK(o.windings[0] + o.windings[1] == 1);
    CHECK(iterate_orbit(spec, S(1, 6), 0).points.size() == 1);
    CHECK_THROWS_AS(iterate_orbit(spec, S(1), 3), OutOfDomain);
}

TEST_CASE("two interleaved period-4 cycles") {
    MapSpec spec = two_cycle_map();
    Attractor at = attractor(spec, two_cycle_target());
    REQUIRE(at.kind == Attractor::Kind::periodic);
    REQUIRE(at.cycles.size() == 2);
    for (const Cycle& c : at.cycles) {
        CHECK(c.q == 4);
        CHECK(c.verified);
        for (std::size_t k = 0; k < c.points.size(); ++k)
            CHECK(map_eval(spec, c.points[k]) == c.points[(k + 1) % c.points.size()]);
    }
    auto sigma = sorted_points(at.cycles[0]), gamma = sorted_points(at.cycles[1]);
    CHECK(S(0) <= sigma[0]);
    for (int i = 0; i < 4; ++i) {
        CHECK(sigma[i] < gamma[i]);
        if (i < 3) CHECK(gamma[i] < sigma[i + 1]);
    }
    CHECK(gamma[3] < S(1));
}

TEST_CASE("one period-2 cycle at alpha = 1") {
    MapSpec spec = MapSpec::make(half(), P("0.7"), S(1));
    Attractor at = attractor(spec, RotationTarget::rational(1, 2, S(1)));
    REQUIRE(at.cycles.size() == 1);
    auto pts = sorted_points(at.cycles[0]);
    // x = x/4 + 1/20 by hand.
    CHECK(pts[0] == S(1, 15));
    CHECK(pts[1] == S(11, 15));
}

TEST_CASE("cycle counts for rho = 1/3 agree with brute-force clustering") {
    Family fam = base_family();
    for (auto [alpha, expect] : {std::pair{S(0), 1}, std::pair{S(1, 6), 2}}) {
        auto [spec, cert] = synthesize(fam, SynthesisGoal::orbit_count(1, 3, expect, alpha));
        Attractor at = attractor(spec, cert.target);
        CHECK(static_cast<int>(at.cycles.size()) == expect);

        std::vector<double> limits;
        MapSpec fast = MapSpec::make(spec.lambda.to_approx(), spec.d.to_approx(), spec.delta.to_approx(),
                                     spec.a.to_approx());
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0, 1);
        for (int s = 0; s < 100; ++s) {
            double x = u(rng);
            // Binary64 iteration with the plain formula; near-cut ties are harmless here.
            double lam = fast.lambda.value(), d = fast.d.value(), dl = fast.delta.value(), a = fast.a.value();
            for (int n = 0; n < 300; ++n) {
                double F = lam * x + dl + (x >= a ? d : 0);
                x = F - std::floor(F);
            }
            bool seen = false;
            for (double l : limits) seen = seen || circle_dist(l, x) < 1e-9;
            if (!seen) {
                // Record the whole limit cycle.
                for (int n = 0; n < 3; ++n) {
                    limits.push_back(x);
                    double F = lam * x + dl + (x >= a ? d : 0);
                    x = F - std::floor(F);
                }
            }
        }
        CHECK(static_cast<int>(limits.size()) == 3 * expect);
        for (const Cycle& c : at.cycles)
            for (const Scalar& p : c.points) {
                bool hit = false;
                for (double l : limits) hit = hit || circle_dist(l, p.value()) < 1e-9;
                CHECK(hit);
            }
    }
}

TEST_CASE("random seeds are attracted to the computed cycles") {
    MapSpec spec = two_cycle_map();
    Attractor at = attractor(spec, two_cycle_target());
    std::mt19937_64 rng(11);
    const long n = 80;
    double bound = std::pow(0.7, n);
    for (int s = 0; s < 50; ++s) {
        Scalar x0(Rational(static_cast<long>(rng() % 1000003), 1000003));
        Orbit o = iterate_orbit(spec, x0, n);
        Scalar xn = o.points.back();
        double best = 1;
        for (const Cycle& c : at.cycles)
            for (const Scalar& p : c.points) best = std::min(best, circle_dist(xn.value(), p.value()));
        CHECK(best < bound);
    }
}

TEST_CASE("attractor refuses boundary parameters") {
    Family fam = base_family();
    RotationTarget t = two_cycle_target();
    Region r = region(fam, t);
    MapSpec on_edge = MapSpec::make(fam, P("0.27"), r.a_lo(P("0.27")));
    CHECK_THROWS_AS(attractor(on_edge, t), HypothesisViolated);
    CHECK_THROWS_AS(conjugacy_residual(on_edge, t, {S(0)}), HypothesisViolated);
}

TEST_CASE("Cantor sample for an irrational rotation") {
    Family fam = base_family();
    auto [spec, cert] = synthesize(fam, SynthesisGoal::complexity_generic(golden_box(), S(1, 4)));
    AttractorOptions opt;
    opt.grid = 64;
    opt.depth = 20;
    Attractor at = attractor(spec, cert.target, opt);
    REQUIRE(at.kind == Attractor::Kind::cantor_sample);
    const CantorSample& s = *at.sample;
    CHECK(s.x.size() == 64);
    CHECK(s.gaps.size() == 40);
    for (std::size_t i = 1; i < s.x.size(); ++i) CHECK(s.x[i - 1].value() <= s.x[i].value());
    double mass = 0;
    for (std::size_t i = 0; i < s.gaps.size(); ++i) {
        double w = s.gaps[i].hi.value() - s.gaps[i].lo.value();
        CHECK(w > 0);
        mass += w;
        if (i > 0) CHECK(s.gaps[i - 1].hi.value() <= s.gaps[i].lo.value() + 1e-12);
    }
    // Every gap of the full attractor fits in [phi(0), phi(1^-)], whose length is 1 - lambda^0 ... = 1.
    CHECK(mass + s.unreported_gap_mass <= 1 + 1e-9);
    CHECK(s.unreported_gap_mass == doctest::Approx(std::pow(0.7, 20)).epsilon(1e-9));
}

TEST_CASE("codes of simple maps") {
    MapSpec spec = MapSpec::make(half(), S(3, 4), S(1));
    SymbolCode c = code(spec, S(1, 6), 5);
    CHECK(c.str() == "010101");
    CHECK_FALSE(c.truncated);

    MapSpec m1 = MapSpec::make(base_family(), P("0.2"), P("0.5"));
    REQUIRE(classify(m1).second.tag == MapTag::M1);
    CHECK(code(m1, P("0.1"), 0).symbols[0] == 0);
}

TEST_CASE("rotation codes") {
    SymbolCode w = rotation_code(two_cycle_target(), S(0), 7);
    CHECK(w.str().substr(0, 4) == w.str().substr(4, 4));
    std::string per = w.str().substr(0, 4);
    CHECK(per.find('0') != std::string::npos);
    CHECK(per.find('1') != std::string::npos);
    CHECK(per.find('2') != std::string::npos);

    SymbolCode two = rotation_code(RotationTarget::rational(1, 4, S(0)), S(0), 12);
    for (int s : two.symbols) CHECK(s != 0);

    // On-orbit and off-orbit seeds share the factor set of a rational rotation.
    RotationTarget t = RotationTarget::rational(2, 7, S(1, 3));
    auto a = rotation_code(t, S(0), 6).symbols, b = rotation_code(t, S(1, 10), 6).symbols;
    CHECK(complexity_periodic(a, 10) == complexity_periodic(b, 10));
}

TEST_CASE("code of phi(y) equals the rotation code of y") {
    Family fam = base_family();
    std::mt19937_64 rng(3);
    std::vector<std::pair<MapSpec, RotationTarget>> cases = {{two_cycle_map(), two_cycle_target()}};
    for (auto [p, q, orbits] : {std::tuple{1L, 3L, 1}, std::tuple{1L, 3L, 2}, std::tuple{2L, 5L, 2}}) {
        auto [spec, cert] = synthesize(fam, SynthesisGoal::orbit_count(p, q, orbits));
        cases.push_back({spec, cert.target});
    }
    for (const auto& [spec, t] : cases)
        for (int i = 0; i < 32; ++i) {
            Scalar y(Rational(static_cast<long>(rng() % 9973), 9973));
            Scalar x = phi(fam, spec.delta, t, y).value;
            SymbolCode fc = code(spec, x, 24), rc = rotation_code(t, y, 24);
            CHECK_FALSE(fc.truncated);
            CHECK(fc.symbols == rc.symbols);
        }
}

TEST_CASE("factor complexity") {
    std::vector<int> w;
    for (int i = 0; i < 100; ++i) w.push_back(i % 2);
    CHECK(complexity(w, 3) == std::vector<long>{2, 2, 2});
    CHECK_THROWS_AS(complexity(std::vector<int>(20, 0), 3), InsufficientLength);
    CHECK(complexity_periodic({0, 1}, 3) == std::vector<long>{2, 2, 2});

    // Two-letter Sturmian word of the golden rotation.
    auto golden = rotation_code(RotationTarget::irrational(golden_box(), S(0)), S(0), 2000);
    REQUIRE_FALSE(golden.truncated);
    auto p = complexity(golden.symbols, 20);
    for (long n = 1; n <= 20; ++n) CHECK(p[n - 1] == n + 1);
}

TEST_CASE("complexity laws on irrational attractors") {
    Family fam = base_family();
    const long N = 4000;
    for (const Interval& box : {golden_box(), quarter_pi_box()}) {
        auto [spec, cert] = synthesize(fam, SynthesisGoal::complexity_generic(box, S(1, 4)));
        auto w = rotation_code(cert.target, S(0), N);
        REQUIRE_FALSE(w.truncated);
        auto p = complexity(w.symbols, 20);
        for (long n = 1; n <= 20; ++n) CHECK(p[n - 1] == 2 * n + 1);
        // Direct binary64 iteration agrees until its first undecidable comparison. Orbit
        // points come within lambda^k of a cut after ~k steps, so prefixes stay short.
        std::size_t longest = 0;
        for (long j = 1; j < 20; ++j) {
            Scalar x0 = phi(fam, spec.delta, cert.target, S(j, 20)).value;
            auto direct = code(spec, x0, N);
            auto symbolic = rotation_code(cert.target, S(j, 20), N);
            CHECK(std::equal(direct.symbols.begin(), direct.symbols.end(), symbolic.symbols.begin()));
            longest = std::max(longest, direct.symbols.size());
        }
        CHECK(longest > 40);
    }
    auto [spec, cert] = synthesize(fam, SynthesisGoal::complexity_resonant(quarter_pi_box(), 3));
    CHECK(cert.complexity_b == 4);
    auto w = rotation_code(cert.target, S(0), N);
    REQUIRE_FALSE(w.truncated);
    auto p = complexity(w.symbols, 15);
    for (long n = 4; n <= 15; ++n) CHECK(p[n - 1] == n + 4);
}

TEST_CASE("two-cycle attractor codes have complexity 2q") {
    Family fam = base_family();
    for (auto [p, q] : {std::pair{1L, 3L}, std::pair{2L, 5L}, std::pair{1L, 4L}}) {
        auto [spec, cert] = synthesize(fam, SynthesisGoal::orbit_count(p, q, 2));
        Attractor at = attractor(spec, cert.target);
        REQUIRE(at.cycles.size() == 2);
        // Factors of both cycles together.
        auto a = code(spec, at.cycles[0].points[0], q - 1).symbols;
        auto b = code(spec, at.cycles[1].points[0], q - 1).symbols;
        std::set<std::vector<int>> factors;
        long n = 3 * q;
        for (const auto* word : {&a, &b})
            for (long i = 0; i < q; ++i) {
                std::vector<int> f;
                for (long j = 0; j < n; ++j) f.push_back((*word)[(i + j) % q]);
                factors.insert(f);
            }
        CHECK(static_cast<long>(factors.size()) == 2 * q);
    }
}

TEST_CASE("conjugacy residual vanishes for the two-cycle example") {
    std::vector<Scalar> grid;
    for (long j = 0; j < 256; ++j) grid.push_back(S(j, 256));
    ResidualReport r = conjugacy_residual(two_cycle_map(), two_cycle_target(), grid);
    CHECK(r.exact);
    CHECK(r.residual == 0.0);
    CHECK(r.points == 256);
}

TEST_CASE("approx conjugacy residual stays within its bound") {
    Family fam = base_family();
    std::vector<Scalar> grid;
    for (long j = 0; j < 256; ++j) grid.push_back(S(j, 256));
    for (const Interval& box : {golden_box(), quarter_pi_box()}) {
        auto [spec, cert] = synthesize(fam, SynthesisGoal::complexity_generic(box, S(1, 3)));
        ResidualReport r = conjugacy_residual(spec, cert.target, grid);
        CHECK_FALSE(r.exact);
        CHECK(r.residual <= r.bound);
        CHECK(r.bound < 1e-12);
    }
}

TEST_CASE("generalized inverse of phi") {
    Family fam = base_family();
    RotationTarget t = two_cycle_target();
    Scalar delta = P("0.27");
    Scalar x0 = phi(fam, delta, t, S(0)).value;
    CHECK(generalized_inverse(fam, delta, t, x0) == S(0));
    CHECK_THROWS_AS(generalized_inverse(fam, delta, t, x0 - S(1, 1000)), OutOfRange);
    // For rational rho phi is a step function: the inverse returns the left end of the step.
    for (long j = 0; j < 128; ++j) {
        Scalar y(j, 128);
        Scalar back = generalized_inverse(fam, delta, t, phi(fam, delta, t, y).value);
        CHECK(back <= y);
        CHECK(phi(fam, delta, t, back).value == phi(fam, delta, t, y).value);
    }

    auto [spec, cert] = synthesize(fam, SynthesisGoal::complexity_generic(golden_box(), S(1, 4)));
    Scalar prev(0);
    for (long j = 0; j < 128; ++j) {
        Scalar y(j, 128);
        Scalar back = generalized_inverse(fam, spec.delta, cert.target, phi(fam, spec.delta, cert.target, y).value);
        CHECK(std::abs(back.value() - y.value()) <= back.err() + 1e-15);
        CHECK(prev.value() <= back.value() + back.err());
        prev = back;
    }
}
