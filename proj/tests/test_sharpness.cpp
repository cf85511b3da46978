#include "tubedist/sharpness.hpp"
#include "tubedist/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace tubedist;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("biringer_torus parameters") {
    const ModelSolidTorus n4 = biringer_torus(4);
    REQUIRE(n4.nonsingular());
    REQUIRE(n4.lambda() == 0.0625);
    REQUIRE_THAT(n4.tau(), WithinRel(1.5707963267948966, 1e-15));

    const ModelSolidTorus n10 = biringer_torus(10);
    REQUIRE(n10.lambda() == 0.01);
    REQUIRE_THAT(n10.tau(), WithinRel(0.62831853071795865, 1e-15));

    const ModelSolidTorus n9 = biringer_torus(9);
    REQUIRE_THAT(n9.lambda(), WithinRel(1.0 / 81.0, 1e-15));
    REQUIRE_THAT(n9.tau(), WithinRel(0.69813170079773183, 1e-15));

    REQUIRE_THROWS_AS(biringer_torus(3), std::invalid_argument);
}

TEST_CASE("biringer_radius_check") {
    REQUIRE(biringer_radius_check(10, 0.2));
    REQUIRE(biringer_radius_check(9, 0.3));
    REQUIRE(biringer_radius_check(4, 0.254));  // boundary eps = 1.016/4
    REQUIRE_THROWS_AS(biringer_radius_check(10, 0.05), std::invalid_argument);
    REQUIRE_THROWS_AS(biringer_radius_check(10, 0.31), std::invalid_argument);
}

TEST_CASE("radius closed form and interval across the family") {
    for (const std::int64_t n : {4, 9, 25, 60}) {
        const double lo = 1.016 / static_cast<double>(n);
        for (int k = 0; k < 20; ++k) {
            const double eps = std::clamp(lo + (0.3 - lo) * k / 19.0, lo, 0.3);
            REQUIRE(biringer_radius_check(n, eps));
        }
    }
}

TEST_CASE("sharpness_example selects the stated family index") {
    REQUIRE(sharpness_example(0.0124, 0.3).n == 9);
    REQUIRE(sharpness_example(0.01, 0.29).n == 10);  // sqrt(0.01) = 1/10 exactly
    SECTION("smallest n with n^2 delta >= 1, across random delta") {
        SplitMix64 rng(5001);
        for (int i = 0; i < 2000; ++i) {
            const double delta = rng.uniform(1e-5, 0.3 * 0.3 / depth_constant);
            const std::int64_t n = sharpness_example(delta, 0.3).n;
            REQUIRE(static_cast<double>(n) * static_cast<double>(n) * delta >= 1.0);
            REQUIRE(static_cast<double>(n - 1) * static_cast<double>(n - 1) * delta < 1.0);
        }
    }
    REQUIRE_THROWS_AS(sharpness_example(0.05, 0.3), std::invalid_argument);
    REQUIRE_THROWS_AS(sharpness_example(0.01, 0.31), std::invalid_argument);
}

TEST_CASE("witness invariants on a coarse admissible grid") {
    for (int i = 1; i <= 10; ++i) {
        const double eps = 0.3 * i / 10.0;
        const double dmax = eps * eps / depth_constant;
        for (int k = 1; k <= 10; ++k) {
            const double delta = dmax * k / 10.0;
            const SharpnessWitness w = sharpness_example(delta, eps);
            REQUIRE(w.n >= 9);
            REQUIRE(w.torus.lambda() <= delta * (1.0 + 1e-12));
            REQUIRE(w.actual_distance <= w.sharpness_upper + 1e-12);
            REQUIRE(w.gap_to_lower < 2.2);
            // the index keeps sqrt(delta/lambda) = n sqrt(delta) under 10/9
            REQUIRE(static_cast<double>(w.n) * std::sqrt(delta) < 10.0 / 9.0 + 1e-12);
        }
    }
}

TEST_CASE("cosh difference ratio stays below the tanh^2 threshold") {
    // max over n >= 4 of (cosh(1/n) - cosh(1/n^2))/(1 - cos(2 pi/n)) is
    // attained at n = 4 and equals 0.0294593...; the working threshold
    // tanh^2 r > 0.0312 clears it.
    double worst = 0.0;
    for (std::int64_t n = 4; n <= 10000; ++n) {
        const double nd = static_cast<double>(n);
        const double v = (std::cosh(1.0 / nd) - std::cosh(1.0 / (nd * nd))) /
                         one_minus_cos(two_pi / nd);
        worst = std::max(worst, v);
    }
    REQUIRE(worst <= 0.02946);
    REQUIRE(worst < 0.0312);
    REQUIRE_THAT(worst, WithinAbs(0.0294593, 1e-6));
}
