#include "tubedist/bounds.hpp"
#include "sampling.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace tubedist;
using tubedist::testing::sample_bounds_tuple;
using tubedist::testing::sample_radius_tuple;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("lower_bound") {
    // 0.2 < sqrt(7.256 * 0.05), so the linear term wins
    REQUIRE_THAT(lower_bound(0.05, 0.2), WithinRel(0.075, 1e-15));
    SECTION("arccosh term is dominated at its vanishing point") {
        const double delta = 0.003;
        const double eps = std::sqrt(depth_constant * delta);
        REQUIRE(eps < 0.3);
        REQUIRE(lower_bound(delta, eps) == 0.5 * (eps - delta));
    }
    REQUIRE_THAT(lower_bound(0.001, 0.3), WithinRel(1.8889439069837626, 1e-12));
    REQUIRE_THROWS_AS(lower_bound(0.2, 0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(lower_bound(0.0, 0.1), std::invalid_argument);
}

TEST_CASE("upper_bound") {
    REQUIRE_THAT(upper_bound(0.05, 0.2), WithinAbs(2.0650, 1e-4));
    REQUIRE_THAT(upper_bound(0.05, 0.2), WithinRel(2.0650501568929022, 1e-12));
    REQUIRE_THAT(upper_bound(0.01, 0.1), WithinRel(2.9936373884737389, 1e-12));
    REQUIRE(upper_bound(0.2 * (1.0 - 1e-9), 0.2) < 1e-4);  // -> 0 as delta -> eps
    // attained exactly by the nonsingular torus with rotation-free core of
    // length delta
    REQUIRE(upper_bound(0.01, 0.1) ==
            tube_distance(ModelSolidTorus(two_pi, 0.01, 0.0), 0.01, 0.1));
}

TEST_CASE("j_function") {
    REQUIRE(j_function(0.0, 0.3) == 0.0);
    REQUIRE_THAT(j_function(0.0093026, 0.3), WithinAbs(0.042357, 1e-6));
    REQUIRE_THAT(j_function(0.0093026, 0.3), WithinRel(0.04235713897340523, 1e-12));
    SECTION("boundary delta = eps^2/7.256 keeps only the first radical") {
        const double eps = 0.25;
        const double delta = eps * eps / depth_constant;
        REQUIRE_THAT(j_function(delta, eps),
                     WithinRel(std::sqrt(delta / depth_constant) / deep_tube_factor, 1e-9));
    }
    REQUIRE_THROWS_AS(j_function(0.2, 0.3), std::domain_error);
}

TEST_CASE("r_min_for extremum") {
    REQUIRE_THAT(r_min_for(0.3), WithinRel(0.04234448350632807, 1e-9));
    REQUIRE(r_min_for(0.3) <= 0.0424);
    REQUIRE(r_min_for(1e-4) < 1e-4);
    REQUIRE_THAT(r_min_for(1.475), WithinRel(0.20677921444826754, 1e-9));
    REQUIRE_THROWS_AS(r_min_for(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(r_min_for(1.476), std::invalid_argument);

    SECTION("matches a dense grid scan at eps_max = 1.0") {
        const double em = 1.0;
        const double hi = em * em / depth_constant;
        double best = 0.0;
        const int n = 1000000;
        for (int i = 0; i <= n; ++i) {
            best = std::max(best, j_function(hi * i / n, em));
        }
        REQUIRE_THAT(r_min_for(em), WithinAbs(std::asinh(best), 1e-8));
    }
}

TEST_CASE("j has a single interior critical point on each arc") {
    for (const double em : {0.3, 1.0, 1.475}) {
        const double hi = em * em / depth_constant;
        const int n = 10000;
        int sign_changes = 0;
        double prev = j_function(hi * 1.0 / n, em) - j_function(0.0, em);
        for (int i = 2; i <= n; ++i) {
            const double diff = j_function(hi * i / n, em) - j_function(hi * (i - 1) / n, em);
            if (diff * prev < 0.0) ++sign_changes;
            if (diff != 0.0) prev = diff;
        }
        REQUIRE(sign_changes == 1);
    }
}

TEST_CASE("depth_lower_bound") {
    REQUIRE_THAT(depth_lower_bound(0.2, 0.04), WithinRel(0.37123709277471073, 1e-12));
    REQUIRE_THROWS_AS(depth_lower_bound(0.2, 3.0), std::invalid_argument);
    SECTION("the rounded constant is weaker than the exact one") {
        const double exact = 4.0 * std::numbers::pi / std::sqrt(3.0);
        REQUIRE(exact < depth_constant);
        SplitMix64 rng(4001);
        for (int i = 0; i < 1000; ++i) {
            const double eps = rng.uniform(0.01, 1.0);
            const double lam = rng.uniform(1e-5, 2.97);
            REQUIRE(eps / std::sqrt(exact * lam) >= depth_lower_bound(eps, lam));
        }
    }
}

TEST_CASE("tube depth bound: cosh r(eps) >= eps/sqrt(7.256 lambda)") {
    SplitMix64 rng(4002);
    int checked = 0;
    while (checked < 3000) {
        const auto [alpha, lambda, tau, eps] = sample_radius_tuple(rng);
        const ModelSolidTorus N(alpha, lambda, tau);
        const TubeRadiusResult res = tube_radius(N, eps);
        if (res.empty()) continue;
        REQUIRE(std::cosh(res.radius) >= depth_lower_bound(eps, lambda) - 1e-12);
        ++checked;
    }
}

TEST_CASE("singular area route: sinh 2r(eps) >= sqrt(3) eps^2/(alpha lambda)") {
    SplitMix64 rng(4003);
    for (int i = 0; i < 3000; ++i) {
        const double alpha = rng.uniform(0.05, two_pi * (1.0 - 1e-9));
        const double lambda = rng.uniform(1e-4, 0.5);
        const ModelSolidTorus N(alpha, lambda,
                                rng.uniform(-std::numbers::pi, std::numbers::pi));
        const double eps = rng.uniform(1e-3, 0.5);
        const double r = tube_radius(N, eps).radius;
        REQUIRE(std::sinh(2.0 * r) >=
                std::sqrt(3.0) * eps * eps / (alpha * lambda) * (1.0 - 1e-12));
    }
}

TEST_CASE("nonsingular route: cosh^2 r(eps) >= sqrt(3) eps^2/(4 pi lambda)") {
    SplitMix64 rng(4004);
    for (int i = 0; i < 3000; ++i) {
        const double lambda = rng.uniform(1e-4, 2.97);
        const double eps = rng.uniform(lambda, lambda + 0.5);
        const ModelSolidTorus N(two_pi, lambda,
                                rng.uniform(-std::numbers::pi, std::numbers::pi));
        const double r = tube_radius(N, eps).radius;
        const double ch = std::cosh(r);
        REQUIRE(ch * ch >=
                std::sqrt(3.0) * eps * eps / (4.0 * std::numbers::pi * lambda) *
                    (1.0 - 1e-12));
    }
}

TEST_CASE("cgm_power_search") {
    REQUIRE(cgm_power_search(0.1, 0.0) == 1);
    REQUIRE_THROWS_AS(cgm_power_search(3.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(cgm_power_search(0.0, 0.0), std::invalid_argument);

    SECTION("near-extremal family: some m <= n works") {
        for (std::int64_t n = 4; n <= 200; ++n) {
            const double lambda = 1.0 / (static_cast<double>(n) * n);
            const double tau = two_pi / static_cast<double>(n);
            const std::int64_t m = cgm_power_search(lambda, tau);
            REQUIRE(m <= n);
            REQUIRE(coshm1(m * lambda) + one_minus_cos(m * tau) <=
                    (two_pi / std::sqrt(3.0)) * lambda);
        }
    }
    SECTION("random core lengths always admit a short power") {
        SplitMix64 rng(4005);
        for (int i = 0; i < 2000; ++i) {
            const double lambda = rng.uniform(1e-9, 2.97);
            const double tau = rng.uniform(0.0, two_pi);
            REQUIRE_NOTHROW(cgm_power_search(lambda, tau));
        }
    }
}

TEST_CASE("multiplicative radius gap") {
    SECTION("rotation-free nonsingular core of length delta attains equality") {
        SplitMix64 rng(4006);
        for (int i = 0; i < 500; ++i) {
            const double delta = rng.uniform(1e-3, 0.3);
            const double eps = rng.uniform(delta * (1.0 + 1e-6), 0.4);
            const auto [ratio, bound] =
                mult_gap_bound(ModelSolidTorus(two_pi, delta, 0.0), delta, eps);
            REQUIRE_THAT(ratio, WithinRel(bound, 1e-12));
        }
    }
    SECTION("wide cone angle with elliptic realizers stays strictly below") {
        const ModelSolidTorus N(1.6 * std::numbers::pi, 0.2, 2.0);
        REQUIRE(tube_radius(N, 0.3).realizer->is_elliptic());
        REQUIRE(tube_radius(N, 0.25).realizer->is_elliptic());
        const auto [ratio, bound] = mult_gap_bound(N, 0.25, 0.3);
        REQUIRE(ratio < bound - 1e-9);
    }
    SECTION("never exceeds the bound") {
        SplitMix64 rng(4007);
        int checked = 0;
        while (checked < 3000) {
            const auto [alpha, lambda, tau, delta, eps] = sample_bounds_tuple(rng, 0.4);
            const ModelSolidTorus N(alpha, lambda, tau);
            const auto [ratio, bound] = mult_gap_bound(N, delta, eps);
            REQUIRE(ratio <= bound + 1e-9);
            ++checked;
        }
    }
    REQUIRE_THROWS_AS(mult_gap_bound(ModelSolidTorus(two_pi, 0.2, 0.0), 0.1, 0.3),
                      std::domain_error);
}

TEST_CASE("check_bounds certificates") {
    SECTION("sharp case: equality with the upper bound") {
        const BoundsCertificate cert =
            check_bounds(ModelSolidTorus(two_pi, 0.05, 0.0), 0.05, 0.2);
        REQUIRE(cert.upper_ok);
        REQUIRE(cert.lower_ok);
        REQUIRE_THAT(cert.actual, WithinAbs(cert.upper, 1e-12));
        REQUIRE(cert.realizer_delta == Realizer::power(1));
        REQUIRE(cert.realizer_eps == Realizer::power(1));
    }
    SECTION("rotated core sits strictly inside the sandwich") {
        const BoundsCertificate cert =
            check_bounds(ModelSolidTorus(two_pi, 0.05, std::numbers::pi), 0.05, 0.2);
        REQUIRE(cert.lower_ok);
        REQUIRE(cert.upper_ok);
        REQUIRE(cert.actual > std::max(cert.lower_linear, cert.lower_log) + 1e-6);
        REQUIRE(cert.actual < cert.upper - 1e-6);
    }
    SECTION("hypothesis violations are reported individually") {
        const ModelSolidTorus N(two_pi, 0.05, 0.0);
        REQUIRE_THROWS_AS(check_bounds(N, 0.2, 0.1), std::invalid_argument);
        REQUIRE_THROWS_AS(check_bounds(N, 0.01, 0.2), std::invalid_argument);  // lambda > delta
        REQUIRE_THROWS_AS(check_bounds(N, 0.05, 0.35), std::invalid_argument);  // eps > eps_max
        REQUIRE_THROWS_AS(check_bounds(N, 0.05, 0.2, 1.5), std::invalid_argument);
    }
}

TEST_CASE("main sandwich on random tori") {
    SplitMix64 rng(4008);
    for (int i = 0; i < 2000; ++i) {
        const auto [alpha, lambda, tau, delta, eps] = sample_bounds_tuple(rng, 0.3);
        const BoundsCertificate cert =
            check_bounds(ModelSolidTorus(alpha, lambda, tau), delta, eps);
        REQUIRE(cert.lower_ok);
        REQUIRE(cert.upper_ok);
    }
}

TEST_CASE("generalized sandwich for larger eps ceilings") {
    SplitMix64 rng(4009);
    for (const double em : {0.5, 1.0, 1.475}) {
        for (int i = 0; i < 300; ++i) {
            const auto [alpha, lambda, tau, delta, eps] = sample_bounds_tuple(rng, em);
            const BoundsCertificate cert =
                check_bounds(ModelSolidTorus(alpha, lambda, tau), delta, eps, em);
            REQUIRE(cert.lower_ok);
            REQUIRE(cert.upper_ok);
        }
    }
}

TEST_CASE("upper bound sharpness degrades under perturbation") {
    SplitMix64 rng(4010);
    for (int i = 0; i < 200; ++i) {
        const double delta = rng.uniform(1e-4, 0.3);
        const double eps = rng.uniform(delta * (1.0 + 1e-9), 0.3);
        if (eps <= delta) continue;
        const double ub = upper_bound(delta, eps);
        const double rotated = tube_distance(ModelSolidTorus(two_pi, delta, 1e-3), delta, eps);
        REQUIRE(ub - rotated > 1e-9);
        const double bent =
            tube_distance(ModelSolidTorus(two_pi - 1e-3, delta, 0.0), delta, eps);
        REQUIRE(ub - bent > 1e-9);
    }
}

TEST_CASE("shallow and deep case bounds") {
    SplitMix64 rng(4011);
    int shallow = 0;
    int deep = 0;
    while (shallow < 500 || deep < 500) {
        const auto [alpha, lambda, tau, delta, eps] = sample_bounds_tuple(rng, 0.3);
        const ModelSolidTorus N(alpha, lambda, tau);
        const double r_delta = tube_radius(N, delta).radius;
        const double d = tube_distance(N, delta, eps);
        if (r_delta <= base_r_min && shallow < 500) {
            const ExtendedLength lg =
                arccosh_ext(eps / std::sqrt(depth_constant * delta)) - base_r_min;
            REQUIRE(d >= lg - 1e-9);
            ++shallow;
        } else if (r_delta >= base_r_min && deep < 500) {
            REQUIRE(d >= std::log((eps / delta) * deep_tube_factor * std::sinh(base_r_min)) -
                             base_r_min - 1e-9);
            ++deep;
        }
    }
}

TEST_CASE("cusp distances satisfy the tube bounds") {
    SplitMix64 rng(4012);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform(0.0, 0.3);
        const double b = rng.uniform(0.0, 0.3);
        const double delta = std::min(a, b);
        const double eps = std::max(a, b);
        if (!(delta > 0.0 && delta < eps)) continue;
        const double d = cusp_distance(delta, eps);
        REQUIRE(d >= lower_bound(delta, eps) - 1e-9);
        REQUIRE(d <= upper_bound(delta, eps) + 1e-9);
    }
}
