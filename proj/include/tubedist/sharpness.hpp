#pragma once

// The family N_n with core complex length 1/n^2 + i*2*pi/n, which nearly
// attains the lower distance bound: its radii satisfy
// cosh r(eps) in (eps*n, 1.004*eps*n), and for any admissible (delta, eps)
// a member of the family keeps the tube distance within an additive
// constant of the bound.

#include "tubedist/bounds.hpp"

namespace tubedist {

// Torus of the near-extremal family, n >= 4.
inline ModelSolidTorus biringer_torus(std::int64_t n) {
    if (n < 4) throw std::invalid_argument("biringer_torus: need n >= 4");
    const double nd = static_cast<double>(n);
    return ModelSolidTorus(two_pi, 1.0 / (nd * nd), two_pi / nd);
}

// Verify the closed-form radius on the family: the realizer is the n-th
// power, cosh r(eps) equals sqrt(coshm1(eps)/coshm1(1/n)) to 1e-9, and it
// lies strictly inside (eps*n, 1.004*eps*n).  Valid for
// 1.016/n <= eps <= 0.3.
inline bool biringer_radius_check(std::int64_t n, double eps) {
    if (n < 4) throw std::invalid_argument("biringer_radius_check: need n >= 4");
    const double nd = static_cast<double>(n);
    if (!(1.016 / nd <= eps && eps <= 0.3)) {
        throw std::invalid_argument("biringer_radius_check: eps outside [1.016/n, 0.3]");
    }
    const TubeRadiusResult res = tube_radius(biringer_torus(n), eps);
    if (!res.realizer || *res.realizer != Realizer::power(n)) return false;
    const double cosh_r = std::cosh(res.radius);
    const double closed_form = std::sqrt(coshm1(eps) / coshm1(1.0 / nd));
    if (std::abs(cosh_r - closed_form) > 1e-9) return false;
    return eps * nd < cosh_r && cosh_r < 1.004 * eps * nd;
}

struct SharpnessWitness {
    std::int64_t n;          // family index, >= 9 on the admissible domain
    ModelSolidTorus torus;   // (2*pi, 1/n^2, 2*pi/n)
    double actual_distance;  // d(delta, eps) in that torus
    double sharpness_upper;  // arccosh(1.116 * eps / sqrt(delta))
    double gap_to_lower;     // sharpness_upper - lower_bound(delta, eps)
};

// Construct the witness for a pair with sqrt(7.256*delta) <= eps <= 0.3:
// pick the unique n with 1/n <= sqrt(delta) < 1/(n-1), i.e. the smallest
// n with n^2*delta >= 1 (tested in that product form so exact reciprocals
// like delta = 0.01 classify correctly), and measure the distance in the
// corresponding family member.
inline SharpnessWitness sharpness_example(double delta, double eps) {
    if (!(delta > 0.0 && eps <= 0.3 &&
          std::sqrt(depth_constant * delta) <= eps * (1.0 + 1e-12))) {
        throw std::invalid_argument(
            "sharpness_example: need 0 < sqrt(7.256*delta) <= eps <= 0.3");
    }

    const double s = std::sqrt(delta);
    std::int64_t n = static_cast<std::int64_t>(std::floor(1.0 / s)) - 1;
    if (n < 1) n = 1;
    while (static_cast<double>(n) * static_cast<double>(n) * delta < 1.0) ++n;

    SharpnessWitness w{n, biringer_torus(n), 0.0, 0.0, 0.0};
    w.actual_distance = tube_distance(w.torus, delta, eps);
    w.sharpness_upper = std::acosh(1.116 * eps / s);
    w.gap_to_lower = w.sharpness_upper - lower_bound(delta, eps);

    if (w.actual_distance > w.sharpness_upper + certificate_tol) {
        throw std::logic_error("sharpness_example: distance exceeds the sharpness bound");
    }
    if (!(w.gap_to_lower < 2.2)) {
        throw std::logic_error("sharpness_example: gap to the lower bound reaches 2.2");
    }
    return w;
}

}  // namespace tubedist
