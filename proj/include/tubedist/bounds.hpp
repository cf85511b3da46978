#pragma once

// Effective two-sided bounds on the distance between tube boundaries,
// depending only on the injectivity radii delta < eps:
//
//   max{ (eps-delta)/2, arccosh(eps/sqrt(7.256 delta)) - r_min }
//     <=  d(delta, eps)  <=  arccosh sqrt(coshm1(eps)/coshm1(delta)).
//
// r_min = 0.0424 covers eps <= 0.3; for larger eps (up to 1.475) the
// constant is arcsinh of the maximum of the comparison function j.

#include "tubedist/tube.hpp"

#include <utility>

namespace tubedist {

// Rounded overestimate of 4*pi/sqrt(3), the constant of the depth bound
// cosh r(eps) >= eps/sqrt(7.256 lambda).
inline constexpr double depth_constant = 7.256;

// Additive constant of the baseline lower bound (eps <= 0.3).
inline constexpr double base_r_min = 0.0424;

// Twice the Euclidean-vs-hyperbolic comparison factor 0.634 entering the
// deep-tube bound.
inline constexpr double deep_tube_factor = 1.268;

// Core lengths up to this admit a short power in the sense of the
// Cao-Gehring-Martin refinement of Zagier's lemma.
inline constexpr double cgm_lambda_max = 2.97;

// Largest eps the generalized bound supports.
inline constexpr double eps_max_limit = 1.475;

// Certificate comparisons use this absolute slack: three orders below the
// sharpest bound constant digit, three above accumulated double noise.
inline constexpr double certificate_tol = 1e-9;

// Lower bound on d(delta, eps).  The arccosh term is -inf when
// eps < sqrt(7.256 delta) and then never realizes the maximum.
inline double lower_bound(double delta, double eps, double r_min = base_r_min) {
    if (!(0.0 < delta && delta < eps)) {
        throw std::invalid_argument("lower_bound: need 0 < delta < eps");
    }
    const double linear = 0.5 * (eps - delta);
    const ExtendedLength log_term =
        arccosh_ext(eps / std::sqrt(depth_constant * delta)) - r_min;
    return std::max(linear, log_term);
}

// Sharp upper bound arccosh sqrt((cosh eps - 1)/(cosh delta - 1)); equals
// the distance in the nonsingular torus with complex length delta + 0i.
// Evaluated through the same cancellation-free kernel as trad so the
// equality case reproduces exactly.
inline double upper_bound(double delta, double eps) {
    if (!(0.0 < delta && delta < eps)) {
        throw std::invalid_argument("upper_bound: need 0 < delta < eps");
    }
    return trad(delta, 0.0, eps);
}

// Comparison function controlling the deep/shallow case split:
//   j(delta, eps) = ( sqrt(delta/7.256) + sqrt(delta/7.256 - delta^2/eps^2) ) / 1.268
// on the domain 0 <= delta <= eps^2/7.256.
inline double j_function(double delta, double eps) {
    if (!(eps > 0.0) || delta < 0.0) {
        throw std::invalid_argument("j_function: need eps > 0 and delta >= 0");
    }
    const double a = delta / depth_constant;
    const double b = (delta / eps) * (delta / eps);
    double rad = a - b;
    if (rad < 0.0) {
        if (rad < -1e-9 * (a + b)) {
            throw std::domain_error("j_function: delta exceeds eps^2/7.256");
        }
        rad = 0.0;  // boundary case up to roundoff
    }
    return (std::sqrt(a) + std::sqrt(rad)) / deep_tube_factor;
}

// Additive constant for the generalized bound at a given eps ceiling:
// arcsinh of the maximum of j(., eps_max) over [0, eps_max^2/7.256].
// j is smooth with a single interior critical point on that arc, so a
// coarse scan bracket followed by golden-section refinement to 1e-12
// locates the maximum.
inline double r_min_for(double eps_max) {
    if (!(0.0 < eps_max && eps_max <= eps_max_limit)) {
        throw std::invalid_argument("r_min_for: need 0 < eps_max <= 1.475");
    }
    const double hi = eps_max * eps_max / depth_constant;
    const auto j = [eps_max](double d) { return j_function(d, eps_max); };

    constexpr int scan = 512;
    int best_i = 0;
    double best_v = j(0.0);
    for (int i = 1; i <= scan; ++i) {
        const double v = j(hi * i / scan);
        if (v > best_v) {
            best_v = v;
            best_i = i;
        }
    }

    constexpr double invphi = 0.6180339887498948482;
    double a = hi * std::max(best_i - 1, 0) / scan;
    double b = hi * std::min(best_i + 1, scan) / scan;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = j(c);
    double fd = j(d);
    while (b - a > 1e-12) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = j(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = j(d);
        }
    }
    return std::asinh(j(0.5 * (a + b)));
}

// Claimed lower bound for cosh r(eps): eps/sqrt(7.256 lambda).
inline double depth_lower_bound(double eps, double lambda) {
    if (!(0.0 < lambda && lambda <= cgm_lambda_max)) {
        throw std::invalid_argument("depth_lower_bound: need 0 < lambda <= 2.97");
    }
    return eps / std::sqrt(depth_constant * lambda);
}

// Smallest m >= 1 with cosh(m*lambda) - cos(m*tau) <= (2*pi/sqrt(3))*lambda.
// Existence is guaranteed for lambda <= 2.97; beyond
// m_max = ceil(arccosh(1 + bound)/lambda) + 1 the cosh term alone exceeds
// the bound, so running past it means something is broken and the search
// fails hard rather than silently.
inline std::int64_t cgm_power_search(double lambda, double tau) {
    if (!(0.0 < lambda && lambda <= cgm_lambda_max)) {
        throw std::invalid_argument("cgm_power_search: need 0 < lambda <= 2.97");
    }
    const double bound = (two_pi / std::sqrt(3.0)) * lambda;
    const double m_max = std::ceil(arccosh1p(bound) / lambda) + 1.0;
    for (double m = 1.0; m <= m_max; m += 1.0) {
        if (coshm1(m * lambda) + one_minus_cos(m * tau) <= bound) {
            return static_cast<std::int64_t>(m);
        }
    }
    throw std::runtime_error("cgm_power_search: exhausted search range");
}

// The multiplicative radius gap and its bound:
//   cosh r(eps)/cosh r(delta)  <=  sqrt(coshm1(eps)/coshm1(delta)),
// returned as (ratio, bound).  Equality holds exactly for nonsingular
// tori whose realizing isometry has trivial rotation.
inline std::pair<double, double> mult_gap_bound(const ModelSolidTorus& N, double delta,
                                                double eps) {
    if (!(0.0 < delta && delta < eps)) {
        throw std::invalid_argument("mult_gap_bound: need 0 < delta < eps");
    }
    const TubeRadiusResult rd = tube_radius(N, delta);
    if (rd.empty()) {
        throw std::domain_error("mult_gap_bound: delta-thin part is empty");
    }
    const TubeRadiusResult re = tube_radius(N, eps);
    const double ratio = std::cosh(re.radius) / std::cosh(rd.radius);
    const double bound = std::sqrt(coshm1(eps) / coshm1(delta));
    return {ratio, bound};
}

struct BoundsCertificate {
    double actual;             // measured tube distance
    double lower_linear;       // (eps - delta)/2
    ExtendedLength lower_log;  // arccosh(eps/sqrt(7.256 delta)) - r_min, may be -inf
    double upper;
    bool lower_ok;  // actual >= max(lower_linear, lower_log) - certificate_tol
    bool upper_ok;  // actual <= upper + certificate_tol
    Realizer realizer_delta;
    Realizer realizer_eps;
};

// Evaluate the two-sided bound on one model solid torus.  Hypotheses are
// validated strictly: 0 < delta < eps <= eps_max <= 1.475 and
// lambda <= delta.  For eps_max beyond 0.3 the additive constant becomes
// max(0.0424, r_min_for(eps_max)).
inline BoundsCertificate check_bounds(const ModelSolidTorus& N, double delta, double eps,
                                      double eps_max = 0.3) {
    if (!(0.0 < delta && delta < eps)) {
        throw std::invalid_argument("check_bounds: need 0 < delta < eps");
    }
    if (!(eps <= eps_max)) {
        throw std::invalid_argument("check_bounds: eps exceeds eps_max");
    }
    if (!(eps_max <= eps_max_limit)) {
        throw std::invalid_argument("check_bounds: eps_max exceeds 1.475");
    }
    if (!(N.lambda() <= delta)) {
        throw std::invalid_argument("check_bounds: core length exceeds delta");
    }

    const double r_min = eps_max > 0.3 ? std::max(base_r_min, r_min_for(eps_max)) : base_r_min;

    const TubeRadiusResult rd = tube_radius(N, delta);
    if (rd.empty()) {
        throw std::domain_error("check_bounds: delta-thin part is empty");
    }
    const TubeRadiusResult re = tube_radius(N, eps);

    BoundsCertificate cert{};
    cert.actual = re.radius - rd.radius;
    cert.lower_linear = 0.5 * (eps - delta);
    cert.lower_log = arccosh_ext(eps / std::sqrt(depth_constant * delta)) - r_min;
    cert.upper = upper_bound(delta, eps);
    cert.lower_ok = cert.actual >= std::max(cert.lower_linear, cert.lower_log) - certificate_tol;
    cert.upper_ok = cert.actual <= cert.upper + certificate_tol;
    cert.realizer_delta = *rd.realizer;
    cert.realizer_eps = *re.realizer;
    return cert;
}

}  // namespace tubedist
