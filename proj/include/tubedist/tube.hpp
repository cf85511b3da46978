#pragma once

// The model solid torus N_{alpha,lambda,tau}: quotient of the branched
// cover of H^3 along a geodesic by the group generated by an elliptic of
// angle alpha about the core and a loxodromic of complex length
// lambda + i*tau.  alpha = 2*pi is the nonsingular case.
//
// Provides the closed-form tube radius r(eps) together with the group
// element realizing it, distances between tubes, the horocusp analogue,
// and an independent brute-force radius oracle (displacement minimum plus
// bisection) used to cross-check the closed form.

#include "tubedist/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

namespace tubedist {

// Group element attaining the injectivity radius on a tube boundary:
// either the elliptic generator (singular tori only) or the n-th power
// of the loxodromic generator.
struct Realizer {
    enum class Kind { elliptic, power };

    Kind kind;
    std::int64_t n;  // power exponent; 0 for elliptic

    static Realizer elliptic() { return {Kind::elliptic, 0}; }
    static Realizer power(std::int64_t n) { return {Kind::power, n}; }

    bool is_elliptic() const { return kind == Kind::elliptic; }
    bool is_power() const { return kind == Kind::power; }

    friend bool operator==(const Realizer&, const Realizer&) = default;
};

class ModelSolidTorus {
public:
    // Requires 0 < alpha <= 2*pi and lambda > 0.  tau is canonicalized to
    // [-pi, pi) for nonsingular tori and to [-alpha/2, alpha/2) otherwise;
    // the radius formula only ever consumes reduced angles, so reducing
    // once at construction avoids drift.
    ModelSolidTorus(double alpha, double lambda, double tau)
        : alpha_(alpha), lambda_(lambda) {
        if (!(alpha > 0.0 && alpha <= two_pi)) {
            throw std::invalid_argument("ModelSolidTorus: cone angle must be in (0, 2*pi]");
        }
        if (!(lambda > 0.0)) {
            throw std::invalid_argument("ModelSolidTorus: core length must be positive");
        }
        tau_ = sym_mod(tau, angle_modulus());
    }

    double alpha() const { return alpha_; }
    double lambda() const { return lambda_; }
    double tau() const { return tau_; }

    bool nonsingular() const { return alpha_ == two_pi; }

    // Modulus for reducing rotation angles of powers of the core isometry.
    double angle_modulus() const { return nonsingular() ? two_pi : alpha_; }

private:
    double alpha_;
    double lambda_;
    double tau_;
};

struct TubeRadiusResult {
    ExtendedLength radius;             // -inf iff the eps-thin part is empty
    std::optional<Realizer> realizer;  // absent exactly when radius is -inf

    bool empty() const { return is_neg_infinity(radius); }
};

// Radius values this close together count as a tie; ties are broken
// toward the smallest power, with the elliptic losing to any power.
inline constexpr double realizer_tie_tol = 1e-12;

// Tube radius r(eps): the largest translation radius over the group.
//
//   nonsingular:  max over n >= 1 of trad(n*lambda, n*tau mod 2*pi, eps)
//   singular:     max of the elliptic term and the loxodromic maximum
//                 with angles reduced mod alpha; the elliptic term is
//                 trad(0, alpha, eps) for alpha < pi and eps/2 otherwise.
//
// The maximum is over a finite set: powers with n*lambda > eps contribute
// -inf.  The scan additionally stops once even a rotation-free power could
// not beat the current best, since trad(n*lambda, ., eps) is at most
// arccosh sqrt(coshm1(eps)/coshm1(n*lambda)), which decreases in n.
inline TubeRadiusResult tube_radius(const ModelSolidTorus& N, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("tube_radius: eps must be positive");

    ExtendedLength best = neg_infinity;
    std::optional<Realizer> who;
    if (!N.nonsingular()) {
        best = N.alpha() < std::numbers::pi ? trad(0.0, N.alpha(), eps) : 0.5 * eps;
        who = Realizer::elliptic();
    }

    const double A = coshm1(eps);
    const double lambda = N.lambda();
    const double mod = N.angle_modulus();

    // trad(n*lambda, ., eps) > best - tie_tol requires
    // coshm1(n*lambda) < A / cosh^2(best - tie_tol).
    double prune = A;
    if (best > 0.0) {
        const double cb = std::cosh(best - realizer_tie_tol);
        prune = std::min(prune, A / (cb * cb));
    }

    const double cap = std::floor(eps / lambda) + 1.0;
    for (double n = 1.0; n <= cap; n += 1.0) {
        const double B = coshm1(n * lambda);
        if (B > prune) break;
        const ExtendedLength r = trad(n * lambda, sym_mod(n * N.tau(), mod), eps);
        if (r > best + realizer_tie_tol) {
            best = r;
            who = Realizer::power(static_cast<std::int64_t>(n));
            const double cb = std::cosh(best - realizer_tie_tol);
            prune = std::min(A, A / (cb * cb));
        } else if (r >= best - realizer_tie_tol && who && who->is_elliptic()) {
            who = Realizer::power(static_cast<std::int64_t>(n));
            best = std::max(best, r);
        } else if (r > best) {
            best = r;  // within the tie band; earlier power keeps the credit
        }
    }

    if (is_neg_infinity(best)) who.reset();
    return {best, who};
}

// The group element realizing r(eps).  Errors when the thin part is empty.
inline Realizer power_for(const ModelSolidTorus& N, double eps) {
    const TubeRadiusResult res = tube_radius(N, eps);
    if (!res.realizer) {
        throw std::domain_error("power_for: eps-thin part is empty");
    }
    return *res.realizer;
}

// Distance between the delta- and eps-tube boundaries, r(eps) - r(delta).
inline double tube_distance(const ModelSolidTorus& N, double delta, double eps) {
    if (!(0.0 < delta && delta <= eps)) {
        throw std::invalid_argument("tube_distance: need 0 < delta <= eps");
    }
    const TubeRadiusResult rd = tube_radius(N, delta);
    if (rd.empty()) {
        throw std::domain_error("tube_distance: delta-thin part is empty");
    }
    return tube_radius(N, eps).radius - rd.radius;
}

// Distance between the delta-thin and eps-thick parts of a horocusp.
inline double cusp_distance(double delta, double eps) {
    if (!(0.0 < delta && delta <= eps)) {
        throw std::invalid_argument("cusp_distance: need 0 < delta <= eps");
    }
    return std::log(std::sinh(0.5 * eps) / std::sinh(0.5 * delta));
}

// Twice the injectivity radius at radius r from the core: the minimum
// displacement over nontrivial deck transformations.  The n-scan stops
// once even a rotation-free power must displace more than the running
// minimum D, i.e. once coshm1(n*lambda)*cosh^2 r >= coshm1(D); this bound
// is reached no later than n = ceil(D/lambda), since power n displaces by
// at least n*lambda.
inline double injrad_at_radius(const ModelSolidTorus& N, double r) {
    if (r < 0.0) throw std::invalid_argument("injrad_at_radius: r must be nonnegative");

    const CylindricalPoint base{r, 0.0, 0.0};
    double best = std::numeric_limits<double>::infinity();
    if (!N.nonsingular()) {
        best = cyl_distance(base, CylindricalPoint{r, 0.0, N.alpha()});
    }

    const double ch = std::cosh(r);
    const double ch2 = ch * ch;
    const double lambda = N.lambda();
    const double mod = N.angle_modulus();

    double prune = std::isinf(best) ? std::numeric_limits<double>::infinity()
                                    : coshm1(best) / ch2;
    for (double n = 1.0;; n += 1.0) {
        if (coshm1(n * lambda) >= prune) break;
        const double d =
            cyl_distance(base, CylindricalPoint{r, n * lambda, sym_mod(n * N.tau(), mod)});
        if (d < best) {
            best = d;
            prune = coshm1(best) / ch2;
        }
    }
    return best;
}

// Tube radius recovered from first principles: solve
// injrad_at_radius(N, r) = eps for r by bisection, valid because the
// displacement minimum is strictly increasing in r.  Returns -inf when
// already the core is moved further than eps (nonsingular, eps < lambda).
inline ExtendedLength tube_radius_oracle(const ModelSolidTorus& N, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("tube_radius_oracle: eps must be positive");
    if (N.nonsingular() && eps < N.lambda()) return neg_infinity;

    constexpr double bisect_tol = 1e-10;
    double lo = 0.0;
    double hi = 1.0;
    while (injrad_at_radius(N, hi) <= eps && hi < 64.0) hi *= 2.0;
    while (hi - lo > bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        if (injrad_at_radius(N, mid) < eps) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace tubedist
