#pragma once

// Cylindrical-coordinate geometry around a core geodesic.
//
// Coordinates (r, zeta, theta) measure radius from the core, signed
// length along it, and rotation angle about it.  The metric is
//   ds^2 = dr^2 + cosh^2(r) dzeta^2 + sinh^2(r) dtheta^2,
// and in the infinite cyclic branched cover the angle theta is unbounded.

#include "tubedist/trig.hpp"

namespace tubedist {

struct CylindricalPoint {
    double r;      // radius from the core, >= 0
    double zeta;   // longitudinal coordinate
    double theta;  // angular coordinate, radians
};

// Complex length lambda + i*tau of an isometry translating the core.
struct ComplexLength {
    double lambda;  // translation distance, >= 0
    double tau;     // rotation angle, radians
};

// How to interpret the angular difference between two points.
//   ambient: theta differences live in the branched cover and may exceed
//            pi, in which case the geodesic passes through the core and
//            cos(dtheta) is clamped to -1.
//   reduced: the caller has already reduced the difference to |.| <= pi.
enum class AngleBranch { ambient, reduced };

// Distance between two points on a common equidistant cylinder.
// With m = (cosh(dzeta) - 1) cosh^2 r + (1 - cos(dtheta)) sinh^2 r this is
// acosh(1 + m); the m form avoids cancellation for nearby points.
inline double cyl_distance(const CylindricalPoint& p, const CylindricalPoint& q,
                           AngleBranch branch = AngleBranch::ambient) {
    if (p.r != q.r) {
        throw std::invalid_argument("cyl_distance: points must lie at a common radius");
    }
    const double dzeta = p.zeta - q.zeta;
    const double dtheta = p.theta - q.theta;
    if (branch == AngleBranch::reduced && std::abs(dtheta) > std::numbers::pi) {
        throw std::invalid_argument("cyl_distance: reduced branch requires |dtheta| <= pi");
    }
    const double ch = std::cosh(p.r);
    const double sh = std::sinh(p.r);
    const double c = std::abs(dtheta) >= std::numbers::pi ? 2.0 : one_minus_cos(dtheta);
    const double m = coshm1(dzeta) * ch * ch + c * sh * sh;
    return arccosh1p(m);
}

// Translation radius: the radius at which an isometry of complex length
// lambda + i*theta moves points by exactly eps,
//   trad = arccosh sqrt( (cosh eps - cos theta) / (cosh lambda - cos theta) ),
// or -inf when no such radius exists (eps < lambda).  Numerator and
// denominator are assembled from cosh-1 and 1-cos pieces so nothing
// cancels when eps, theta, lambda are all small.
inline ExtendedLength trad(double lambda, double theta, double eps) {
    if (lambda < 0.0 || eps < 0.0) {
        throw std::invalid_argument("trad: lambda and eps must be nonnegative");
    }
    if (std::abs(theta) > std::numbers::pi) {
        throw std::invalid_argument("trad: |theta| must be <= pi (reduce with sym_mod)");
    }
    const double c = one_minus_cos(theta);
    const double den = coshm1(lambda) + c;
    if (den == 0.0) {
        throw std::invalid_argument("trad: identity isometry (lambda = theta = 0)");
    }
    const double u = (coshm1(eps) - coshm1(lambda)) / den;  // cosh^2(trad) - 1
    if (u < 0.0) return neg_infinity;
    const double w = u / (1.0 + std::sqrt(1.0 + u));  // sqrt(1+u) - 1
    return arccosh1p(w);
}

// Distance in the flat metric of the cylinder at radius r between points
// with coordinate displacements (dzeta, dtheta); dtheta is the lifted,
// unreduced angular difference.
inline double euclidean_distance(double r, double dzeta, double dtheta) {
    return std::hypot(dzeta * std::cosh(r), dtheta * std::sinh(r));
}

// Length of the cylindrical projection to radius R of the flat geodesic
// with displacements (dzeta, dtheta) at radius r < R.
inline double project_geodesic_length(double dzeta, double dtheta, double r, double R) {
    if (!(0.0 < r && r < R)) {
        throw std::invalid_argument("project_geodesic_length: need 0 < r < R");
    }
    return euclidean_distance(R, dzeta, dtheta);
}

// Area of the equidistant torus at radius r in a solid torus with cone
// angle alpha and core length lambda: (alpha*lambda/2) sinh(2r).
inline double torus_area(double alpha, double lambda, double r) {
    return 0.5 * alpha * lambda * std::sinh(2.0 * r);
}

}  // namespace tubedist
