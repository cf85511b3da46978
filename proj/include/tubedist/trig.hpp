#pragma once

// Hyperbolic/circular trig primitives on the extended real line.
//
// Lengths may take the formal value -infinity: arccosh of an argument
// below 1 is defined to be -inf, so that a maximum over a mixed set of
// defined and undefined radii can be taken with no special cases.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tubedist {

// A nonnegative real length, or -infinity where the quantity is undefined.
// -inf compares below every finite value; max() over a set containing only
// -inf is -inf; adding a finite constant keeps -inf.
using ExtendedLength = double;

inline constexpr double neg_infinity = -std::numeric_limits<double>::infinity();

inline bool is_neg_infinity(ExtendedLength x) {
    return std::isinf(x) && x < 0;
}

// 2*pi as the correctly rounded double (doubling the rounded pi is exact
// and lands on the double nearest 2*pi).
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// acosh(1 + m) for m >= 0.  Formulated in the increment so that the result
// keeps full relative accuracy as m -> 0, where acosh(1 + m) ~ sqrt(2m).
inline double arccosh1p(double m) {
    return std::log1p(m + std::sqrt(m * (2.0 + m)));
}

// arccosh extended by arccosh(x) = -inf for x < 1.
inline ExtendedLength arccosh_ext(double x) {
    const double u = x - 1.0;
    if (u < 0.0) return neg_infinity;
    return arccosh1p(u);
}

// Symmetric remainder: the unique x in [-b/2, b/2) with (a - x) in b*Z.
inline double sym_mod(double a, double b) {
    if (!(b > 0.0)) throw std::invalid_argument("sym_mod: modulus must be positive");
    double x = std::remainder(a, b);  // exact, lands in [-b/2, +b/2]
    if (x == 0.5 * b) x = -0.5 * b;   // half-open on the right
    return x;
}

// cosh(x) - 1 without cancellation (2 sinh^2(x/2)).
inline double coshm1(double x) {
    const double s = std::sinh(0.5 * x);
    return 2.0 * s * s;
}

// 1 - cos(x) without cancellation (2 sin^2(x/2)).
inline double one_minus_cos(double x) {
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s;
}

// f(x) = (cosh x - 1)/x^2, extended smoothly by f(0) = 1/2.
// Strictly increasing in |x|.  Series below 1e-4 keeps relative error
// through the switch under 1e-13.
inline double f_cosh(double x) {
    const double x2 = x * x;
    if (std::abs(x) < 1e-4) {
        return 0.5 + x2 / 24.0 + (x2 * x2) / 720.0;
    }
    return coshm1(x) / x2;
}

// g(x) = (1 - cos x)/x^2, extended smoothly by g(0) = 1/2.
// Strictly decreasing on [0, pi].
inline double g_cos(double x) {
    const double x2 = x * x;
    if (std::abs(x) < 1e-4) {
        return 0.5 - x2 / 24.0 + (x2 * x2) / 720.0;
    }
    return one_minus_cos(x) / x2;
}

}  // namespace tubedist
