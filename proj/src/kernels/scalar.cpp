#include <algorithm>
#include <cmath>

#include "kernels/kernels_impl.hpp"

namespace symrpr::kernels::detail::scalar {

void curve_c(const CurveCoeffs& k, const double* t, double* d2, double* d3, std::size_t n) {
    const double b = k.b, h = k.h, d = k.d;
    const double a2 = (2.0 * d - b) * h;
    const double a1 = 2.0 * d * d - 2.0 * b * d - 2.0 * h * h;
    const double a0 = (b - 2.0 * d) * h;
    const double e1 = 2.0 * (d - b);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = t[i];
        if (std::abs(x) <= 1.0) {
            const double w = 1.0 + x * x;
            const double den = w * w * h;
            const double lin = h * x + d;
            d2[i] = b * ((a2 * x + a1) * x + a0) / den;
            d3[i] = lin * lin * ((h * x + e1) * x - h) / den;
        } else {
            // Same fractions with numerator and denominator divided by t^4.
            const double u = 1.0 / x;
            const double w = 1.0 + u * u;
            const double den = w * w * h;
            const double lin = h + d * u;
            d2[i] = b * u * u * ((a0 * u + a1) * u + a2) / den;
            d3[i] = lin * lin * ((-h * u + e1) * u + h) / den;
        }
    }
}

void discriminant(const CurveCoeffs& k, const double* d2, const double* d3, double* disc, double* scale,
                  std::size_t n) {
    const double b = k.b, h = k.h, d = k.d;
    const double k2 = b * h * h;
    const double k1 = 2.0 * b * d * h - b * b * h;
    const double k0 = b * d * d - b * b * d;
    for (std::size_t i = 0; i < n; ++i) {
        const double c3 = d2[i] * h;
        const double c2 = k2 - b * d3[i] + d2[i] * d;
        const double c1 = k1 + d2[i] * h;
        const double c0 = -b * d3[i] + d2[i] * d + k0;
        disc[i] = 18.0 * c3 * c2 * c1 * c0 - 4.0 * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 -
                  4.0 * c3 * c1 * c1 * c1 - 27.0 * c3 * c3 * c0 * c0;
        const double m = std::max(std::max(std::abs(c3), std::abs(c2)), std::max(std::abs(c1), std::abs(c0)));
        const double m2 = m * m;
        scale[i] = m2 * m2;
    }
}

void leg_lengths(const CurveCoeffs& k, const double* c, const double* s, const double* r, const double* g,
                 double* r1, double* r2, double* r3, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double g2 = g[i] * g[i];
        const double e2 = k.b * c[i] - r[i];
        const double e3 = k.d * c[i] + k.h * s[i] - r[i];
        r1[i] = 4.0 * (r[i] * r[i] + g2);
        r2[i] = 4.0 * (e2 * e2 + g2);
        r3[i] = 4.0 * (e3 * e3 + g2);
    }
}

}  // namespace symrpr::kernels::detail::scalar
