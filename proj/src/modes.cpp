#include "symrpr/modes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "symrpr/error.hpp"
#include "symrpr/singularity.hpp"

namespace symrpr {

namespace {

CharacteristicCubic affine_step(const CharacteristicCubic& a, const CharacteristicCubic& b) {
    return {b.c3 - a.c3, b.c2 - a.c2, b.c1 - a.c1, b.c0 - a.c0};
}

// Smallest root u > 0 of a u^2 + b u + c, or NaN.
double first_positive_root(double a, double b, double c) {
    double best = std::nan("");
    auto consider = [&](double u) {
        if (u > 0.0 && std::isfinite(u) && !(u >= best)) best = u;
    };
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (std::abs(a) <= 1e-14 * scale) {
        if (b != 0.0) consider(-c / b);
        return best;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return best;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    consider(q / a);
    if (q != 0.0) consider(c / q);
    return best;
}

}  // namespace

std::pair<double, double> characteristic_r(const GeometryParams& geom, double psi) {
    const double b = geom.b(), h = geom.h(), d = geom.d();
    const double mid = (h * (2.0 * d + b) * std::cos(psi) + (h * h + b * d - d * d) * std::sin(psi)) / (4.0 * h);
    const double half = std::sqrt((h * h + d * d) * (h * h + d * d + b * b - 2.0 * b * d)) / (4.0 * h);
    return {mid - half, mid + half};
}

AspectId aspect_of(const GeometryParams& geom, const GlidePose& pose, double tol) {
    const double side = pose.r - gamma_r(geom, pose.psi);
    if (std::abs(pose.g) <= tol || std::abs(side) <= tol) {
        std::ostringstream msg;
        msg << "pose (" << pose.psi << ", " << pose.r << ", " << pose.g << ") is singular: |g| = "
            << std::abs(pose.g) << ", |r - gamma_r| = " << std::abs(side);
        throw Error(ErrorCode::OnSingularity, msg.str());
    }
    return {pose.g > 0.0 ? 1 : -1, side > 0.0 ? 1 : -1};
}

AssemblyLabel label_pose(const GeometryParams& geom, const GlidePose& pose, double tol) {
    const AspectId aspect = aspect_of(geom, pose, tol);
    const DeltaPair start = deltas_from_pose(geom, pose.psi, pose.r);
    switch (is_inside_deltoid(geom, start.delta2, start.delta3, tol)) {
        case DeltoidSide::Outside: return {0};
        case DeltoidSide::OnCurve:
            throw Error(ErrorCode::OnCharacteristicSurface, "joint image lies on the discriminant curve");
        case DeltoidSide::Inside: break;
    }

    // Along the ray r = r0 + sigma u the deltas move affinely, so the cubic
    // rotated to psi has coefficients affine in u and constant term zero
    // (tan(psi) stays a root). The remaining quadratic k3 t^2 + k2 t + k1
    // carries the sign of the discriminant.
    const double sigma = static_cast<double>(aspect.gamma_side);
    const double c = std::cos(pose.psi);
    const double s = geom.d() * c + geom.h() * std::sin(pose.psi);
    const CharacteristicCubic k0 = rotate_cubic(characteristic_cubic(geom, start.delta2, start.delta3), pose.psi);
    const CharacteristicCubic k_unit = rotate_cubic(
        characteristic_cubic(geom, start.delta2 - 2.0 * geom.b() * c * sigma, start.delta3 - 2.0 * s * sigma),
        pose.psi);
    const CharacteristicCubic k1 = affine_step(k0, k_unit);

    const double qa = k1.c2 * k1.c2 - 4.0 * k1.c3 * k1.c1;
    const double qb = 2.0 * k0.c2 * k1.c2 - 4.0 * (k0.c3 * k1.c1 + k1.c3 * k0.c1);
    const double qc = k0.c2 * k0.c2 - 4.0 * k0.c3 * k0.c1;
    const double u = first_positive_root(qa, qb, qc);
    if (!std::isfinite(u)) {
        throw Error(ErrorCode::DegeneratePolynomial, "labeling ray does not leave the deltoid");
    }

    const CharacteristicCubic exit{k0.c3 + u * k1.c3, k0.c2 + u * k1.c2, k0.c1 + u * k1.c1, 0.0};
    return {classify_arc(geom, pose.psi + double_root_angle(exit), tol)};
}

std::vector<CharacteristicRow> characteristic_section(const GeometryParams& geom, int samples) {
    const int n = std::max(samples, 1);
    std::vector<CharacteristicRow> rows;
    rows.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double psi = -kHalfPi + kPi * static_cast<double>(i) / n;
        const auto [lo, hi] = characteristic_r(geom, psi);
        rows.push_back({psi, gamma_r(geom, psi), lo, hi});
    }
    return rows;
}

}  // namespace symrpr
