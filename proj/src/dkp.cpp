#include "symrpr/dkp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>

#include "symrpr/error.hpp"

namespace symrpr {

namespace {

constexpr double kClusterTol = 1e-7;
constexpr double kCosBranch = 1e-6;

double poly_eval(std::span<const double> desc, double x) {
    double acc = 0.0;
    for (double c : desc) acc = acc * x + c;
    return acc;
}

double poly_deriv(std::span<const double> desc, double x) {
    const std::size_t n = desc.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc = acc * x + desc[i] * static_cast<double>(n - i);
    return acc;
}

// Newton steps that are kept only while the residual shrinks.
double polish(std::span<const double> desc, double x) {
    double fx = std::abs(poly_eval(desc, x));
    for (int iter = 0; iter < 4 && fx > 0.0; ++iter) {
        const double df = poly_deriv(desc, x);
        if (df == 0.0) break;
        const double next = x - poly_eval(desc, x) / df;
        const double fn = std::abs(poly_eval(desc, next));
        if (!(fn < fx)) break;
        x = next;
        fx = fn;
    }
    return x;
}

// Real roots of a x^2 + b x + c with a != 0; a double root is listed twice.
std::vector<double> quadratic_roots(double a, double b, double c) {
    const double disc = b * b - 4.0 * a * c;
    const double scale = std::max(b * b, std::abs(4.0 * a * c));
    if (std::abs(disc) <= 1e-14 * scale) {
        const double x = -b / (2.0 * a);
        return {x, x};
    }
    if (disc < 0.0) return {};
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) return {0.0, 0.0};
    return {q / a, c / q};
}

// Real roots of x^3 + B x^2 + C x + D, repeated roots listed with repetition.
std::vector<double> monic_cubic_roots(double B, double C, double D) {
    const double shift = B / 3.0;
    const double p = C - B * B / 3.0;
    const double q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
    const double half_q = 0.5 * q;
    const double third_p = p / 3.0;
    const double Q = half_q * half_q + third_p * third_p * third_p;
    const double scale = half_q * half_q + std::abs(third_p * third_p * third_p);

    if (scale == 0.0) return {-shift, -shift, -shift};
    if (std::abs(Q) <= 1e-12 * scale) {
        if (std::abs(p) <= 1e-12 * (1.0 + B * B)) return {-shift, -shift, -shift};
        const double simple = 3.0 * q / p;
        const double twice = -1.5 * q / p;
        return {simple - shift, twice - shift, twice - shift};
    }
    if (Q > 0.0) {
        const double a = -std::copysign(std::cbrt(std::abs(half_q) + std::sqrt(Q)), q);
        const double b = (a != 0.0) ? -third_p / a : 0.0;
        return {a + b - shift};
    }
    const double m = 2.0 * std::sqrt(-third_p);
    double arg = 3.0 * q / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    std::vector<double> out(3);
    for (int k = 0; k < 3; ++k) out[k] = m * std::cos(theta - 2.0 * kPi * k / 3.0) - shift;
    return out;
}

std::vector<CubicRoot> cluster(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    std::vector<CubicRoot> out;
    std::size_t i = 0;
    while (i < xs.size()) {
        std::size_t j = i + 1;
        double sum = xs[i];
        while (j < xs.size() && std::abs(xs[j] - xs[j - 1]) <= kClusterTol * (1.0 + std::abs(xs[j]))) {
            sum += xs[j];
            ++j;
        }
        out.push_back({ExtendedReal::finite(sum / static_cast<double>(j - i)), static_cast<int>(j - i)});
        i = j;
    }
    return out;
}

}  // namespace

double ExtendedReal::to_psi() const { return infinite ? -kHalfPi : std::atan(value); }

ExtendedReal ExtendedReal::from_psi(double psi) {
    const double reduced = reduce_half_turn(psi);
    if (reduced == -kHalfPi) return at_infinity();
    return finite(std::tan(reduced));
}

double CharacteristicCubic::norm() const {
    return std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
}

double CharacteristicCubic::eval(double t) const { return ((c3 * t + c2) * t + c1) * t + c0; }

double CharacteristicCubic::eval_angle(double psi) const {
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    return ((c3 * s + c2 * c) * s + c1 * c * c) * s + c0 * c * c * c;
}

double CharacteristicCubic::eval_angle_derivative(double psi) const {
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    return 3.0 * c3 * s * s * c + c2 * (2.0 * s * c * c - s * s * s) + c1 * (c * c * c - 2.0 * s * s * c) -
           3.0 * c0 * c * c * s;
}

CharacteristicCubic characteristic_cubic(const GeometryParams& geom, double delta2, double delta3) {
    const double b = geom.b();
    const double h = geom.h();
    const double d = geom.d();
    return {delta2 * h, b * h * h - b * delta3 + delta2 * d, 2.0 * b * d * h - b * b * h + delta2 * h,
            -b * delta3 + delta2 * d + b * d * d - b * b * d};
}

std::vector<CubicRoot> solve_cubic_real(const CharacteristicCubic& c, double tol) {
    const double norm = c.norm();
    if (!(norm > tol)) {
        throw Error(ErrorCode::DegeneratePolynomial, "all coefficients of the cubic vanish");
    }
    std::array<double, 4> desc{c.c3, c.c2, c.c1, c.c0};
    int lead = 0;
    while (lead < 3 && std::abs(desc[lead]) <= tol * norm) ++lead;

    const std::span<const double> tail(desc.data() + lead, desc.size() - lead);
    std::vector<double> finite;
    switch (tail.size()) {
        case 4:
            finite = monic_cubic_roots(tail[1] / tail[0], tail[2] / tail[0], tail[3] / tail[0]);
            break;
        case 3:
            finite = quadratic_roots(tail[0], tail[1], tail[2]);
            break;
        case 2:
            finite = {-tail[1] / tail[0]};
            break;
        default:
            break;
    }
    for (double& x : finite) x = polish(tail, x);

    std::vector<CubicRoot> out = cluster(std::move(finite));
    if (lead > 0) out.push_back({ExtendedReal::at_infinity(), lead});
    return out;
}

double homogeneous_discriminant(const CharacteristicCubic& c) {
    const double a = c.c3, b = c.c2, cc = c.c1, d = c.c0;
    return 18.0 * a * b * cc * d - 4.0 * b * b * b * d + b * b * cc * cc - 4.0 * a * cc * cc * cc -
           27.0 * a * a * d * d;
}

double cubic_discriminant(const CharacteristicCubic& c, double tol) {
    if (std::abs(c.c3) <= tol * c.norm()) {
        throw Error(ErrorCode::LeadingCoefficientZero, "degenerate branch: leading coefficient vanishes");
    }
    return homogeneous_discriminant(c);
}

CharacteristicCubic rotate_cubic(const CharacteristicCubic& c, double psi0) {
    // Linear forms in (C, S) = (cos theta, sin theta), stored as [C, S].
    const double cs = std::cos(psi0);
    const double sn = std::sin(psi0);
    const std::array<double, 2> sin_form{sn, cs};
    const std::array<double, 2> cos_form{cs, -sn};

    // Homogeneous polys indexed by the power of S.
    auto mul = [](const std::vector<double>& p, const std::array<double, 2>& l) {
        std::vector<double> out(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            out[i] += p[i] * l[0];
            out[i + 1] += p[i] * l[1];
        }
        return out;
    };
    const std::array<double, 4> coeff{c.c0, c.c1, c.c2, c.c3};  // by power of sin
    std::vector<double> total(4, 0.0);
    for (int k = 0; k <= 3; ++k) {
        std::vector<double> term{coeff[k]};
        for (int i = 0; i < k; ++i) term = mul(term, sin_form);
        for (int i = k; i < 3; ++i) term = mul(term, cos_form);
        for (int i = 0; i < 4; ++i) total[i] += term[i];
    }
    return {total[3], total[2], total[1], total[0]};
}

double double_root_angle(const CharacteristicCubic& k) {
    if (std::abs(k.c3) >= std::abs(k.c1)) return std::atan(-k.c2 / (2.0 * k.c3));
    return std::atan(-2.0 * k.c1 / k.c2);
}

double r_from_psi(const GeometryParams& geom, double psi, double delta2, double delta3) {
    const double c = std::cos(psi);
    if (std::abs(c) >= kCosBranch) {
        const double bc = geom.b() * c;
        return 0.5 * (bc - delta2 / bc);
    }
    const double proj = geom.d() * c + geom.h() * std::sin(psi);
    return (proj * proj - delta3) / (2.0 * proj);
}

std::optional<GlideBranches> g_from_r(double rho1_sq, double r, double tol) {
    const double g_sq = 0.25 * rho1_sq - r * r;
    if (std::abs(g_sq) <= tol * (1.0 + rho1_sq)) return GlideBranches{0.0, 0.0, true};
    if (g_sq < 0.0) return std::nullopt;
    const double g = std::sqrt(g_sq);
    return GlideBranches{g, -g, false};
}

double forward_residual(const GeometryParams& geom, const GlidePose& pose, const JointSquares& joint) {
    const JointSquares fwd = leg_lengths_squared(geom, pose);
    return std::max({std::abs(fwd.rho1_sq - joint.rho1_sq), std::abs(fwd.rho2_sq - joint.rho2_sq),
                     std::abs(fwd.rho3_sq - joint.rho3_sq)});
}

std::vector<PlanarBranch> solve_planar(const GeometryParams& geom, double delta2, double delta3,
                                       double tol) {
    const CharacteristicCubic cubic = characteristic_cubic(geom, delta2, delta3);
    const std::vector<CubicRoot> roots = solve_cubic_real(cubic, tol);

    std::vector<PlanarBranch> out;
    out.reserve(roots.size());
    for (const CubicRoot& root : roots) {
        double psi = root.t.to_psi();
        if (root.multiplicity == 1) {
            // Polish on the angle form: well conditioned through psi = +-pi/2,
            // where the polynomial in t loses its leading term.
            double f = std::abs(cubic.eval_angle(psi));
            for (int iter = 0; iter < 4 && f > 0.0; ++iter) {
                const double df = cubic.eval_angle_derivative(psi);
                if (df == 0.0) break;
                const double next = psi - cubic.eval_angle(psi) / df;
                const double fn = std::abs(cubic.eval_angle(next));
                if (!(fn < f)) break;
                psi = next;
                f = fn;
            }
        }
        psi = reduce_half_turn(psi);
        out.push_back({psi, r_from_psi(geom, psi, delta2, delta3), root.t, root.multiplicity});
    }
    std::sort(out.begin(), out.end(), [](const PlanarBranch& a, const PlanarBranch& b) { return a.psi < b.psi; });
    return out;
}

std::vector<DkpSolution> solve_dkp(const GeometryParams& geom, const JointSquares& joint, double tol) {
    const NuDelta nd = joint_to_nudelta(joint);
    std::vector<DkpSolution> out;
    for (const PlanarBranch& branch : solve_planar(geom, nd.delta2, nd.delta3, tol)) {
        const auto glides = g_from_r(joint.rho1_sq, branch.r, tol);
        if (!glides) continue;
        auto push = [&](double g, bool on_s2) {
            DkpSolution sol;
            sol.pose = GlidePose{branch.psi, branch.r, g};
            sol.t = branch.t;
            sol.multiplicity = branch.multiplicity;
            sol.on_s2 = on_s2;
            sol.residual = forward_residual(geom, sol.pose, joint);
            out.push_back(sol);
        };
        if (glides->single) {
            push(0.0, true);
        } else {
            push(glides->g_plus, false);
            push(glides->g_minus, false);
        }
    }
    return out;
}

}  // namespace symrpr
