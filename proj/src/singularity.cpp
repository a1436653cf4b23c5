#include "symrpr/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "symrpr/error.hpp"
#include "symrpr/kernels.hpp"

namespace symrpr {

std::string_view to_string(DeltoidSide side) {
    switch (side) {
        case DeltoidSide::Inside: return "inside";
        case DeltoidSide::Outside: return "outside";
        case DeltoidSide::OnCurve: return "on-curve";
    }
    return "?";
}

std::string_view to_string(Locus locus) {
    switch (locus) {
        case Locus::C: return "C";
        case Locus::Gamma: return "Gamma";
        case Locus::S1Slice: return "S1";
        case Locus::S2Slice: return "S2";
        case Locus::Sigma1: return "Sigma1";
        case Locus::Sigma2: return "Sigma2";
        case Locus::Characteristic: return "Characteristic";
    }
    return "?";
}

double gamma_r(const GeometryParams& geom, double psi) {
    const double b = geom.b(), h = geom.h(), d = geom.d();
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    return (c / h) * ((h * h + b * d - d * d) * c * s + (2.0 * d - b) * h * c * c + (b - d) * h);
}

DeltaPair curve_C(const GeometryParams& geom, ExtendedReal t) {
    if (t.infinite) return {0.0, geom.h() * geom.h()};
    double d2 = 0.0, d3 = 0.0;
    kernels::curve_c(geom, std::span<const double>(&t.value, 1), std::span<double>(&d2, 1),
                     std::span<double>(&d3, 1), kernels::Isa::Scalar);
    return {d2, d3};
}

CharacteristicCubic cusp_cubic(const GeometryParams& geom) {
    const double b = geom.b(), h = geom.h(), d = geom.d();
    return {(b - 2.0 * d) * h, 3.0 * (h * h - d * d + d * b), 3.0 * h * (2.0 * d - b), d * d - d * b - h * h};
}

double cusp_cubic_discriminant(const GeometryParams& geom) { return homogeneous_discriminant(cusp_cubic(geom)); }

double cusp_discriminant_closed_form(const GeometryParams& geom) {
    const double b = geom.b(), h = geom.h(), d = geom.d();
    const double u = d * d + h * h;
    const double v = (d - b) * (d - b) + h * h;
    return 108.0 * u * u * v * v;
}

std::array<CuspPoint, 3> cusp_points(const GeometryParams& geom) {
    const double b = geom.b(), h = geom.h(), d = geom.d();
    // tan(3 psi) = (d^2 - b d - h^2) / ((b - 2d) h); atan2 covers b = 2d.
    const double base = std::atan2(d * d - b * d - h * h, (b - 2.0 * d) * h) / 3.0;
    std::array<CuspPoint, 3> out{};
    for (int k = 0; k < 3; ++k) {
        const double psi = reduce_half_turn(base + k * kPi / 3.0);
        const double r = gamma_r(geom, psi);
        out[k] = {psi, r, 4.0 * r * r, ExtendedReal::from_psi(psi), k};
    }
    return out;
}

std::array<double, 3> sorted_cusp_angles(const GeometryParams& geom) {
    const auto cusps = cusp_points(geom);
    std::array<double, 3> a{cusps[0].psi_cusp, cusps[1].psi_cusp, cusps[2].psi_cusp};
    std::sort(a.begin(), a.end());
    return a;
}

Bifurcations bifurcation_values(const GeometryParams& geom) {
    const auto cusps = cusp_points(geom);
    std::array<double, 3> beta{cusps[0].beta, cusps[1].beta, cusps[2].beta};
    std::sort(beta.begin(), beta.end());
    return {beta[0], beta[1], beta[2]};
}

int count_cusps(const GeometryParams& geom, double rho1_sq, double tol) {
    const Bifurcations bif = bifurcation_values(geom);
    int count = 0;
    for (double beta : {bif.beta1, bif.beta2, bif.beta3}) {
        if (std::abs(rho1_sq - beta) <= tol * (1.0 + beta)) {
            std::ostringstream msg;
            msg << "rho1^2 = " << rho1_sq << " coincides with bifurcation value " << beta;
            throw Error(ErrorCode::OnBifurcationBoundary, msg.str());
        }
        if (rho1_sq > beta) ++count;
    }
    return count;
}

JointSquares s1_point(const GeometryParams& geom, double psi, double g) {
    return leg_lengths_squared(geom, {psi, gamma_r(geom, psi), g});
}

JointSquares s2_point(const GeometryParams& geom, double psi, double r) {
    return leg_lengths_squared(geom, {psi, r, 0.0});
}

DeltoidSide is_inside_deltoid(const GeometryParams& geom, double delta2, double delta3, double tol) {
    const CharacteristicCubic cubic = characteristic_cubic(geom, delta2, delta3);
    const double disc = homogeneous_discriminant(cubic);
    const double n = cubic.norm();
    if (std::abs(disc) <= tol * n * n * n * n) return DeltoidSide::OnCurve;
    return disc > 0.0 ? DeltoidSide::Inside : DeltoidSide::Outside;
}

bool on_s2(const GeometryParams& geom, const JointSquares& joint, double tol) {
    const NuDelta nd = joint_to_nudelta(joint);
    for (const PlanarBranch& branch : solve_planar(geom, nd.delta2, nd.delta3, tol)) {
        if (std::abs(4.0 * branch.r * branch.r - joint.rho1_sq) <= tol * (1.0 + joint.rho1_sq)) return true;
    }
    return false;
}

int classify_arc(const GeometryParams& geom, double psi, double tol) {
    const auto a = sorted_cusp_angles(geom);
    const double x = reduce_half_turn(psi);
    for (double cusp : a) {
        if (std::abs(reduce_half_turn(x - cusp)) <= tol) {
            std::ostringstream msg;
            msg << "parameter " << x << " is at cusp angle " << cusp;
            throw Error(ErrorCode::AtCusp, msg.str());
        }
    }
    if (x > a[0] && x < a[1]) return 1;
    if (x > a[1] && x < a[2]) return 2;
    return 3;
}

std::array<double, 2> arc_interval(const GeometryParams& geom, int arc) {
    const auto a = sorted_cusp_angles(geom);
    switch (arc) {
        case 1: return {a[0], a[1]};
        case 2: return {a[1], a[2]};
        case 3: return {a[2], a[0] + kPi};
        default: throw std::invalid_argument("arc label must be 1, 2 or 3");
    }
}

std::vector<double> GridRange::values() const {
    if (count <= 1) return {lo};
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return out;
}

std::vector<SweepCell> bifurcation_sweep(double b, const GridRange& h_range, const GridRange& d_range) {
    std::vector<SweepCell> out;
    const auto hs = h_range.values();
    const auto ds = d_range.values();
    out.reserve(hs.size() * ds.size());
    for (double h : hs) {
        for (double d : ds) out.push_back({h, d, bifurcation_values(GeometryParams(b, h, d))});
    }
    return out;
}

namespace {

// Closed intervals of [lo, lo + period) where f >= 0, with f periodic.
// Endpoints are refined by bisection; a run through the seam is merged so
// that its upper end may exceed lo + period.
std::vector<std::array<double, 2>> periodic_nonnegative(const std::function<double(double)>& f, double lo,
                                                        double period, int grid) {
    std::vector<double> xs(static_cast<std::size_t>(grid) + 1);
    std::vector<double> fs(xs.size());
    for (int i = 0; i <= grid; ++i) {
        xs[i] = lo + period * static_cast<double>(i) / grid;
        fs[i] = f(xs[i]);
    }
    auto refine = [&](double a, double b) {
        // f(a) >= 0 > f(b) or the reverse; return the sign-change point
        const bool a_ok = f(a) >= 0.0;
        for (int it = 0; it < 80; ++it) {
            const double m = 0.5 * (a + b);
            if ((f(m) >= 0.0) == a_ok) a = m;
            else b = m;
        }
        return a_ok ? a : b;
    };
    std::vector<std::array<double, 2>> runs;
    bool inside = fs[0] >= 0.0;
    double start = xs[0];
    for (int i = 1; i <= grid; ++i) {
        const bool now = fs[i] >= 0.0;
        if (now != inside) {
            const double edge = refine(xs[i - 1], xs[i]);
            if (inside) runs.push_back({start, edge});
            else start = edge;
            inside = now;
        }
    }
    if (inside) runs.push_back({start, xs[grid]});
    if (runs.size() == 1 && runs[0][0] == xs[0] && runs[0][1] == xs[grid]) return runs;
    if (runs.size() >= 2 && runs.front()[0] == xs[0] && runs.back()[1] == xs[grid]) {
        runs.back()[1] = runs.front()[1] + period;
        runs.erase(runs.begin());
    }
    return runs;
}

Polyline to_polyline(Locus locus, const std::vector<SampledPoint>& pts) {
    Polyline line{locus, {}};
    line.points.reserve(pts.size());
    for (const auto& p : pts) line.points.push_back({locus, p.param, p.x, p.y});
    return line;
}

void curve_c_at_angles(const GeometryParams& geom, std::span<const double> psi, std::span<double> d2,
                       std::span<double> d3) {
    std::vector<double> t(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) t[i] = std::tan(psi[i]);
    kernels::curve_c(geom, t, d2, d3);
}

std::vector<double> cusp_params(const GeometryParams& geom, double lo, double hi) {
    std::vector<double> out;
    for (double a : sorted_cusp_angles(geom)) {
        for (double shift : {-kPi, 0.0, kPi}) {
            if (a + shift >= lo && a + shift <= hi) out.push_back(a + shift);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SamplingOptions scaled(const SamplingOptions& opts, double fraction) {
    SamplingOptions out = opts;
    out.samples = std::max(8, static_cast<int>(std::lround(opts.samples * fraction)));
    return out;
}

}  // namespace

Polyline sample_curve_C(const GeometryParams& geom, const SamplingOptions& opts) {
    const BatchCurve curve = [&](std::span<const double> psi, std::span<double> xs, std::span<double> ys) {
        curve_c_at_angles(geom, psi, xs, ys);
    };
    const auto forced = cusp_params(geom, -kHalfPi, kHalfPi);
    return to_polyline(Locus::C, adaptive_sample(curve, -kHalfPi, kHalfPi, forced, opts));
}

std::vector<Polyline> sample_rho1_slice(const GeometryParams& geom, double rho1_sq, const SamplingOptions& opts) {
    std::vector<Polyline> out;

    // S1: cusp-curve cylinder points with g^2 = rho1^2 / 4 - gamma_r^2 >= 0.
    const auto admissible = [&](double psi) {
        const double r = gamma_r(geom, psi);
        return 0.25 * rho1_sq - r * r;
    };
    const BatchCurve s1 = [&](std::span<const double> psi, std::span<double> xs, std::span<double> ys) {
        curve_c_at_angles(geom, psi, xs, ys);
        for (std::size_t i = 0; i < psi.size(); ++i) {
            xs[i] = rho1_sq + 4.0 * xs[i];
            ys[i] = rho1_sq + 4.0 * ys[i];
        }
    };
    for (const auto& run : periodic_nonnegative(admissible, -kHalfPi, kPi, 4 * opts.samples)) {
        const double frac = (run[1] - run[0]) / kPi;
        const auto forced = cusp_params(geom, run[0], run[1]);
        out.push_back(to_polyline(Locus::S1Slice, adaptive_sample(s1, run[0], run[1], forced, scaled(opts, frac))));
    }

    // S2: g = 0 and rho1 = 2 r; psi over a full turn with r fixed closes the
    // curve because (psi + pi, r) ~ (psi, -r).
    const double r = 0.5 * std::sqrt(std::max(rho1_sq, 0.0));
    const BatchCurve s2 = [&](std::span<const double> psi, std::span<double> xs, std::span<double> ys) {
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const JointSquares j = s2_point(geom, psi[i], r);
            xs[i] = j.rho2_sq;
            ys[i] = j.rho3_sq;
        }
    };
    out.push_back(to_polyline(Locus::S2Slice, adaptive_sample(s2, -kHalfPi, 1.5 * kPi, {}, scaled(opts, 2.0))));
    return out;
}

std::vector<Polyline> sample_nu_section(const GeometryParams& geom, double nu, const SamplingOptions& opts) {
    std::vector<Polyline> out;
    out.push_back(sample_curve_C(geom, opts));

    // S2 at level nu: 12 r^2 - 8 (b c + s) r + 4 (b c)^2 + 4 s^2 - nu = 0 with
    // s = d c + h sin. Following the larger root over a full turn traces the
    // closed section, since the roots at psi + pi are the negated roots at psi.
    const double b = geom.b();
    auto quad = [&](double psi, double& mid, double& disc) {
        const double c = std::cos(psi);
        const double s = geom.d() * c + geom.h() * std::sin(psi);
        const double bc = b * c;
        mid = 8.0 * (bc + s) / 24.0;
        disc = 64.0 * (bc + s) * (bc + s) - 48.0 * (4.0 * bc * bc + 4.0 * s * s - nu);
    };
    const auto admissible = [&](double psi) {
        double mid = 0.0, disc = 0.0;
        quad(psi, mid, disc);
        return disc;
    };
    const BatchCurve s2 = [&](std::span<const double> psi, std::span<double> xs, std::span<double> ys) {
        for (std::size_t i = 0; i < psi.size(); ++i) {
            double mid = 0.0, disc = 0.0;
            quad(psi[i], mid, disc);
            const double r = mid + std::sqrt(std::max(disc, 0.0)) / 24.0;
            const DeltaPair dp = deltas_from_pose(geom, psi[i], r);
            xs[i] = dp.delta2;
            ys[i] = dp.delta3;
        }
    };
    for (const auto& run : periodic_nonnegative(admissible, -kHalfPi, 2.0 * kPi, 4 * opts.samples)) {
        const double frac = (run[1] - run[0]) / kPi;
        out.push_back(to_polyline(Locus::S2Slice, adaptive_sample(s2, run[0], run[1], {}, scaled(opts, frac))));
    }
    return out;
}

}  // namespace symrpr
