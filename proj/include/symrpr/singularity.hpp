#pragma once

// Singular loci. The first singular surface S1 is the cylinder along (1,1,1)
// over the discriminant curve C of the characteristic cubic, a three-cusped
// rational quartic in the (delta2, delta3) plane; its workspace preimage is
// the jacobian curve Gamma, r = gamma_r(psi). The second surface S2 is the
// image of g = 0.

#include <array>
#include <string_view>
#include <vector>

#include "symrpr/dkp.hpp"
#include "symrpr/geometry.hpp"
#include "symrpr/sampling.hpp"

namespace symrpr {

enum class DeltoidSide { Inside, Outside, OnCurve };

std::string_view to_string(DeltoidSide side);

struct CuspPoint {
    double psi_cusp = 0.0;  // [-pi/2, pi/2)
    double r_cusp = 0.0;
    double beta = 0.0;      // 4 r_cusp^2, origin of the cusp half-line
    ExtendedReal t_cusp;
    int k = 0;
};

struct Bifurcations {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double beta3 = 0.0;
};

enum class Locus { C, Gamma, S1Slice, S2Slice, Sigma1, Sigma2, Characteristic };

std::string_view to_string(Locus locus);

struct CurveSample {
    Locus locus = Locus::C;
    double parameter = 0.0;
    double x = 0.0;
    double y = 0.0;
};

struct Polyline {
    Locus locus = Locus::C;
    std::vector<CurveSample> points;
};

double gamma_r(const GeometryParams& geom, double psi);

DeltaPair curve_C(const GeometryParams& geom, ExtendedReal t);
inline DeltaPair curve_C_at_angle(const GeometryParams& geom, double psi) {
    return curve_C(geom, ExtendedReal::from_psi(psi));
}

// Cubic in tan(psi) whose roots are the stationary parameters of C.
CharacteristicCubic cusp_cubic(const GeometryParams& geom);
double cusp_cubic_discriminant(const GeometryParams& geom);
// 108 (d^2 + h^2)^2 ((d - b)^2 + h^2)^2
double cusp_discriminant_closed_form(const GeometryParams& geom);

std::array<CuspPoint, 3> cusp_points(const GeometryParams& geom);
// Cusp angles sorted ascending in [-pi/2, pi/2).
std::array<double, 3> sorted_cusp_angles(const GeometryParams& geom);

Bifurcations bifurcation_values(const GeometryParams& geom);
// Number of cusp points in the slice rho1^2 = c. Throws
// Error(OnBifurcationBoundary) when c is within tol (1 + beta_i) of a beta_i.
int count_cusps(const GeometryParams& geom, double rho1_sq, double tol = kDefaultTol);

JointSquares s1_point(const GeometryParams& geom, double psi, double g);
JointSquares s2_point(const GeometryParams& geom, double psi, double r);

// Sign of the characteristic-cubic discriminant: three real roots inside,
// one outside. OnCurve when |disc| <= tol * norm^4.
DeltoidSide is_inside_deltoid(const GeometryParams& geom, double delta2, double delta3,
                              double tol = kDefaultTol);

bool on_s2(const GeometryParams& geom, const JointSquares& joint, double tol = kDefaultTol);

// Arc of C (1, 2 or 3) containing the double-root parameter psi. Arc 1 lies
// between the two smallest cusp angles, arc 2 between the two largest, arc 3
// wraps through +-pi/2. Throws Error(AtCusp) within tol of a cusp angle.
int classify_arc(const GeometryParams& geom, double psi, double tol = kDefaultTol);
// Parameter interval (lo, hi) of an arc, hi > lo, possibly extending past pi/2.
std::array<double, 2> arc_interval(const GeometryParams& geom, int arc);

struct GridRange {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;

    std::vector<double> values() const;  // inclusive of both ends
};

struct SweepCell {
    double h = 0.0;
    double d = 0.0;
    Bifurcations beta;
};

// Row-major: h outer, d inner.
std::vector<SweepCell> bifurcation_sweep(double b, const GridRange& h_range, const GridRange& d_range);

// Figure-grade samplings. Parameters are psi values.
Polyline sample_curve_C(const GeometryParams& geom, const SamplingOptions& opts = {});
// Cut of S1 and S2 by rho1^2 = c, in the (rho2^2, rho3^2) plane.
std::vector<Polyline> sample_rho1_slice(const GeometryParams& geom, double rho1_sq,
                                        const SamplingOptions& opts = {});
// Cut of S1 and S2 by nu = const, in the (delta2, delta3) plane.
std::vector<Polyline> sample_nu_section(const GeometryParams& geom, double nu, const SamplingOptions& opts = {});

}  // namespace symrpr
