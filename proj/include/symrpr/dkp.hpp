#pragma once

// Decoupled direct kinematics. The squared leg lengths fix (delta2, delta3),
// which fix tan(psi) through a cubic; r follows from psi, and g from rho1^2.

#include <optional>
#include <vector>

#include "symrpr/geometry.hpp"

namespace symrpr {

inline constexpr double kDefaultTol = 1e-9;

// A point of the projective line: a finite real or the point at infinity.
struct ExtendedReal {
    double value = 0.0;
    bool infinite = false;

    static ExtendedReal finite(double v) { return {v, false}; }
    static ExtendedReal at_infinity() { return {0.0, true}; }

    // Angle in [-pi/2, pi/2) whose tangent is this value.
    double to_psi() const;
    static ExtendedReal from_psi(double psi);
};

// c3 t^3 + c2 t^2 + c1 t + c0 with t = tan(psi).
struct CharacteristicCubic {
    double c3 = 0.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    double norm() const;  // max |c_i|
    double eval(double t) const;
    // Homogeneous form in the angle: cos^3(psi) times the cubic at tan(psi).
    // Well defined at psi = +-pi/2, where it reduces to +-c3.
    double eval_angle(double psi) const;
    double eval_angle_derivative(double psi) const;
};

struct CubicRoot {
    ExtendedReal t;
    int multiplicity = 1;
};

struct GlideBranches {
    double g_plus = 0.0;
    double g_minus = 0.0;
    bool single = false;  // g = 0 fold (on the second singular surface)
};

// One real solution (psi, r) of the delta equations, before g is chosen.
struct PlanarBranch {
    double psi = 0.0;
    double r = 0.0;
    ExtendedReal t;
    int multiplicity = 1;
};

struct DkpSolution {
    GlidePose pose;
    ExtendedReal t;
    int multiplicity = 1;  // of t as a root of the characteristic cubic
    bool on_s2 = false;    // g = 0 within tolerance
    double residual = 0.0; // |leg_lengths_squared(pose) - query|_inf

    bool on_s1() const noexcept { return multiplicity > 1; }
};

CharacteristicCubic characteristic_cubic(const GeometryParams& geom, double delta2, double delta3);

// Real roots with multiplicities. A vanishing leading coefficient (relative
// to the coefficient norm) reports t = infinity and solves the tail.
// Throws Error(DegeneratePolynomial) if every coefficient vanishes.
std::vector<CubicRoot> solve_cubic_real(const CharacteristicCubic& c, double tol = kDefaultTol);

// Standard discriminant; throws Error(LeadingCoefficientZero) when c3 ~ 0.
double cubic_discriminant(const CharacteristicCubic& c, double tol = kDefaultTol);

// Discriminant of the binary form; equals cubic_discriminant when c3 != 0
// and stays meaningful (root at infinity counted) when c3 = 0.
double homogeneous_discriminant(const CharacteristicCubic& c);

// Coefficients of the same binary cubic in t' = tan(theta), where the
// original angle is psi0 + theta. If psi0 is a root, the constant term
// vanishes and (k3, k2, k1) is the deflated quadratic.
CharacteristicCubic rotate_cubic(const CharacteristicCubic& c, double psi0);

// Angle theta = atan(t) of the double root of k3 t^2 + k2 t + k1, taken from
// the coefficients of a rotated cubic; the reciprocal form is used when the
// root is near infinity.
double double_root_angle(const CharacteristicCubic& rotated);

// Branch threshold |cos(psi)| < 1e-6 switches to the delta3 relation.
double r_from_psi(const GeometryParams& geom, double psi, double delta2, double delta3);

// g = +-sqrt(rho1^2 / 4 - r^2); the fold band |rho1^2/4 - r^2| <= tol (1 + rho1^2)
// reports the single g = 0.
std::optional<GlideBranches> g_from_r(double rho1_sq, double r, double tol = kDefaultTol);

// Real solutions of the delta equations (one per distinct real root of the
// characteristic cubic), psi polished on the angle form and canonicalized.
std::vector<PlanarBranch> solve_planar(const GeometryParams& geom, double delta2, double delta3,
                                       double tol = kDefaultTol);

// All real assembly modes (0 to 6).
std::vector<DkpSolution> solve_dkp(const GeometryParams& geom, const JointSquares& joint,
                                   double tol = kDefaultTol);

// Forward residual |leg_lengths_squared(pose) - joint|_inf.
double forward_residual(const GeometryParams& geom, const GlidePose& pose, const JointSquares& joint);

}  // namespace symrpr
