#pragma once

// Assembly-mode labels inside an aspect. Label 0 marks poses whose joint
// image lies outside the deltoid; labels 1 to 3 name the arc of C through
// which the pose's region connects to label 0.

#include <utility>
#include <vector>

#include "symrpr/dkp.hpp"
#include "symrpr/geometry.hpp"

namespace symrpr {

struct AssemblyLabel {
    int label = 0;

    friend bool operator==(const AssemblyLabel&, const AssemblyLabel&) = default;
};

struct AspectId {
    int g_sign = 1;
    int gamma_side = 1;  // sign of r - gamma_r(psi)

    // Invariant under (psi + pi, r, g) ~ (psi, -r, -g), unlike the pair.
    int global_sign() const noexcept { return g_sign * gamma_side; }

    friend bool operator==(const AspectId&, const AspectId&) = default;
};

// (r_minus, r_plus), r_minus <= r_plus.
std::pair<double, double> characteristic_r(const GeometryParams& geom, double psi);

// Throws Error(OnSingularity) within tol of g = 0 or of the jacobian curve.
AspectId aspect_of(const GeometryParams& geom, const GlidePose& pose, double tol = kDefaultTol);

// Marches r away from the jacobian curve at fixed psi until the joint image
// leaves the deltoid; the double root at the exit names the arc. Throws
// Error(OnSingularity), Error(OnCharacteristicSurface) when the image is on
// C, and Error(AtCusp) when the exit is a cusp.
AssemblyLabel label_pose(const GeometryParams& geom, const GlidePose& pose, double tol = kDefaultTol);

struct CharacteristicRow {
    double psi = 0.0;
    double r_gamma = 0.0;
    double r_minus = 0.0;
    double r_plus = 0.0;
};

// Uniform grid over [-pi/2, pi/2] (both ends).
std::vector<CharacteristicRow> characteristic_section(const GeometryParams& geom, int samples = 720);

}  // namespace symrpr
