#pragma once

// Workspace charts of the symmetric 3-RPR family.
//
// The base triangle is A1 = (0, 0), A2 = (b, 0), A3 = (d, h). The platform
// triangle is its image under a glide reflection, encoded as (psi, r, g):
// reflect across the axis x cos(psi) + y sin(psi) = r, then translate by
// 2g (-sin(psi), cos(psi)). Actuated joints are the squared leg lengths.

#include <array>
#include <numbers>
#include <string>
#include <utility>

namespace symrpr {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

class GeometryParams {
public:
    // Throws Error(InvalidGeometry) unless b > 0 and h > 0.
    GeometryParams(double b, double h, double d);

    static GeometryParams reference() { return {1.0, 1.0, 0.0}; }

    double b() const noexcept { return b_; }
    double h() const noexcept { return h_; }
    double d() const noexcept { return d_; }

    friend bool operator==(const GeometryParams&, const GeometryParams&) = default;

private:
    double b_;
    double h_;
    double d_;
};

struct PlanarPoint {
    double x = 0.0;
    double y = 0.0;
};

struct GlidePose {
    double psi = 0.0;
    double r = 0.0;
    double g = 0.0;

    // Representative with psi in [-pi/2, pi/2). Shifting psi by pi flips the
    // signs of r and g, so (pi/2, r, g) becomes (-pi/2, -r, -g).
    GlidePose canonical() const;
};

struct RigidPose {
    double phi = 0.0;  // [0, 2 pi)
    double x = 0.0;
    double y = 0.0;
};

struct JointSquares {
    double rho1_sq = 0.0;
    double rho2_sq = 0.0;
    double rho3_sq = 0.0;

    bool valid() const noexcept { return rho1_sq >= 0.0 && rho2_sq >= 0.0 && rho3_sq >= 0.0; }
    std::array<double, 3> as_array() const { return {rho1_sq, rho2_sq, rho3_sq}; }
};

struct NuDelta {
    double nu = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
};

struct DeltaPair {
    double delta2 = 0.0;
    double delta3 = 0.0;
};

// Reduce an angle into [-pi/2, pi/2) modulo pi. Returns the number of pi
// shifts applied, whose parity tells whether r and g must be negated.
double reduce_half_turn(double psi, int* shifts = nullptr);

// Distance in (psi, r, g) that respects the identification
// (psi + pi, r, g) ~ (psi, -r, -g).
double pose_distance(const GlidePose& a, const GlidePose& b);

JointSquares leg_lengths_squared(const GeometryParams& geom, const GlidePose& pose);

DeltaPair deltas_from_pose(const GeometryParams& geom, double psi, double r);

RigidPose glide_to_rigid(const GlidePose& pose);
GlidePose rigid_to_glide(const RigidPose& pose);

std::array<PlanarPoint, 3> base_vertices(const GeometryParams& geom);
std::array<PlanarPoint, 3> platform_vertices(const GeometryParams& geom, const GlidePose& pose);

NuDelta joint_to_nudelta(const JointSquares& j);
// Throws Error(InvalidJointPoint) if a recovered square is negative.
JointSquares nudelta_to_joint(const NuDelta& n);
// Same chart change without the validity check (used for path interpolation
// bookkeeping).
JointSquares nudelta_to_joint_unchecked(const NuDelta& n);

// `key = value` lines with keys b, h, d; `#` starts a comment.
GeometryParams parse_geometry(const std::string& text);
GeometryParams load_geometry_file(const std::string& path);

}  // namespace symrpr
