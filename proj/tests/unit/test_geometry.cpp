#include <gtest/gtest.h>

#include <cmath>

#include "support/expect.hpp"
#include "support/oracles.hpp"
#include "symrpr/error.hpp"
#include "symrpr/geometry.hpp"

using namespace symrpr;

namespace {

const GeometryParams kRef = GeometryParams::reference();

}  // namespace

TEST(Geometry, RejectsNonPositiveDimensions) {
    EXPECT_EQ(code_of([] { GeometryParams(0.0, 1.0, 0.0); }), ErrorCode::InvalidGeometry);
    EXPECT_EQ(code_of([] { GeometryParams(1.0, -1.0, 0.0); }), ErrorCode::InvalidGeometry);
    EXPECT_EQ(code_of([] { GeometryParams(1.0, 1.0, std::nan("")); }), ErrorCode::InvalidGeometry);
}

TEST(Geometry, WorkedPoseLegLengths) {
    const JointSquares j = leg_lengths_squared(kRef, {kPi / 4, 1.1, 0.4});
    EXPECT_NEAR(j.rho1_sq, 5.48, 1e-12);
    EXPECT_NEAR(j.rho2_sq, 1.257461, 1e-6);
    EXPECT_NEAR(j.rho3_sq, 1.257461, 1e-6);
    EXPECT_NEAR(std::sqrt(j.rho1_sq), 2.34, 5e-3);
    EXPECT_NEAR(std::sqrt(j.rho2_sq), 1.12, 5e-3);
}

TEST(Geometry, ReflectionsOfTheBase) {
    const JointSquares a = leg_lengths_squared(kRef, {0.0, 0.0, 0.0});
    EXPECT_NEAR(a.rho1_sq, 0.0, 1e-15);
    EXPECT_NEAR(a.rho2_sq, 4.0, 1e-15);
    EXPECT_NEAR(a.rho3_sq, 0.0, 1e-15);
    const JointSquares b = leg_lengths_squared(kRef, {kPi / 2, 0.0, 0.0});
    EXPECT_NEAR(b.rho1_sq, 0.0, 1e-15);
    EXPECT_NEAR(b.rho2_sq, 0.0, 1e-15);
    EXPECT_NEAR(b.rho3_sq, 4.0, 1e-15);
}

TEST(Geometry, DeltasFromPose) {
    const DeltaPair goal = deltas_from_pose(kRef, kPi / 4, 1.1);
    EXPECT_NEAR(goal.delta2, -1.05564, 1e-5);
    EXPECT_NEAR(goal.delta3, -1.05564, 1e-5);
    const DeltaPair start = deltas_from_pose(kRef, kPi / 4, std::sqrt(2.0) / 8.0);
    EXPECT_NEAR(start.delta2, 0.25, 1e-12);
    EXPECT_NEAR(start.delta3, 0.25, 1e-12);
    EXPECT_NEAR(deltas_from_pose(kRef, kPi / 2, 0.7).delta2, 0.0, 1e-15);
}

TEST(Geometry, RigidPoseConversions) {
    const RigidPose zero = glide_to_rigid({0.0, 0.0, 0.0});
    EXPECT_NEAR(zero.phi, kPi, 1e-15);
    EXPECT_NEAR(zero.x, 0.0, 1e-15);
    EXPECT_NEAR(zero.y, 0.0, 1e-15);

    const RigidPose worked = glide_to_rigid({kPi / 4, 1.1, 0.4});
    EXPECT_NEAR(worked.phi, 3 * kPi / 2, 1e-12);
    EXPECT_NEAR(worked.x, 0.989949, 1e-6);
    EXPECT_NEAR(worked.y, 2.121320, 1e-6);

    const GlidePose back = rigid_to_glide({3 * kPi / 2, 0.98994949366, 2.12132034356});
    EXPECT_NEAR(back.psi, kPi / 4, 1e-10);
    EXPECT_NEAR(back.r, 1.1, 1e-10);
    EXPECT_NEAR(back.g, 0.4, 1e-10);

    const GlidePose id = rigid_to_glide({kPi, 0.0, 0.0});
    EXPECT_NEAR(id.psi, 0.0, 1e-15);
    EXPECT_NEAR(id.r, 0.0, 1e-15);
    EXPECT_NEAR(id.g, 0.0, 1e-15);
}

TEST(Geometry, PlatformVertices) {
    const auto v = platform_vertices(kRef, {0.0, 0.0, 0.0});
    EXPECT_NEAR(v[0].x, 0.0, 1e-15);
    EXPECT_NEAR(v[1].x, -1.0, 1e-15);
    EXPECT_NEAR(v[2].y, 1.0, 1e-15);
    const auto w = platform_vertices(kRef, {kPi / 4, 1.1, 0.4});
    EXPECT_NEAR(std::hypot(w[0].x, w[0].y), 2.340940, 1e-6);
}

TEST(Geometry, NuDeltaChart) {
    const NuDelta n = joint_to_nudelta({5.48, 1.257461, 1.257461});
    EXPECT_NEAR(n.nu, 7.994922, 1e-9);
    EXPECT_NEAR(n.delta2, -1.05563475, 1e-9);
    const JointSquares j = nudelta_to_joint({8.0, 0.0, 0.0});
    EXPECT_NEAR(j.rho1_sq, 8.0 / 3, 1e-15);
    EXPECT_NEAR(j.rho3_sq, 8.0 / 3, 1e-15);
    EXPECT_EQ(code_of([] { nudelta_to_joint({1.0, 1.0, 1.0}); }), ErrorCode::InvalidJointPoint);
}

TEST(Geometry, CanonicalAngle) {
    const GlidePose p = GlidePose{kPi / 2, 0.3, -0.2}.canonical();
    EXPECT_NEAR(p.psi, -kPi / 2, 1e-15);
    EXPECT_NEAR(p.r, -0.3, 1e-15);
    EXPECT_NEAR(p.g, 0.2, 1e-15);
    EXPECT_NEAR(pose_distance({kPi / 2 - 1e-9, 0.3, 0.2}, {-kPi / 2 + 1e-9, -0.3, -0.2}), 2e-9, 1e-12);
}

TEST(Geometry, ParseGeometry) {
    const GeometryParams g = parse_geometry("# comment\nb = 2\nh=0.5  # trailing\n d = -1\n");
    EXPECT_EQ(g, GeometryParams(2.0, 0.5, -1.0));
    EXPECT_EQ(code_of([] { parse_geometry("b = 1\nh = 1\n"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_geometry("b = 1\nh = x\nd = 0\n"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_geometry("b = 1\nh = 1\nd = 0\nq = 2\n"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_geometry("b = 1\nh = 0\nd = 0\n"); }), ErrorCode::InvalidGeometry);
}

// Properties over random poses and geometries.

TEST(GeometryProperty, LegLengthsMatchReflectionOracle) {
    oracle::Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const GeometryParams geom = oracle::random_geometry(rng);
        const GlidePose p = oracle::random_pose(rng);
        const auto expect = oracle::legs_squared_by_reflection(geom, p);
        const auto got = leg_lengths_squared(geom, p).as_array();
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(got[k], expect[k], 1e-12 * (1.0 + expect[k]));
    }
}

TEST(GeometryProperty, IdentificationInvariance) {
    oracle::Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const GeometryParams geom = oracle::random_geometry(rng);
        const double r = rng.uniform(-3, 3), g = rng.uniform(-3, 3);
        const auto a = leg_lengths_squared(geom, {-kHalfPi, r, g}).as_array();
        const auto b = leg_lengths_squared(geom, {kHalfPi, -r, -g}).as_array();
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(a[k], b[k], 1e-12 * (1.0 + a[k]));
    }
}

TEST(GeometryProperty, DeltasAreGIndependent) {
    oracle::Rng rng(13);
    for (int i = 0; i < 500; ++i) {
        const GeometryParams geom = oracle::random_geometry(rng);
        const GlidePose p = oracle::random_pose(rng);
        const NuDelta n = joint_to_nudelta(leg_lengths_squared(geom, p));
        const DeltaPair d = deltas_from_pose(geom, p.psi, p.r);
        EXPECT_NEAR(n.delta2, d.delta2, 1e-12 * (1.0 + n.nu));
        EXPECT_NEAR(n.delta3, d.delta3, 1e-12 * (1.0 + n.nu));
    }
}

TEST(GeometryProperty, RigidRoundTrip) {
    oracle::Rng rng(14);
    for (int i = 0; i < 500; ++i) {
        const GlidePose p = oracle::random_pose(rng);
        const GlidePose q = rigid_to_glide(glide_to_rigid(p));
        EXPECT_LT(pose_distance(p, q), 1e-12);
    }
}

TEST(GeometryProperty, PlatformDistancesReproduceLegs) {
    oracle::Rng rng(15);
    for (int i = 0; i < 500; ++i) {
        const GeometryParams geom = oracle::random_geometry(rng);
        const GlidePose p = oracle::random_pose(rng);
        const auto a = base_vertices(geom);
        const auto b = platform_vertices(geom, p);
        const auto legs = leg_lengths_squared(geom, p).as_array();
        for (int k = 0; k < 3; ++k) {
            const double dx = b[k].x - a[k].x, dy = b[k].y - a[k].y;
            EXPECT_NEAR(dx * dx + dy * dy, legs[k], 1e-12 * (1.0 + legs[k]));
        }
    }
}

TEST(GeometryProperty, ChartRoundTrip) {
    oracle::Rng rng(16);
    for (int i = 0; i < 500; ++i) {
        const JointSquares j{rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(0, 10)};
        const JointSquares k = nudelta_to_joint(joint_to_nudelta(j));
        EXPECT_NEAR(k.rho1_sq, j.rho1_sq, 1e-12 * 10);
        EXPECT_NEAR(k.rho2_sq, j.rho2_sq, 1e-12 * 10);
        EXPECT_NEAR(k.rho3_sq, j.rho3_sq, 1e-12 * 10);
    }
}
