#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "support/cases.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"
#include "symrpr/modes.hpp"
#include "symrpr/planner.hpp"

using namespace symrpr;

namespace {

const GeometryParams kRef = GeometryParams::reference();

JointPath vertical_path(const GlidePose& pose, double mu) {
    const NuDelta at = joint_to_nudelta(leg_lengths_squared(kRef, pose));
    JointPath path;
    path.start = pose;
    path.goal = pose;
    path.waypoints = {at, {at.nu + 3.0 * mu, at.delta2, at.delta3}};
    return path;
}

std::vector<int> expected_crossings(const GlidePose& start, const GlidePose& goal) {
    std::vector<int> out;
    if (const int l = label_pose(kRef, start).label; l != 0) out.push_back(l);
    if (const int l = label_pose(kRef, goal).label; l != 0) out.push_back(l);
    return out;
}

}  // namespace

TEST(Planner, LiftNu) {
    const JointSquares a = lift_nu({1, 1, 1}, 1.0);
    EXPECT_EQ(a.rho1_sq, 2.0);
    EXPECT_EQ(a.rho3_sq, 2.0);
    const JointSquares b = lift_nu({5.48, 1.2, 0.3}, 0.0);
    EXPECT_EQ(b.rho1_sq, 5.48);
    EXPECT_EQ(b.rho3_sq, 0.3);

    const ContinuationTrace trace = track_path(kRef, vertical_path({kPi / 4, 1.1, 0.4}, 1.0), {kPi / 4, 1.1, 0.4});
    EXPECT_NEAR(trace.final_pose().g, 0.640312, 1e-6);
}

TEST(Planner, StartEqualsGoal) {
    const GlidePose p{kPi / 4, 1.1, 0.4};
    const JointPath path = plan(kRef, p, p);
    EXPECT_EQ(path.waypoints.size(), 1u);
    EXPECT_TRUE(path.crossings.empty());
    EXPECT_TRUE(validate(kRef, path, p, p).pass);
}

TEST(Planner, DifferentAspects) {
    EXPECT_EQ(code_of([] { plan(kRef, {kPi / 4, 1.1, -0.4}, {kPi / 4, 1.1, 0.4}); }), ErrorCode::DifferentAspects);
    // Label-1 start and label-0 goal of the worked example sit on opposite
    // sides of the jacobian curve with the same g sign.
    EXPECT_EQ(code_of([] { plan(kRef, {kPi / 4, 0.176777, 1.0}, {kPi / 4, 1.1, 0.4}); }),
              ErrorCode::DifferentAspects);
}

TEST(Planner, LabelOneToLabelZero) {
    const GlidePose start{kPi / 4, 0.176777, 1.0};
    const GlidePose goal{kPi / 4, 1.1, -0.4};
    const JointPath path = plan(kRef, start, goal);
    EXPECT_EQ(path.crossings, std::vector<int>{1});
    EXPECT_DOUBLE_EQ(path.waypoints.front().nu, joint_to_nudelta(leg_lengths_squared(kRef, start)).nu);
    const ValidationReport report = validate(kRef, path, start, goal);
    EXPECT_TRUE(report.pass) << report.reason;
    EXPECT_LE(report.endpoint_error, 1e-6);
    ASSERT_EQ(report.trace.crossings.size(), 1u);
    EXPECT_EQ(report.trace.crossings[0].arc, 1);
    EXPECT_GE(report.trace.min_abs_g, PlanOptions{}.g_margin);
}

TEST(Planner, DescentThroughGZeroIsASingularityHit) {
    const GlidePose p{kPi / 4, 1.1, 0.4};
    EXPECT_EQ(code_of([&] { track_path(kRef, vertical_path(p, -1.2 * 4 * p.g * p.g), p); }),
              ErrorCode::SingularityHit);
}

TEST(Planner, TrackRejectsForeignStart) {
    EXPECT_THROW(track_path(kRef, vertical_path({kPi / 4, 1.1, 0.4}, 1.0), {0.0, 1.1, 0.4}), std::invalid_argument);
}

TEST(Planner, ValidateFailures) {
    const GlidePose start{kPi / 4, 0.176777, 1.0};
    const GlidePose goal{kPi / 4, 1.1, -0.4};
    const JointPath path = plan(kRef, start, goal);

    const ValidationReport negated = validate(kRef, path, start, {goal.psi, goal.r, -goal.g});
    EXPECT_FALSE(negated.pass);
    EXPECT_GT(negated.endpoint_error, 0.5);

    JointPath undeclared = path;
    undeclared.crossings.clear();
    const ValidationReport audit = validate(kRef, undeclared, start, goal);
    EXPECT_FALSE(audit.pass);
    EXPECT_FALSE(audit.crossings_match);
    EXPECT_LE(audit.endpoint_error, 1e-6);
}

// Properties.

TEST(PlannerProperty, LiftingKeepsPsiAndR) {
    oracle::Rng rng(51);
    for (int i = 0; i < 100; ++i) {
        const GlidePose p = oracle::random_regular_pose(rng, kRef);
        for (const double lambda : {0.1, 1.0, 10.0}) {
            const ContinuationTrace trace = track_path(kRef, vertical_path(p, lambda * lambda), p);
            for (const auto& s : trace.samples) {
                EXPECT_NEAR(s.pose.psi, p.psi, 1e-9);
                EXPECT_NEAR(s.pose.r, p.r, 1e-9);
            }
            EXPECT_NEAR(trace.final_pose().g, std::copysign(std::sqrt(p.g * p.g + lambda * lambda / 4), p.g), 1e-9);
            EXPECT_TRUE(trace.crossings.empty());
        }
    }
}

TEST(PlannerProperty, RandomSameAspectPlansValidate) {
    oracle::Rng rng(52);
    for (int i = 0; i < 20; ++i) {
        const auto [start, goal] = oracle::random_same_aspect_pair(rng, kRef);
        const JointPath path = plan(kRef, start, goal);
        EXPECT_EQ(path.crossings, expected_crossings(start, goal));
        const ValidationReport report = validate(kRef, path, start, goal);
        EXPECT_TRUE(report.pass) << report.reason;
        EXPECT_LE(report.endpoint_error, 1e-6);
        std::vector<int> seen;
        for (const auto& c : report.trace.crossings) seen.push_back(c.arc);
        EXPECT_EQ(seen, path.crossings);
        EXPECT_GE(report.trace.min_abs_g, PlanOptions{}.g_margin);
    }
}

TEST(PlannerProperty, EveryWaypointIsAJointPoint) {
    oracle::Rng rng(53);
    for (int i = 0; i < 5; ++i) {
        const auto [start, goal] = oracle::random_same_aspect_pair(rng, kRef);
        const JointPath path = plan(kRef, start, goal);
        for (const auto& w : path.waypoints) EXPECT_NO_THROW(nudelta_to_joint(w));
        EXPECT_NEAR(path.waypoints.back().nu, joint_to_nudelta(leg_lengths_squared(kRef, goal)).nu, 1e-12);
    }
}
