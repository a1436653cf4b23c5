#pragma once

// Joint-space motion planning inside one aspect. A plan lifts the start along
// (1, 1, 1) to a working level nu*, moves at constant nu* in the (delta2,
// delta3) plane crossing the deltoid only through the arcs named by the start
// and goal labels, then descends to the goal. Plans are certified by numerical
// continuation of the DKP branch.

#include <cstddef>
#include <string>
#include <vector>

#include "symrpr/geometry.hpp"

namespace symrpr {

struct JointPath {
    std::vector<NuDelta> waypoints;
    GlidePose start;
    GlidePose goal;
    double nu_star = 0.0;
    std::vector<int> crossings;  // arc labels in traversal order
};

struct PlanOptions {
    double g_margin = 1e-4;
    double pose_tol = 1e-6;
    double jump_bound = 0.2;
    double initial_step = 1e-2;  // fraction of a segment
    double min_step = 1e-12;
    double level_margin = 0.05;
    int max_retries = 6;
    // Equal nonzero labels: stay inside instead of leaving and re-entering
    // through the same arc. Off by default so the crossing list is always
    // [start label] ++ [goal label].
    bool direct_same_label = false;
};

struct TraceSample {
    NuDelta point;
    GlidePose pose;
    std::size_t segment = 0;
    double param = 0.0;         // position within the segment, [0, 1]
    double disc = 0.0;          // discriminant over its norm^4 scale
    double gamma_distance = 0.0;
};

struct CrossingEvent {
    int arc = 0;
    std::size_t segment = 0;
    double param = 0.0;
    NuDelta point;
};

struct ContinuationTrace {
    std::vector<TraceSample> samples;
    std::vector<CrossingEvent> crossings;
    double min_abs_g = 0.0;
    double min_abs_disc = 0.0;
    double min_gamma_distance = 0.0;

    const GlidePose& final_pose() const { return samples.back().pose; }
};

// Each square increased by lambda^2.
JointSquares lift_nu(const JointSquares& j, double lambda);

// Throws Error(DifferentAspects), Error(OnSingularity) or Error(PlanInfeasible).
JointPath plan(const GeometryParams& geom, const GlidePose& start, const GlidePose& goal,
               const PlanOptions& opts = {});

// Throws Error(SingularityHit) or Error(BranchJump); std::invalid_argument
// when the start does not solve the DKP at the first waypoint.
ContinuationTrace track_path(const GeometryParams& geom, const JointPath& path, const GlidePose& start,
                             const PlanOptions& opts = {});

struct ValidationReport {
    bool pass = false;
    double endpoint_error = 0.0;
    bool crossings_match = false;
    std::string reason;
    ContinuationTrace trace;
};

ValidationReport validate(const GeometryParams& geom, const JointPath& path, const GlidePose& start,
                          const GlidePose& goal, const PlanOptions& opts = {});

}  // namespace symrpr
