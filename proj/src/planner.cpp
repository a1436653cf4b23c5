#include "symrpr/planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "symrpr/dkp.hpp"
#include "symrpr/error.hpp"
#include "symrpr/kernels.hpp"
#include "symrpr/modes.hpp"
#include "symrpr/singularity.hpp"

namespace symrpr {

namespace {

constexpr int kSegmentChecks = 64;
constexpr int kCircleChords = 64;
constexpr double kSideTol = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Vec2 to_vec(const NuDelta& n) { return {n.delta2, n.delta3}; }
Vec2 to_vec(const DeltaPair& p) { return {p.delta2, p.delta3}; }

std::vector<std::int8_t> sides_along(const GeometryParams& geom, Vec2 a, Vec2 b, int n) {
    std::vector<double> d2(static_cast<std::size_t>(n) + 1);
    std::vector<double> d3(d2.size());
    for (int i = 0; i <= n; ++i) {
        const double s = static_cast<double>(i) / n;
        d2[i] = a.x + s * (b.x - a.x);
        d3[i] = a.y + s * (b.y - a.y);
    }
    std::vector<std::int8_t> side(d2.size());
    kernels::classify_deltoid(geom, d2, d3, kSideTol, side);
    return side;
}

bool stays(const GeometryParams& geom, Vec2 a, Vec2 b, std::int8_t want) {
    const auto side = sides_along(geom, a, b, kSegmentChecks);
    return std::all_of(side.begin(), side.end(), [want](std::int8_t s) { return s == want; });
}

int sign_changes(const GeometryParams& geom, Vec2 a, Vec2 b) {
    int last = 0;
    int changes = 0;
    for (std::int8_t s : sides_along(geom, a, b, 4 * kSegmentChecks)) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

struct Gate {
    Vec2 inner;
    Vec2 mid;
    Vec2 outer;
};

// Transversal passage through the middle of an arc of C.
Gate arc_gate(const GeometryParams& geom, int arc, Vec2 center) {
    const auto [lo, hi] = arc_interval(geom, arc);
    const double mid_psi = 0.5 * (lo + hi);
    const Vec2 p = to_vec(curve_C_at_angle(geom, mid_psi));

    const double eps = 1e-6;
    const Vec2 tangent = to_vec(curve_C_at_angle(geom, mid_psi + eps)) - to_vec(curve_C_at_angle(geom, mid_psi - eps));
    Vec2 normal{-tangent.y, tangent.x};
    normal = (1.0 / norm(normal)) * normal;
    if (normal.x * (p.x - center.x) + normal.y * (p.y - center.y) < 0.0) normal = -1.0 * normal;

    double length = 0.0;
    Vec2 prev = to_vec(curve_C_at_angle(geom, lo));
    for (int i = 1; i <= 256; ++i) {
        const Vec2 q = to_vec(curve_C_at_angle(geom, lo + (hi - lo) * i / 256.0));
        length += norm(q - prev);
        prev = q;
    }

    double offset = 0.1 * length;
    for (int attempt = 0; attempt < 16; ++attempt, offset *= 0.5) {
        const Gate gate{p - offset * normal, p, p + offset * normal};
        const auto ends = sides_along(geom, gate.inner, gate.outer, 1);
        if (ends[0] == 1 && ends[1] == -1 && sign_changes(geom, gate.inner, gate.outer) == 1) return gate;
    }
    std::ostringstream msg;
    msg << "no transversal passage through arc " << arc;
    throw Error(ErrorCode::PlanInfeasible, msg.str());
}

class RouteBuilder {
public:
    RouteBuilder(const GeometryParams& geom, Vec2 center, double radius)
        : geom_(geom), center_(center), radius_(radius) {}

    void start(Vec2 p) { pts_.assign(1, p); }
    Vec2 current() const { return pts_.back(); }

    void push(Vec2 p) {
        if (norm(p - pts_.back()) > 0.0) pts_.push_back(p);
    }

    // The deltoid is star-shaped about its center, so the detour through
    // the center never leaves it.
    void inside_to(Vec2 target) {
        if (!stays(geom_, current(), target, 1)) {
            if (!stays(geom_, current(), center_, 1) || !stays(geom_, center_, target, 1)) {
                throw Error(ErrorCode::PlanInfeasible, "interior detour through the deltoid center left the deltoid");
            }
            push(center_);
        }
        push(target);
    }

    void outside_to(Vec2 target) {
        if (stays(geom_, current(), target, -1)) {
            push(target);
            return;
        }
        const Vec2 from = current();
        const double a0 = std::atan2(from.y - center_.y, from.x - center_.x);
        double a1 = std::atan2(target.y - center_.y, target.x - center_.x);
        double sweep = a1 - a0;
        while (sweep > kPi) sweep -= 2.0 * kPi;
        while (sweep < -kPi) sweep += 2.0 * kPi;
        a1 = a0 + sweep;
        const int chords = std::max(1, static_cast<int>(std::ceil(std::abs(sweep) / (2.0 * kPi) * kCircleChords)));
        for (int i = 0; i <= chords; ++i) {
            const double a = a0 + sweep * i / chords;
            push(center_ + radius_ * Vec2{std::cos(a), std::sin(a)});
        }
        push(target);
    }

    const std::vector<Vec2>& points() const { return pts_; }

private:
    const GeometryParams& geom_;
    Vec2 center_;
    double radius_;
    std::vector<Vec2> pts_;
};

// Smallest level at which every branch along the route keeps g^2 >= margin.
double route_level(const GeometryParams& geom, const std::vector<Vec2>& pts, double g_margin) {
    double level = 0.0;
    auto visit = [&](Vec2 q) {
        double r_sq = 0.0;
        try {
            for (const PlanarBranch& branch : solve_planar(geom, q.x, q.y)) r_sq = std::max(r_sq, branch.r * branch.r);
        } catch (const Error&) {
        }
        level = std::max(level, 12.0 * (r_sq + g_margin) + 4.0 * q.x + 4.0 * q.y);
    };
    visit(pts.front());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        for (int k = 1; k <= 32; ++k) visit(pts[i] + (k / 32.0) * (pts[i + 1] - pts[i]));
    }
    return level;
}

NuDelta lerp(const NuDelta& a, const NuDelta& b, double s) {
    return {a.nu + s * (b.nu - a.nu), a.delta2 + s * (b.delta2 - a.delta2), a.delta3 + s * (b.delta3 - a.delta3)};
}

struct DiscSample {
    double scaled = 0.0;
    int sign = 0;
};

DiscSample disc_at(const GeometryParams& geom, const NuDelta& q) {
    const CharacteristicCubic cubic = characteristic_cubic(geom, q.delta2, q.delta3);
    const double n = cubic.norm();
    const double scale = n * n * n * n;
    const double disc = homogeneous_discriminant(cubic);
    const double scaled = scale > 0.0 ? disc / scale : 0.0;
    const int sign = std::abs(scaled) <= 1e-12 ? 0 : (scaled > 0.0 ? 1 : -1);
    return {scaled, sign};
}

struct StepResult {
    std::optional<GlidePose> pose;
    double nearest = std::numeric_limits<double>::infinity();
};

StepResult nearest_solution(const GeometryParams& geom, const NuDelta& q, const GlidePose& prev,
                            const PlanOptions& opts) {
    StepResult out;
    const JointSquares joint = nudelta_to_joint_unchecked(q);
    if (!joint.valid()) return out;
    std::vector<DkpSolution> sols;
    try {
        sols = solve_dkp(geom, joint);
    } catch (const Error&) {
        return out;
    }
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = d1;
    const GlidePose* best = nullptr;
    for (const DkpSolution& s : sols) {
        const double dist = pose_distance(s.pose, prev);
        if (dist < d1) {
            d2 = d1;
            d1 = dist;
            best = &s.pose;
        } else if (dist < d2) {
            d2 = dist;
        }
    }
    out.nearest = d1;
    if (best && d1 <= opts.jump_bound && d1 <= 0.5 * d2) out.pose = *best;
    return out;
}

// Arc crossed between two samples whose discriminant signs differ: locate
// the sign change, then read the double root off the cubic deflated by the
// persisting branch.
CrossingEvent locate_crossing(const GeometryParams& geom, const NuDelta& a, const NuDelta& b, int sign_a,
                              std::size_t segment, double s_a, double s_b, const GlidePose& tracked) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 64; ++it) {
        const double m = 0.5 * (lo + hi);
        const int sm = disc_at(geom, lerp(a, b, m)).sign;
        if (sm == sign_a || sm == 0) lo = m;
        else hi = m;
    }
    const double frac = 0.5 * (lo + hi);
    const NuDelta q = lerp(a, b, frac);

    double psi = tracked.psi;
    double best = std::numeric_limits<double>::infinity();
    for (const PlanarBranch& branch : solve_planar(geom, q.delta2, q.delta3)) {
        if (branch.multiplicity > 1) continue;
        const double dist = pose_distance({branch.psi, branch.r, 0.0}, {tracked.psi, tracked.r, 0.0});
        if (dist < best) {
            best = dist;
            psi = branch.psi;
        }
    }
    const CharacteristicCubic k = rotate_cubic(characteristic_cubic(geom, q.delta2, q.delta3), psi);
    const double theta = double_root_angle(k);

    CrossingEvent ev;
    ev.segment = segment;
    ev.param = s_a + frac * (s_b - s_a);
    ev.point = q;
    try {
        ev.arc = classify_arc(geom, psi + theta, 1e-6);
    } catch (const Error&) {
        std::ostringstream msg;
        msg << "crossing at a cusp of C on segment " << segment << ", parameter " << ev.param;
        throw Error(ErrorCode::SingularityHit, msg.str());
    }
    return ev;
}

void record(ContinuationTrace& trace, const GeometryParams& geom, const NuDelta& q, const GlidePose& pose,
            std::size_t segment, double param, double disc) {
    TraceSample sample{q, pose, segment, param, disc, std::abs(pose.r - gamma_r(geom, pose.psi))};
    if (trace.samples.empty()) {
        trace.min_abs_g = std::abs(pose.g);
        trace.min_abs_disc = std::abs(disc);
        trace.min_gamma_distance = sample.gamma_distance;
    } else {
        trace.min_abs_g = std::min(trace.min_abs_g, std::abs(pose.g));
        trace.min_abs_disc = std::min(trace.min_abs_disc, std::abs(disc));
        trace.min_gamma_distance = std::min(trace.min_gamma_distance, sample.gamma_distance);
    }
    trace.samples.push_back(sample);
}

}  // namespace

JointSquares lift_nu(const JointSquares& j, double lambda) {
    const double l2 = lambda * lambda;
    return {j.rho1_sq + l2, j.rho2_sq + l2, j.rho3_sq + l2};
}

ContinuationTrace track_path(const GeometryParams& geom, const JointPath& path, const GlidePose& start,
                             const PlanOptions& opts) {
    if (path.waypoints.empty()) throw std::invalid_argument("path has no waypoints");

    ContinuationTrace trace;
    const NuDelta first = path.waypoints.front();
    const JointSquares joint0 = nudelta_to_joint_unchecked(first);
    if (forward_residual(geom, start, joint0) > 1e-6 * (1.0 + first.nu)) {
        throw std::invalid_argument("start pose does not solve the DKP at the first waypoint");
    }
    const StepResult initial = nearest_solution(geom, first, start, opts);
    GlidePose cur = initial.pose.value_or(start);
    if (std::abs(cur.g) < opts.g_margin) {
        throw Error(ErrorCode::SingularityHit, "start pose lies on the g = 0 singularity");
    }
    DiscSample last = disc_at(geom, first);
    int last_sign = last.sign;
    record(trace, geom, first, cur, 0, 0.0, last.scaled);

    for (std::size_t seg = 0; seg + 1 < path.waypoints.size(); ++seg) {
        const NuDelta& a = path.waypoints[seg];
        const NuDelta& b = path.waypoints[seg + 1];
        double s = 0.0;
        double h = opts.initial_step;
        NuDelta prev_q = a;
        while (s < 1.0) {
            const double s1 = std::min(1.0, s + h);
            const NuDelta q = lerp(a, b, s1);
            const StepResult step = nearest_solution(geom, q, cur, opts);
            if (!step.pose) {
                h *= 0.5;
                if (h >= opts.min_step) continue;
                const double gd = std::abs(cur.r - gamma_r(geom, cur.psi));
                std::ostringstream msg;
                msg << "continuation stalled on segment " << seg << " at parameter " << s << " (|g| = "
                    << std::abs(cur.g) << ", distance to jacobian curve = " << gd
                    << ", nearest solution distance = " << step.nearest << ")";
                if (gd < 1e-3 || std::abs(cur.g) < 1e-3) throw Error(ErrorCode::SingularityHit, msg.str());
                throw Error(ErrorCode::BranchJump, msg.str());
            }
            const GlidePose next = *step.pose;
            if (std::abs(next.g) < opts.g_margin) {
                std::ostringstream msg;
                msg << "|g| = " << std::abs(next.g) << " below margin " << opts.g_margin << " on segment " << seg
                    << " at parameter " << s1;
                throw Error(ErrorCode::SingularityHit, msg.str());
            }
            const DiscSample ds = disc_at(geom, q);
            if (ds.sign != 0) {
                if (last_sign != 0 && ds.sign != last_sign) {
                    trace.crossings.push_back(locate_crossing(geom, prev_q, q, last_sign, seg, s, s1, next));
                }
                last_sign = ds.sign;
            }
            cur = next;
            record(trace, geom, q, cur, seg, s1, ds.scaled);
            prev_q = q;
            s = s1;
            h = std::min(2.0 * h, opts.initial_step);
        }
    }
    return trace;
}

ValidationReport validate(const GeometryParams& geom, const JointPath& path, const GlidePose& start,
                          const GlidePose& goal, const PlanOptions& opts) {
    ValidationReport report;
    report.trace = track_path(geom, path, start, opts);
    report.endpoint_error = pose_distance(report.trace.final_pose(), goal);
    std::vector<int> seen;
    for (const CrossingEvent& ev : report.trace.crossings) seen.push_back(ev.arc);
    report.crossings_match = seen == path.crossings;
    const bool endpoint_ok = report.endpoint_error <= opts.pose_tol;
    report.pass = endpoint_ok && report.crossings_match;

    std::ostringstream why;
    if (!endpoint_ok) why << "endpoint error " << report.endpoint_error << " exceeds " << opts.pose_tol;
    if (!report.crossings_match) {
        if (!endpoint_ok) why << "; ";
        why << "crossings [";
        for (std::size_t i = 0; i < seen.size(); ++i) why << (i ? " " : "") << seen[i];
        why << "] differ from declared [";
        for (std::size_t i = 0; i < path.crossings.size(); ++i) why << (i ? " " : "") << path.crossings[i];
        why << "]";
    }
    report.reason = why.str();
    return report;
}

JointPath plan(const GeometryParams& geom, const GlidePose& start, const GlidePose& goal, const PlanOptions& opts) {
    const AspectId as = aspect_of(geom, start);
    const AspectId ag = aspect_of(geom, goal);
    if (as.global_sign() != ag.global_sign()) {
        throw Error(ErrorCode::DifferentAspects, "start and goal lie in different aspects");
    }

    const NuDelta ns = joint_to_nudelta(leg_lengths_squared(geom, start));
    const NuDelta ng = joint_to_nudelta(leg_lengths_squared(geom, goal));

    JointPath path;
    path.start = start;
    path.goal = goal;
    if (pose_distance(start, goal) <= opts.pose_tol) {
        path.waypoints = {ns};
        path.nu_star = ns.nu;
        return path;
    }

    const int ls = label_pose(geom, start).label;
    const int lg = label_pose(geom, goal).label;

    const auto cusps = cusp_points(geom);
    Vec2 center{};
    for (const CuspPoint& c : cusps) center = center + (1.0 / 3.0) * to_vec(curve_C_at_angle(geom, c.psi_cusp));

    std::array<std::optional<Gate>, 4> gates;
    for (int l : {ls, lg}) {
        if (l != 0 && !gates[l]) gates[l] = arc_gate(geom, l, center);
    }

    double radius = 0.0;
    for (int i = 0; i <= 720; ++i) {
        const Vec2 q = to_vec(curve_C_at_angle(geom, -kHalfPi + kPi * i / 720.0));
        radius = std::max(radius, norm(q - center));
    }
    radius *= 1.25;
    radius = std::max({radius, norm(to_vec(ns) - center), norm(to_vec(ng) - center)});
    for (const auto& gate : gates) {
        if (gate) radius = std::max(radius, norm(gate->outer - center));
    }

    RouteBuilder route(geom, center, radius);
    route.start(to_vec(ns));
    if (ls != 0 && ls == lg && opts.direct_same_label) {
        route.inside_to(to_vec(ng));
    } else {
        if (ls != 0) {
            route.inside_to(gates[ls]->inner);
            route.push(gates[ls]->mid);
            route.push(gates[ls]->outer);
            path.crossings.push_back(ls);
        }
        if (lg != 0) {
            route.outside_to(gates[lg]->outer);
            route.push(gates[lg]->mid);
            route.push(gates[lg]->inner);
            route.inside_to(to_vec(ng));
            path.crossings.push_back(lg);
        } else {
            route.outside_to(to_vec(ng));
        }
    }

    const double base = std::max({route_level(geom, route.points(), opts.g_margin), ns.nu, ng.nu});
    double margin = opts.level_margin;
    std::string last_failure;
    for (int attempt = 0; attempt <= opts.max_retries; ++attempt, margin *= 2.0) {
        path.nu_star = base * (1.0 + margin);
        path.waypoints.clear();
        path.waypoints.push_back(ns);
        for (const Vec2& p : route.points()) path.waypoints.push_back({path.nu_star, p.x, p.y});
        path.waypoints.push_back(ng);
        try {
            const ValidationReport report = validate(geom, path, start, goal, opts);
            if (report.pass) return path;
            last_failure = report.reason;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularityHit && e.code() != ErrorCode::BranchJump) throw;
            last_failure = e.what();
        }
    }
    throw Error(ErrorCode::PlanInfeasible, "validation failed at every working level: " + last_failure);
}

}  // namespace symrpr
