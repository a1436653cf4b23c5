#include "symrpr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "symrpr/error.hpp"

namespace symrpr {

GeometryParams::GeometryParams(double b, double h, double d) : b_(b), h_(h), d_(d) {
    if (!(std::isfinite(b) && std::isfinite(h) && std::isfinite(d))) {
        throw Error(ErrorCode::InvalidGeometry, "non-finite parameter");
    }
    if (!(b > 0.0)) throw Error(ErrorCode::InvalidGeometry, "b must be positive");
    // h < 0 is a reflected copy of the same manipulator; callers normalize it.
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidGeometry, "h must be positive");
}

double reduce_half_turn(double psi, int* shifts) {
    double k = std::floor((psi + kHalfPi) / kPi);
    double out = psi - k * kPi;
    if (out >= kHalfPi) {
        out -= kPi;
        k += 1.0;
    } else if (out < -kHalfPi) {
        out += kPi;
        k -= 1.0;
    }
    if (shifts) *shifts = static_cast<int>(k);
    return out;
}

GlidePose GlidePose::canonical() const {
    int shifts = 0;
    const double reduced = reduce_half_turn(psi, &shifts);
    const double sign = (shifts % 2 == 0) ? 1.0 : -1.0;
    return {reduced, sign * r, sign * g};
}

double pose_distance(const GlidePose& a, const GlidePose& b) {
    const GlidePose ca = a.canonical();
    const GlidePose cb = b.canonical();
    double best = std::numeric_limits<double>::infinity();
    for (int k = -1; k <= 1; ++k) {
        const double sign = (k == 0) ? 1.0 : -1.0;
        const double dpsi = ca.psi + k * kPi - cb.psi;
        const double dr = sign * ca.r - cb.r;
        const double dg = sign * ca.g - cb.g;
        best = std::min(best, std::sqrt(dpsi * dpsi + dr * dr + dg * dg));
    }
    return best;
}

JointSquares leg_lengths_squared(const GeometryParams& geom, const GlidePose& pose) {
    const double c = std::cos(pose.psi);
    const double s = std::sin(pose.psi);
    const double g2 = pose.g * pose.g;
    const double e2 = geom.b() * c - pose.r;
    const double e3 = geom.d() * c + geom.h() * s - pose.r;
    return {4.0 * (pose.r * pose.r + g2), 4.0 * (e2 * e2 + g2), 4.0 * (e3 * e3 + g2)};
}

DeltaPair deltas_from_pose(const GeometryParams& geom, double psi, double r) {
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    const double bc = geom.b() * c;
    const double proj = geom.d() * c + geom.h() * s;
    return {bc * (bc - 2.0 * r), proj * (proj - 2.0 * r)};
}

RigidPose glide_to_rigid(const GlidePose& pose) {
    const double c = std::cos(pose.psi);
    const double s = std::sin(pose.psi);
    double phi = std::fmod(2.0 * pose.psi + kPi, 2.0 * kPi);
    if (phi < 0.0) phi += 2.0 * kPi;
    if (phi >= 2.0 * kPi) phi -= 2.0 * kPi;
    return {phi, 2.0 * (pose.r * c - pose.g * s), 2.0 * (pose.r * s + pose.g * c)};
}

GlidePose rigid_to_glide(const RigidPose& pose) {
    // (r, g) is the rotation by -psi of (x, y) / 2; computing it with the
    // reduced psi already yields the canonical representative.
    const double psi = reduce_half_turn(0.5 * (pose.phi - kPi));
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    const double hx = 0.5 * pose.x;
    const double hy = 0.5 * pose.y;
    return {psi, hx * c + hy * s, -hx * s + hy * c};
}

std::array<PlanarPoint, 3> base_vertices(const GeometryParams& geom) {
    return {PlanarPoint{0.0, 0.0}, PlanarPoint{geom.b(), 0.0}, PlanarPoint{geom.d(), geom.h()}};
}

std::array<PlanarPoint, 3> platform_vertices(const GeometryParams& geom, const GlidePose& pose) {
    const double c = std::cos(pose.psi);
    const double s = std::sin(pose.psi);
    const double tx = -2.0 * pose.g * s;
    const double ty = 2.0 * pose.g * c;
    std::array<PlanarPoint, 3> out{};
    const auto base = base_vertices(geom);
    for (std::size_t i = 0; i < 3; ++i) {
        const double offset = base[i].x * c + base[i].y * s - pose.r;
        out[i] = {base[i].x - 2.0 * offset * c + tx, base[i].y - 2.0 * offset * s + ty};
    }
    return out;
}

NuDelta joint_to_nudelta(const JointSquares& j) {
    return {j.rho1_sq + j.rho2_sq + j.rho3_sq, 0.25 * (j.rho2_sq - j.rho1_sq),
            0.25 * (j.rho3_sq - j.rho1_sq)};
}

JointSquares nudelta_to_joint_unchecked(const NuDelta& n) {
    const double rho1_sq = (n.nu - 4.0 * n.delta2 - 4.0 * n.delta3) / 3.0;
    return {rho1_sq, rho1_sq + 4.0 * n.delta2, rho1_sq + 4.0 * n.delta3};
}

JointSquares nudelta_to_joint(const NuDelta& n) {
    const JointSquares j = nudelta_to_joint_unchecked(n);
    if (!j.valid()) {
        std::ostringstream msg;
        msg << "recovered squares (" << j.rho1_sq << ", " << j.rho2_sq << ", " << j.rho3_sq
            << ") include a negative value";
        throw Error(ErrorCode::InvalidJointPoint, msg.str());
    }
    return j;
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

GeometryParams parse_geometry(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    double values[3] = {0.0, 0.0, 0.0};
    bool seen[3] = {false, false, false};
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(line_no) + ": expected `key = value`");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        int slot = -1;
        if (key == "b") slot = 0;
        else if (key == "h") slot = 1;
        else if (key == "d") slot = 2;
        else throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown key `" + key + "`");
        std::size_t used = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) {
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(line_no) + ": bad number `" + value + "`");
        }
        values[slot] = parsed;
        seen[slot] = true;
    }
    for (int i = 0; i < 3; ++i) {
        if (!seen[i]) {
            static const char* names[] = {"b", "h", "d"};
            throw Error(ErrorCode::ParseError, std::string("missing key `") + names[i] + "`");
        }
    }
    return {values[0], values[1], values[2]};
}

GeometryParams load_geometry_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open geometry file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_geometry(buf.str());
}

}  // namespace symrpr
