#pragma once

// Random planning problems shared by the unit and acceptance suites.

#include <cmath>
#include <utility>

#include "support/oracles.hpp"
#include "symrpr/modes.hpp"
#include "symrpr/singularity.hpp"

namespace oracle {

// Pose at least `margin` away from g = 0, the jacobian curve and the image of C.
inline symrpr::GlidePose random_regular_pose(Rng& rng, const symrpr::GeometryParams& geom, double margin = 0.05) {
    for (;;) {
        symrpr::GlidePose p{rng.uniform(-kPi / 2, kPi / 2), rng.uniform(-1.5, 1.5), rng.uniform(margin, 1.5)};
        if (rng.integer(0, 1) == 1) p.g = -p.g;
        if (std::abs(p.r - symrpr::gamma_r(geom, p.psi)) < margin) continue;
        const auto [rm, rp] = symrpr::characteristic_r(geom, p.psi);
        if (std::abs(p.r - rm) < margin || std::abs(p.r - rp) < margin) continue;
        return p;
    }
}

inline std::pair<symrpr::GlidePose, symrpr::GlidePose> random_same_aspect_pair(Rng& rng,
                                                                               const symrpr::GeometryParams& geom) {
    const symrpr::GlidePose a = random_regular_pose(rng, geom);
    for (;;) {
        const symrpr::GlidePose b = random_regular_pose(rng, geom);
        if (symrpr::aspect_of(geom, a).global_sign() == symrpr::aspect_of(geom, b).global_sign()) return {a, b};
    }
}

}  // namespace oracle
