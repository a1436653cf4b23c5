#pragma once

#include <functional>
#include <span>
#include <vector>

namespace symrpr {

struct SampledPoint {
    double param = 0.0;
    double x = 0.0;
    double y = 0.0;
};

// Evaluates a planar curve at a batch of parameters.
using BatchCurve = std::function<void(std::span<const double> params, std::span<double> xs, std::span<double> ys)>;

struct SamplingOptions {
    int samples = 720;
    double angle_threshold_deg = 5.0;
    int max_rounds = 8;
    double min_step = 1e-9;
};

// Uniform samples on [lo, hi] (both ends included) plus the forced
// parameters, then curvature-adaptive subdivision: every interval next to
// a turn sharper than the threshold is halved, for at most max_rounds.
// The output is sorted by parameter and deterministic.
std::vector<SampledPoint> adaptive_sample(const BatchCurve& curve, double lo, double hi,
                                          std::span<const double> forced, const SamplingOptions& opts = {});

}  // namespace symrpr
