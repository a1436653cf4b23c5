#include "symrpr/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "symrpr/geometry.hpp"

namespace symrpr {

namespace {

std::vector<SampledPoint> evaluate(const BatchCurve& curve, const std::vector<double>& params) {
    std::vector<double> xs(params.size());
    std::vector<double> ys(params.size());
    curve(params, xs, ys);
    std::vector<SampledPoint> out(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) out[i] = {params[i], xs[i], ys[i]};
    return out;
}

double turn_angle(const SampledPoint& a, const SampledPoint& b, const SampledPoint& c) {
    const double ux = b.x - a.x, uy = b.y - a.y;
    const double vx = c.x - b.x, vy = c.y - b.y;
    const double nu = std::hypot(ux, uy);
    const double nv = std::hypot(vx, vy);
    if (nu == 0.0 || nv == 0.0) return 0.0;
    const double cosine = std::clamp((ux * vx + uy * vy) / (nu * nv), -1.0, 1.0);
    return std::acos(cosine);
}

}  // namespace

std::vector<SampledPoint> adaptive_sample(const BatchCurve& curve, double lo, double hi,
                                          std::span<const double> forced, const SamplingOptions& opts) {
    const int n = std::max(opts.samples, 2);
    std::vector<double> params;
    params.reserve(static_cast<std::size_t>(n) + 1 + forced.size());
    for (int i = 0; i <= n; ++i) params.push_back(lo + (hi - lo) * static_cast<double>(i) / n);
    for (double f : forced) {
        if (f > lo && f < hi) params.push_back(f);
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    std::vector<SampledPoint> pts = evaluate(curve, params);
    const double threshold = opts.angle_threshold_deg * kPi / 180.0;

    for (int round = 0; round < opts.max_rounds; ++round) {
        std::vector<char> split(pts.size(), 0);  // split[i]: interval (i, i+1)
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            if (turn_angle(pts[i - 1], pts[i], pts[i + 1]) > threshold) {
                split[i - 1] = 1;
                split[i] = 1;
            }
        }
        std::vector<double> fresh;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (split[i] && pts[i + 1].param - pts[i].param > opts.min_step) {
                fresh.push_back(0.5 * (pts[i].param + pts[i + 1].param));
            }
        }
        if (fresh.empty()) break;
        std::vector<SampledPoint> added = evaluate(curve, fresh);
        std::vector<SampledPoint> merged;
        merged.reserve(pts.size() + added.size());
        std::merge(pts.begin(), pts.end(), added.begin(), added.end(), std::back_inserter(merged),
                   [](const SampledPoint& a, const SampledPoint& b) { return a.param < b.param; });
        pts = std::move(merged);
    }
    return pts;
}

}  // namespace symrpr
