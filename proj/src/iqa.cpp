#include "dustclear/iqa.hpp"

#include <algorithm>
#include <cmath>

namespace dustclear::iqa {

std::size_t EdgeMap::count() const {
    return static_cast<std::size_t>(std::count(visible.begin(), visible.end(), true));
}

PlaneF sobel_magnitude(const PlaneF& plane) {
    const int w = plane.width();
    const int h = plane.height();
    PlaneF out(w, h);
    auto px = [&](int x, int y) {
        return plane(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1));
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = (px(x + 1, y - 1) + 2.0 * px(x + 1, y) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2.0 * px(x - 1, y) + px(x - 1, y + 1));
            const double gy = (px(x - 1, y + 1) + 2.0 * px(x, y + 1) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2.0 * px(x, y - 1) + px(x + 1, y - 1));
            out(x, y) = std::hypot(gx, gy);
        }
    }
    return out;
}

EdgeMap visible_edges(const RgbF& img) {
    const PlaneF lum = luma(img);
    const int w = lum.width();
    const int h = lum.height();

    EdgeMap edges;
    edges.width = w;
    edges.height = h;
    edges.grad = sobel_magnitude(lum);
    edges.visible.assign(lum.size(), false);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double g = edges.grad(x, y);
            if (!(g > 0.0)) continue;

            double lo = lum(x, y);
            double hi = lo;
            double gmax = g;
            int beaten = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int nx = x + dx;
                    const int ny = y + dy;
                    // Out-of-image neighbours have no gradient to beat.
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) {
                        ++beaten;
                        continue;
                    }
                    lo = std::min(lo, lum(nx, ny));
                    hi = std::max(hi, lum(nx, ny));
                    const double ng = edges.grad(nx, ny);
                    gmax = std::max(gmax, ng);
                    if (g > ng) ++beaten;
                }
            }
            const double contrast = (hi - lo) / std::max(hi + lo, 1e-6);
            if (contrast > kVisibilityThreshold && (beaten >= 6 || g == gmax)) {
                edges.visible[static_cast<std::size_t>(y) * w + x] = true;
            }
        }
    }
    return edges;
}

double rate_e(const EdgeMap& orig, const EdgeMap& restored) {
    const std::size_t n_o = orig.count();
    if (n_o == 0) throw MetricError("e is undefined: original has no visible edges");
    const auto n_r = static_cast<double>(restored.count());
    return (n_r - static_cast<double>(n_o)) / static_cast<double>(n_o);
}

RbarResult rate_rbar_detail(const EdgeMap& orig, const EdgeMap& restored_edges) {
    if (orig.grad.size() != restored_edges.grad.size()) {
        throw std::invalid_argument("edge maps have different dimensions");
    }
    RbarResult result;
    double log_sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < restored_edges.visible.size(); ++i) {
        if (!restored_edges.visible[i]) continue;
        const double denom = orig.grad[i];
        if (denom < kGradientGuard) ++result.guarded;
        log_sum += std::log(restored_edges.grad[i] / std::max(denom, kGradientGuard));
        ++n;
    }
    if (n == 0) throw MetricError("r_bar is undefined: restored image has no visible edges");
    result.r_bar = std::exp(log_sum / static_cast<double>(n));
    return result;
}

double rate_rbar(const RgbF& orig, const RgbF& restored, const EdgeMap& restored_edges) {
    if (!orig.r.same_shape(restored.r)) throw std::invalid_argument("image dimensions differ");
    EdgeMap orig_grad;
    orig_grad.grad = sobel_magnitude(luma(orig));
    return rate_rbar_detail(orig_grad, restored_edges).r_bar;
}

namespace {

bool saturated(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return (r == 0 && g == 0 && b == 0) || (r == 255 && g == 255 && b == 255);
}

}  // namespace

SigmaResult rate_sigma_detail(const RgbF& orig, const RgbF& restored) {
    if (!orig.r.same_shape(restored.r)) throw std::invalid_argument("image dimensions differ");
    SigmaResult result;
    for (std::size_t i = 0; i < orig.size(); ++i) {
        const bool before = saturated(quantize(orig.r[i]), quantize(orig.g[i]), quantize(orig.b[i]));
        const bool after =
            saturated(quantize(restored.r[i]), quantize(restored.g[i]), quantize(restored.b[i]));
        if (after && !before) ++result.n_s;
    }
    result.sigma = static_cast<double>(result.n_s) / static_cast<double>(orig.size());
    return result;
}

double rate_sigma(const RgbF& orig, const RgbF& restored) {
    return rate_sigma_detail(orig, restored).sigma;
}

QualityReport assess(const RgbF& orig, const RgbF& restored, const StageTimings& timings) {
    if (!orig.r.same_shape(restored.r)) throw std::invalid_argument("image dimensions differ");
    QualityReport report;
    report.timings_ms = timings;

    const EdgeMap orig_edges = visible_edges(orig);
    const EdgeMap restored_edges = visible_edges(restored);
    report.n_o = orig_edges.count();
    report.n_r = restored_edges.count();

    try {
        report.e = rate_e(orig_edges, restored_edges);
    } catch (const MetricError& err) {
        report.errors.emplace_back(err.what());
    }
    try {
        const RbarResult rbar = rate_rbar_detail(orig_edges, restored_edges);
        report.r_bar = rbar.r_bar;
        report.guarded_ratios = rbar.guarded;
    } catch (const MetricError& err) {
        report.errors.emplace_back(err.what());
    }

    const SigmaResult sig = rate_sigma_detail(orig, restored);
    report.sigma = sig.sigma;
    report.n_s = sig.n_s;
    return report;
}

}  // namespace dustclear::iqa
