#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// library's windowed primitives so the oracles stay independent of the code
// they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dustclear/image.hpp"

namespace dustclear::testing {

inline PlaneF random_plane(int w, int h, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    PlaneF p(w, h);
    for (auto& s : p.samples()) s = dist(rng);
    return p;
}

inline RgbF random_rgb(int w, int h, std::mt19937_64& rng) {
    return RgbF(random_plane(w, h, rng), random_plane(w, h, rng), random_plane(w, h, rng));
}

inline Raster8 random_raster(int w, int h, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(0, 255);
    Raster8 r(w, h);
    for (auto& s : r.data()) s = static_cast<std::uint8_t>(dist(rng));
    return r;
}

inline double max_abs_diff(const PlaneF& a, const PlaneF& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs_diff(const RgbF& a, const RgbF& b) {
    return std::max({max_abs_diff(a.r, b.r), max_abs_diff(a.g, b.g), max_abs_diff(a.b, b.b)});
}

/// Clipped-window bounds along one axis.
inline std::pair<int, int> window(int centre, int radius, int extent) {
    return {std::max(0, centre - radius), std::min(extent - 1, centre + radius)};
}

inline PlaneF oracle_box_mean(const PlaneF& src, int radius) {
    PlaneF out(src.width(), src.height());
    for (int y = 0; y < src.height(); ++y) {
        for (int x = 0; x < src.width(); ++x) {
            const auto [x0, x1] = window(x, radius, src.width());
            const auto [y0, y1] = window(y, radius, src.height());
            double sum = 0.0;
            int n = 0;
            for (int v = y0; v <= y1; ++v) {
                for (int u = x0; u <= x1; ++u) {
                    sum += src(u, v);
                    ++n;
                }
            }
            out(x, y) = sum / n;
        }
    }
    return out;
}

inline PlaneF oracle_dark_channel(const RgbF& img, int patch) {
    const int r = patch / 2;
    PlaneF out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const auto [x0, x1] = window(x, r, img.width());
            const auto [y0, y1] = window(y, r, img.height());
            double m = 1e300;
            for (int v = y0; v <= y1; ++v) {
                for (int u = x0; u <= x1; ++u) {
                    m = std::min({m, img.r(u, v), img.g(u, v), img.b(u, v)});
                }
            }
            out(x, y) = m;
        }
    }
    return out;
}

/// Guided filter by explicit least squares in every window: fit src ~ a*guide
/// + b over the window centred at k (ridge term eps on a), then average the
/// fitted models of all windows covering each pixel.
inline PlaneF oracle_guided_filter(const PlaneF& guide, const PlaneF& src, int radius, double eps) {
    const int w = src.width();
    const int h = src.height();
    std::vector<double> a(src.size()), b(src.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const auto [x0, x1] = window(x, radius, w);
            const auto [y0, y1] = window(y, radius, h);
            double n = 0, mg = 0, ms = 0;
            for (int v = y0; v <= y1; ++v) {
                for (int u = x0; u <= x1; ++u) {
                    mg += guide(u, v);
                    ms += src(u, v);
                    ++n;
                }
            }
            mg /= n;
            ms /= n;
            double var = 0, cov = 0;
            for (int v = y0; v <= y1; ++v) {
                for (int u = x0; u <= x1; ++u) {
                    var += (guide(u, v) - mg) * (guide(u, v) - mg);
                    cov += (guide(u, v) - mg) * (src(u, v) - ms);
                }
            }
            const std::size_t k = static_cast<std::size_t>(y) * w + x;
            a[k] = (cov / n) / (var / n + eps);
            b[k] = ms - a[k] * mg;
        }
    }
    PlaneF out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const auto [x0, x1] = window(x, radius, w);
            const auto [y0, y1] = window(y, radius, h);
            double sum = 0;
            int n = 0;
            for (int v = y0; v <= y1; ++v) {
                for (int u = x0; u <= x1; ++u) {
                    const std::size_t k = static_cast<std::size_t>(v) * w + u;
                    sum += a[k] * guide(x, y) + b[k];
                    ++n;
                }
            }
            out(x, y) = sum / n;
        }
    }
    return out;
}

/// Global histogram equalization by counting: each sample maps to the
/// fraction of samples whose 1/bins-wide level is at or below its own.
inline PlaneF oracle_global_equalization(const PlaneF& plane, int bins) {
    auto level = [bins](double v) {
        const double clamped = std::clamp(v, 0.0, 1.0);
        return std::min(bins - 1, static_cast<int>(std::floor(clamped * bins)));
    };
    std::vector<int> levels(plane.size());
    for (std::size_t i = 0; i < plane.size(); ++i) levels[i] = level(plane[i]);
    PlaneF out(plane.width(), plane.height());
    for (std::size_t i = 0; i < plane.size(); ++i) {
        std::size_t at_or_below = 0;
        for (int l : levels) at_or_below += (l <= levels[i]);
        out[i] = static_cast<double>(at_or_below) / static_cast<double>(plane.size());
    }
    return out;
}

/// Outdoor-like clean scene obeying the dark channel prior: textured
/// rectangles whose colours always keep one channel near zero, over a
/// bright horizon band whose radiance equals the airlight colour.
inline RgbF make_scene(int w, int h, std::uint64_t seed, double sky_r, double sky_g,
                       double sky_b) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RgbF img(w, h);

    const int horizon = h / 5;
    for (int y = 0; y < horizon; ++y) {
        for (int x = 0; x < w; ++x) {
            img.r(x, y) = sky_r;
            img.g(x, y) = sky_g;
            img.b(x, y) = sky_b;
        }
    }

    // Background ground colour, then random blocks.
    auto paint = [&](int x0, int y0, int x1, int y1) {
        double c[3] = {0.15 + 0.6 * unit(rng), 0.15 + 0.6 * unit(rng), 0.15 + 0.6 * unit(rng)};
        c[std::uniform_int_distribution<int>(0, 2)(rng)] = 0.02 * unit(rng);
        const double period = 3.0 + 6.0 * unit(rng);
        for (int y = std::max(y0, horizon); y < y1; ++y) {
            for (int x = x0; x < x1; ++x) {
                const double shade = 0.8 + 0.2 * std::sin((x + 0.7 * y) / period);
                img.r(x, y) = c[0] * shade;
                img.g(x, y) = c[1] * shade;
                img.b(x, y) = c[2] * shade;
            }
        }
    };
    paint(0, horizon, w, h);
    const int blocks = 12;
    for (int k = 0; k < blocks; ++k) {
        const int bw = 8 + static_cast<int>(unit(rng) * w / 3);
        const int bh = 8 + static_cast<int>(unit(rng) * h / 3);
        const int x0 = static_cast<int>(unit(rng) * (w - bw));
        const int y0 = horizon + static_cast<int>(unit(rng) * std::max(1, h - horizon - bh));
        paint(x0, y0, std::min(w, x0 + bw), std::min(h, y0 + bh));
    }
    return img;
}

/// Gray-world balanced variant: a neutral sky, and per-channel gains on the
/// ground so the three channel means agree (zero mean chroma). Gains keep
/// zero channels at zero, so the dark channel prior still holds.
inline RgbF make_balanced_scene(int w, int h, std::uint64_t seed, double sky = 0.92) {
    RgbF img = make_scene(w, h, seed, sky, sky, sky);
    const int horizon = h / 5;
    double mean[3] = {0, 0, 0};
    PlaneF* planes[3] = {&img.r, &img.g, &img.b};
    for (int c = 0; c < 3; ++c) {
        for (int y = horizon; y < h; ++y) {
            for (int x = 0; x < w; ++x) mean[c] += (*planes[c])(x, y);
        }
    }
    const double target = std::min({mean[0], mean[1], mean[2]});
    for (int c = 0; c < 3; ++c) {
        const double gain = target / mean[c];
        for (int y = horizon; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double& s = (*planes[c])(x, y);
                s *= gain;
            }
        }
    }
    return img;
}

/// I = J*t + A*(1-t) with scalar t, written independently of synth_degrade.
inline RgbF composite(const RgbF& clean, double t, double ar, double ag, double ab) {
    RgbF out(clean.width(), clean.height());
    for (std::size_t i = 0; i < clean.size(); ++i) {
        out.r[i] = clean.r[i] * t + ar * (1 - t);
        out.g[i] = clean.g[i] * t + ag * (1 - t);
        out.b[i] = clean.b[i] * t + ab * (1 - t);
    }
    return out;
}

/// Mean absolute error per channel, ignoring a border of `margin` pixels.
inline std::array<double, 3> interior_mae(const RgbF& a, const RgbF& b, int margin) {
    std::array<double, 3> sum{0, 0, 0};
    std::size_t n = 0;
    for (int y = margin; y < a.height() - margin; ++y) {
        for (int x = margin; x < a.width() - margin; ++x) {
            sum[0] += std::abs(a.r(x, y) - b.r(x, y));
            sum[1] += std::abs(a.g(x, y) - b.g(x, y));
            sum[2] += std::abs(a.b(x, y) - b.b(x, y));
            ++n;
        }
    }
    for (auto& s : sum) s /= static_cast<double>(n);
    return sum;
}

}  // namespace dustclear::testing
