#include "dustclear/image.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace dustclear {

namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("image dimensions must be positive, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
}

// Sliding window sum along one axis. `stride` selects rows (1) or columns
// (width); windows shrink at the ends.
void window_sums(const double* src, double* dst, int n, std::ptrdiff_t stride, int radius,
                 std::vector<double>& prefix) {
    prefix.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + src[i * stride];
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - radius);
        const int hi = std::min(n - 1, i + radius);
        dst[i * stride] = prefix[hi + 1] - prefix[lo];
    }
}

void window_mins(const double* src, double* dst, int n, std::ptrdiff_t stride, int radius,
                 std::deque<int>& window) {
    window.clear();
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int hi = std::min(n - 1, i + radius);
        for (; next <= hi; ++next) {
            while (!window.empty() && src[window.back() * stride] >= src[next * stride]) {
                window.pop_back();
            }
            window.push_back(next);
        }
        while (window.front() < i - radius) window.pop_front();
        dst[i * stride] = src[window.front() * stride];
    }
}

}  // namespace

Raster8::Raster8(int width, int height) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(pixel_count() * 3, 0);
}

Raster8::Raster8(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != pixel_count() * 3) {
        throw std::invalid_argument("raster payload size " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height) + "x3");
    }
}

PlaneF::PlaneF(int width, int height, double fill) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

PlaneF::PlaneF(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * height) {
        throw std::invalid_argument("plane payload size does not match dimensions");
    }
}

RgbF::RgbF(PlaneF red, PlaneF green, PlaneF blue)
    : r(std::move(red)), g(std::move(green)), b(std::move(blue)) {
    if (!r.same_shape(g) || !r.same_shape(b)) {
        throw std::invalid_argument("RGB planes must share dimensions");
    }
}

RgbF to_planes(const Raster8& img) {
    RgbF out(img.width(), img.height());
    const auto src = img.data();
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        out.r[i] = src[3 * i] / 255.0;
        out.g[i] = src[3 * i + 1] / 255.0;
        out.b[i] = src[3 * i + 2] / 255.0;
    }
    return out;
}

std::uint8_t quantize(double v) noexcept {
    if (!(v > 0.0)) return 0;  // also maps NaN to 0
    if (v >= 1.0) return 255;
    return static_cast<std::uint8_t>(std::round(v * 255.0));
}

Raster8 to_raster(const RgbF& img) {
    Raster8 out(img.width(), img.height());
    auto dst = out.data();
    for (std::size_t i = 0; i < img.size(); ++i) {
        dst[3 * i] = quantize(img.r[i]);
        dst[3 * i + 1] = quantize(img.g[i]);
        dst[3 * i + 2] = quantize(img.b[i]);
    }
    return out;
}

PlaneF box_mean(const PlaneF& src, int radius) {
    if (radius < 0) throw std::invalid_argument("box_mean radius must be >= 0");
    if (radius == 0) return src;

    const int w = src.width();
    const int h = src.height();
    PlaneF rows(w, h);
    PlaneF out(w, h);
    std::vector<double> prefix;

    for (int y = 0; y < h; ++y) {
        window_sums(&src.samples()[static_cast<std::size_t>(y) * w],
                    &rows.samples()[static_cast<std::size_t>(y) * w], w, 1, radius, prefix);
    }
    for (int x = 0; x < w; ++x) {
        window_sums(&rows.samples()[x], &out.samples()[x], h, w, radius, prefix);
    }

    const auto [lo_it, hi_it] = std::minmax_element(src.samples().begin(), src.samples().end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    for (int y = 0; y < h; ++y) {
        const int cy = std::min(h - 1, y + radius) - std::max(0, y - radius) + 1;
        for (int x = 0; x < w; ++x) {
            const int cx = std::min(w - 1, x + radius) - std::max(0, x - radius) + 1;
            // Prefix-sum differences can drift a few ulps outside the data range.
            out(x, y) = std::clamp(out(x, y) / (static_cast<double>(cx) * cy), lo, hi);
        }
    }
    return out;
}

PlaneF box_min(const PlaneF& src, int radius) {
    if (radius < 0) throw std::invalid_argument("box_min radius must be >= 0");
    if (radius == 0) return src;

    const int w = src.width();
    const int h = src.height();
    PlaneF rows(w, h);
    PlaneF out(w, h);
    std::deque<int> window;
    for (int y = 0; y < h; ++y) {
        window_mins(&src.samples()[static_cast<std::size_t>(y) * w],
                    &rows.samples()[static_cast<std::size_t>(y) * w], w, 1, radius, window);
    }
    for (int x = 0; x < w; ++x) {
        window_mins(&rows.samples()[x], &out.samples()[x], h, w, radius, window);
    }
    return out;
}

PlaneF luma(const RgbF& img) {
    PlaneF out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out[i] = 0.299 * img.r[i] + 0.587 * img.g[i] + 0.114 * img.b[i];
    }
    return out;
}

PlaneF pointwise_min(const RgbF& img) {
    PlaneF out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out[i] = std::min({img.r[i], img.g[i], img.b[i]});
    }
    return out;
}

}  // namespace dustclear
