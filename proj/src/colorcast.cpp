#include "dustclear/colorcast.hpp"

#include <algorithm>

namespace dustclear::colorcast {

YuvPlanes rgb_to_yuv(const RgbF& img) {
    const int w = img.width();
    const int h = img.height();
    YuvPlanes out{PlaneF(w, h), PlaneF(w, h), PlaneF(w, h)};
    for (std::size_t i = 0; i < img.size(); ++i) {
        const double r = img.r[i];
        const double g = img.g[i];
        const double b = img.b[i];
        out.y[i] = 0.299 * r + 0.587 * g + 0.114 * b;
        out.u[i] = -0.168736 * r - 0.331264 * g + 0.5 * b;
        out.v[i] = 0.5 * r - 0.418688 * g - 0.081312 * b;
    }
    return out;
}

RgbF yuv_to_rgb(const YuvPlanes& yuv) {
    RgbF out(yuv.width(), yuv.height());
    for (std::size_t i = 0; i < yuv.size(); ++i) {
        const double y = yuv.y[i];
        const double u = yuv.u[i];
        const double v = yuv.v[i];
        out.r[i] = std::clamp(y + 1.402 * v, 0.0, 1.0);
        out.g[i] = std::clamp(y - 0.3456 * u - 0.7145 * v, 0.0, 1.0);
        out.b[i] = std::clamp(y + 1.7710 * u, 0.0, 1.0);
    }
    return out;
}

double plane_mean(const PlaneF& plane) {
    double total = 0.0;
    const int w = plane.width();
    for (int y = 0; y < plane.height(); ++y) {
        double row = 0.0;
        for (int x = 0; x < w; ++x) row += plane(x, y);
        total += row;
    }
    return total / static_cast<double>(plane.size());
}

YuvPlanes correct_chroma(const YuvPlanes& yuv) {
    YuvPlanes out = yuv;
    const double mu = plane_mean(yuv.u);
    const double mv = plane_mean(yuv.v);
    for (auto& s : out.u.samples()) s -= mu;
    for (auto& s : out.v.samples()) s -= mv;
    return out;
}

RgbF correct_cast(const RgbF& img) {
    return yuv_to_rgb(correct_chroma(rgb_to_yuv(img)));
}

}  // namespace dustclear::colorcast
