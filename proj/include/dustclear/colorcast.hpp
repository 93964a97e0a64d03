#pragma once

// Stage 1: chroma-cast removal in YUV space.

#include "dustclear/image.hpp"

namespace dustclear::colorcast {

/// Y in [0,1]; U and V are signed chroma in [-0.5, 0.5] for [0,1] input.
struct YuvPlanes {
    PlaneF y;
    PlaneF u;
    PlaneF v;

    int width() const noexcept { return y.width(); }
    int height() const noexcept { return y.height(); }
    std::size_t size() const noexcept { return y.size(); }
};

YuvPlanes rgb_to_yuv(const RgbF& img);

/// Inverse transform with the 1.402 / 0.3456 / 0.7145 / 1.7710 coefficients.
/// These are not the exact algebraic inverse of rgb_to_yuv; the round trip
/// drifts by up to ~0.5% of full scale. Output is clamped to [0,1].
RgbF yuv_to_rgb(const YuvPlanes& yuv);

/// Subtracts the plane mean from U and V. Y is passed through untouched.
YuvPlanes correct_chroma(const YuvPlanes& yuv);

/// Row-ordered mean; the summation order is fixed so results are reproducible.
double plane_mean(const PlaneF& plane);

/// rgb_to_yuv -> correct_chroma -> yuv_to_rgb.
RgbF correct_cast(const RgbF& img);

}  // namespace dustclear::colorcast
