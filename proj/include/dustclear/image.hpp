#pragma once

// Image buffers and windowed primitives shared by every processing stage.
//
// Raster8 is the interleaved 8-bit I/O form. PlaneF is the single-channel
// double-precision compute form. All windowed operations shrink the window at
// the image border instead of padding.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dustclear {

class Raster8 {
public:
    Raster8() = default;
    /// Zero-filled raster. Throws std::invalid_argument on a zero dimension.
    Raster8(int width, int height);
    /// Takes ownership of interleaved RGB samples; size must be width*height*3.
    Raster8(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    std::span<const std::uint8_t> data() const noexcept { return data_; }
    std::span<std::uint8_t> data() noexcept { return data_; }

    std::uint8_t at(int x, int y, int channel) const {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * 3 + channel];
    }
    std::uint8_t& at(int x, int y, int channel) {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * 3 + channel];
    }

    friend bool operator==(const Raster8&, const Raster8&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

class PlaneF {
public:
    PlaneF() = default;
    PlaneF(int width, int height, double fill = 0.0);
    PlaneF(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool same_shape(const PlaneF& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    double operator()(int x, int y) const noexcept {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    double& operator()(int x, int y) noexcept {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    double operator[](std::size_t i) const noexcept { return data_[i]; }
    double& operator[](std::size_t i) noexcept { return data_[i]; }

    std::span<const double> samples() const noexcept { return data_; }
    std::span<double> samples() noexcept { return data_; }

    friend bool operator==(const PlaneF&, const PlaneF&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Three planes of identical shape; samples normally in [0, 1].
struct RgbF {
    PlaneF r;
    PlaneF g;
    PlaneF b;

    RgbF() = default;
    RgbF(int width, int height, double fill = 0.0)
        : r(width, height, fill), g(width, height, fill), b(width, height, fill) {}
    RgbF(PlaneF red, PlaneF green, PlaneF blue);

    int width() const noexcept { return r.width(); }
    int height() const noexcept { return r.height(); }
    std::size_t size() const noexcept { return r.size(); }

    friend bool operator==(const RgbF&, const RgbF&) = default;
};

RgbF to_planes(const Raster8& img);

/// Clamps to [0,1], scales by 255 and rounds half away from zero.
Raster8 to_raster(const RgbF& img);

std::uint8_t quantize(double v) noexcept;

/// Mean over the (2r+1)^2 window clipped to the image. O(width*height) for
/// any radius.
PlaneF box_mean(const PlaneF& src, int radius);

/// Minimum over the (2r+1)^2 window clipped to the image (monotonic-deque
/// running minimum per axis).
PlaneF box_min(const PlaneF& src, int radius);

/// Luma with the BT.601 weights 0.299, 0.587, 0.114.
PlaneF luma(const RgbF& img);

PlaneF pointwise_min(const RgbF& img);

}  // namespace dustclear
