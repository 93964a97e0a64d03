#pragma once

// Stage 2: dark-channel-prior haze removal.
//
// Scattering model: I = J*t + A*(1 - t). The dark channel of the hazy image
// gives a per-pixel transmission estimate, refined with a guided filter
// steered by the luma of the input, and J is recovered by inverting the model.

#include "dustclear/image.hpp"

namespace dustclear::dehaze {

struct DehazeParams {
    int patch = 15;         // odd window edge for the dark channel
    double omega = 0.95;    // fraction of haze removed, in [0,1]
    double t_floor = 0.1;   // lower bound on transmission, in (0,1)
    int gf_radius = 60;
    double gf_eps = 1e-3;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct AtmosphericLight {
    double r = 1.0;
    double g = 1.0;
    double b = 1.0;

    static constexpr double kFloor = 0.05;
};

/// Transmission samples, always within [t_floor, 1].
struct TransmissionMap {
    PlaneF t;
};

PlaneF dark_channel(const RgbF& img, int patch);

/// Brightest 0.1% of pixels by dark channel (at least one), then the one with
/// the largest R+G+B. Ties go to the smaller row-major index. Components are
/// floored at AtmosphericLight::kFloor.
AtmosphericLight estimate_atmospheric_light(const RgbF& img, const PlaneF& dark);

TransmissionMap estimate_transmission(const RgbF& img, const AtmosphericLight& a,
                                      const DehazeParams& params);

/// Edge-preserving smoothing of `src` steered by `guide` (He et al. form).
PlaneF guided_filter(const PlaneF& guide, const PlaneF& src, int radius, double eps);

/// J = (I - A) / max(t, t_floor) + A, clamped to [0,1] when `clamp` is set.
RgbF recover_radiance(const RgbF& img, const TransmissionMap& t, const AtmosphericLight& a,
                      double t_floor, bool clamp = true);

RgbF dehaze(const RgbF& img, const DehazeParams& params);

}  // namespace dustclear::dehaze
