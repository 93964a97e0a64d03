#include "dustclear/dehaze.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dustclear::dehaze {

void DehazeParams::validate() const {
    if (patch < 1 || patch % 2 == 0) {
        throw std::invalid_argument("patch must be a positive odd number, got " +
                                    std::to_string(patch));
    }
    if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("omega must lie in [0,1]");
    if (!(t_floor > 0.0 && t_floor < 1.0)) {
        throw std::invalid_argument("t_floor must lie in (0,1)");
    }
    if (gf_radius < 0) throw std::invalid_argument("gf_radius must be >= 0");
    if (!(gf_eps > 0.0)) throw std::invalid_argument("gf_eps must be > 0");
}

PlaneF dark_channel(const RgbF& img, int patch) {
    if (patch < 1 || patch % 2 == 0) {
        throw std::invalid_argument("dark channel patch must be a positive odd number");
    }
    return box_min(pointwise_min(img), patch / 2);
}

AtmosphericLight estimate_atmospheric_light(const RgbF& img, const PlaneF& dark) {
    if (!dark.same_shape(img.r)) {
        throw std::invalid_argument("dark channel and image dimensions differ");
    }
    const std::size_t n = img.size();
    const std::size_t count = std::max<std::size_t>(1, n / 1000);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto brighter = [&](std::size_t lhs, std::size_t rhs) {
        if (dark[lhs] != dark[rhs]) return dark[lhs] > dark[rhs];
        return lhs < rhs;
    };
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count - 1),
                     order.end(), brighter);

    std::size_t best = n;
    double best_sum = -1.0;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t i = order[k];
        const double sum = img.r[i] + img.g[i] + img.b[i];
        if (sum > best_sum || (sum == best_sum && i < best)) {
            best_sum = sum;
            best = i;
        }
    }
    constexpr double floor = AtmosphericLight::kFloor;
    return {std::max(img.r[best], floor), std::max(img.g[best], floor),
            std::max(img.b[best], floor)};
}

TransmissionMap estimate_transmission(const RgbF& img, const AtmosphericLight& a,
                                      const DehazeParams& params) {
    params.validate();
    RgbF normalized = img;
    for (auto& s : normalized.r.samples()) s /= a.r;
    for (auto& s : normalized.g.samples()) s /= a.g;
    for (auto& s : normalized.b.samples()) s /= a.b;

    PlaneF t = dark_channel(normalized, params.patch);
    for (auto& s : t.samples()) {
        s = std::clamp(1.0 - params.omega * s, params.t_floor, 1.0);
    }
    return {std::move(t)};
}

PlaneF guided_filter(const PlaneF& guide, const PlaneF& src, int radius, double eps) {
    if (!guide.same_shape(src)) throw std::invalid_argument("guide and source dimensions differ");
    if (!(eps > 0.0)) throw std::invalid_argument("guided filter eps must be > 0");

    const int w = src.width();
    const int h = src.height();
    const std::size_t n = src.size();

    PlaneF gg(w, h);
    PlaneF gs(w, h);
    for (std::size_t i = 0; i < n; ++i) {
        gg[i] = guide[i] * guide[i];
        gs[i] = guide[i] * src[i];
    }
    const PlaneF mean_g = box_mean(guide, radius);
    const PlaneF mean_s = box_mean(src, radius);
    const PlaneF mean_gg = box_mean(gg, radius);
    const PlaneF mean_gs = box_mean(gs, radius);

    PlaneF a(w, h);
    PlaneF b(w, h);
    for (std::size_t i = 0; i < n; ++i) {
        const double var = mean_gg[i] - mean_g[i] * mean_g[i];
        const double cov = mean_gs[i] - mean_g[i] * mean_s[i];
        a[i] = cov / (var + eps);
        b[i] = mean_s[i] - a[i] * mean_g[i];
    }
    const PlaneF mean_a = box_mean(a, radius);
    const PlaneF mean_b = box_mean(b, radius);

    PlaneF out(w, h);
    for (std::size_t i = 0; i < n; ++i) out[i] = mean_a[i] * guide[i] + mean_b[i];
    return out;
}

RgbF recover_radiance(const RgbF& img, const TransmissionMap& t, const AtmosphericLight& a,
                      double t_floor, bool clamp) {
    if (!t.t.same_shape(img.r)) throw std::invalid_argument("transmission dimensions differ");
    RgbF out(img.width(), img.height());
    // (I - A)/t + A rewritten as I + (I - A)(1 - t)/t: same value, but exact
    // for t == 1 and for I == A.
    auto channel = [&](const PlaneF& in, PlaneF& dst, double airlight) {
        for (std::size_t i = 0; i < in.size(); ++i) {
            const double te = std::max(t.t[i], t_floor);
            const double j = in[i] + (in[i] - airlight) * ((1.0 - te) / te);
            dst[i] = clamp ? std::clamp(j, 0.0, 1.0) : j;
        }
    };
    channel(img.r, out.r, a.r);
    channel(img.g, out.g, a.g);
    channel(img.b, out.b, a.b);
    return out;
}

RgbF dehaze(const RgbF& img, const DehazeParams& params) {
    params.validate();
    const PlaneF dark = dark_channel(img, params.patch);
    const AtmosphericLight a = estimate_atmospheric_light(img, dark);
    TransmissionMap raw = estimate_transmission(img, a, params);

    PlaneF refined = guided_filter(luma(img), raw.t, params.gf_radius, params.gf_eps);
    for (auto& s : refined.samples()) s = std::clamp(s, params.t_floor, 1.0);

    return recover_radiance(img, TransmissionMap{std::move(refined)}, a, params.t_floor);
}

}  // namespace dustclear::dehaze
