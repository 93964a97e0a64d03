#include "dustclear/contrast.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dustclear/colorcast.hpp"

namespace dustclear::contrast {

namespace {

std::vector<int> tile_edges(int extent, int tiles) {
    std::vector<int> edges(static_cast<std::size_t>(tiles) + 1);
    const int base = extent / tiles;
    for (int i = 0; i < tiles; ++i) edges[i] = i * base;
    edges[tiles] = extent;
    return edges;
}

struct Blend {
    int lo = 0;
    int hi = 0;
    double weight = 0.0;
};

// Interpolation neighbours along one axis, measured between tile centres.
std::vector<Blend> blend_table(const std::vector<int>& edges, int extent) {
    const int tiles = static_cast<int>(edges.size()) - 1;
    std::vector<double> centres(tiles);
    for (int i = 0; i < tiles; ++i) centres[i] = 0.5 * (edges[i] + edges[i + 1] - 1);

    std::vector<Blend> table(extent);
    int cell = 0;
    for (int p = 0; p < extent; ++p) {
        if (p <= centres.front()) {
            table[p] = {0, 0, 0.0};
        } else if (p >= centres.back()) {
            table[p] = {tiles - 1, tiles - 1, 0.0};
        } else {
            while (p >= centres[cell + 1]) ++cell;
            table[p] = {cell, cell + 1, (p - centres[cell]) / (centres[cell + 1] - centres[cell])};
        }
    }
    return table;
}

}  // namespace

void ClaheParams::validate() const {
    if (tiles_x < 1 || tiles_y < 1) throw std::invalid_argument("tile counts must be >= 1");
    if (bins < 2) throw std::invalid_argument("bins must be >= 2");
    if (!(clip_limit >= 1.0)) throw std::invalid_argument("clip limit must be >= 1");
}

int bin_of(double v, int bins) noexcept {
    if (!(v > 0.0)) return 0;
    if (v >= 1.0) return bins - 1;
    return std::min(bins - 1, static_cast<int>(v * bins));
}

TileMappings build_tile_mappings(const PlaneF& plane, const ClaheParams& params) {
    params.validate();
    TileMappings m;
    m.tiles_x = std::min(params.tiles_x, plane.width());
    m.tiles_y = std::min(params.tiles_y, plane.height());
    m.bins = params.bins;
    m.x_edges = tile_edges(plane.width(), m.tiles_x);
    m.y_edges = tile_edges(plane.height(), m.tiles_y);
    m.maps.assign(static_cast<std::size_t>(m.tiles_x) * m.tiles_y * m.bins, 0.0);

    std::vector<double> hist(m.bins);
    for (int ty = 0; ty < m.tiles_y; ++ty) {
        for (int tx = 0; tx < m.tiles_x; ++tx) {
            std::fill(hist.begin(), hist.end(), 0.0);
            for (int y = m.y_edges[ty]; y < m.y_edges[ty + 1]; ++y) {
                for (int x = m.x_edges[tx]; x < m.x_edges[tx + 1]; ++x) {
                    hist[bin_of(plane(x, y), m.bins)] += 1.0;
                }
            }
            // Work on the normalized histogram so the mapping depends only on
            // the tile's distribution, not on its pixel count.
            const double pixels = static_cast<double>(m.x_edges[tx + 1] - m.x_edges[tx]) *
                                  (m.y_edges[ty + 1] - m.y_edges[ty]);
            for (auto& h : hist) h /= pixels;

            if (std::isfinite(params.clip_limit)) {
                const double limit = params.clip_limit / m.bins;
                double excess = 0.0;
                for (auto& h : hist) {
                    if (h > limit) {
                        excess += h - limit;
                        h = limit;
                    }
                }
                const double share = excess / m.bins;
                for (auto& h : hist) h += share;
            }

            double* map = m.maps.data() + (static_cast<std::size_t>(ty) * m.tiles_x + tx) * m.bins;
            double cdf = 0.0;
            for (int b = 0; b < m.bins; ++b) {
                cdf += hist[b];
                map[b] = std::min(1.0, cdf);
            }
        }
    }
    return m;
}

PlaneF clahe(const PlaneF& plane, const ClaheParams& params) {
    const TileMappings m = build_tile_mappings(plane, params);
    const auto xs = blend_table(m.x_edges, plane.width());
    const auto ys = blend_table(m.y_edges, plane.height());

    PlaneF out(plane.width(), plane.height());
    for (int y = 0; y < plane.height(); ++y) {
        const Blend& by = ys[y];
        for (int x = 0; x < plane.width(); ++x) {
            const Blend& bx = xs[x];
            const int bin = bin_of(plane(x, y), m.bins);
            const double m00 = m.tile(bx.lo, by.lo)[bin];
            const double m01 = m.tile(bx.hi, by.lo)[bin];
            const double m10 = m.tile(bx.lo, by.hi)[bin];
            const double m11 = m.tile(bx.hi, by.hi)[bin];
            const double top = m00 + bx.weight * (m01 - m00);
            const double bottom = m10 + bx.weight * (m11 - m10);
            out(x, y) = std::clamp(top + by.weight * (bottom - top), 0.0, 1.0);
        }
    }
    return out;
}

RgbF enhance_contrast(const RgbF& img, const ClaheParams& params) {
    colorcast::YuvPlanes yuv = colorcast::rgb_to_yuv(img);
    yuv.y = clahe(yuv.y, params);
    return colorcast::yuv_to_rgb(yuv);
}

}  // namespace dustclear::contrast
