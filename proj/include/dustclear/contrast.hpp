#pragma once

// Stage 3: contrast-limited adaptive histogram equalization on luma.

#include <limits>
#include <vector>

#include "dustclear/image.hpp"

namespace dustclear::contrast {

struct ClaheParams {
    int tiles_x = 8;
    int tiles_y = 8;
    /// Multiple of the uniform bin height; infinity disables clipping.
    double clip_limit = 2.0;
    int bins = 256;

    static constexpr double kUnbounded = std::numeric_limits<double>::infinity();

    void validate() const;
};

/// Per-tile lookup tables. `maps[(ty * tiles_x + tx) * bins + bin]` is the
/// normalized CDF value in [0,1] for that bin. Tile counts are reduced to the
/// image dimensions when the image is smaller than the requested grid.
struct TileMappings {
    int tiles_x = 0;
    int tiles_y = 0;
    int bins = 0;
    std::vector<int> x_edges;  // tiles_x + 1 boundaries; last tile absorbs the remainder
    std::vector<int> y_edges;
    std::vector<double> maps;

    const double* tile(int tx, int ty) const {
        return maps.data() + (static_cast<std::size_t>(ty) * tiles_x + tx) * bins;
    }
};

int bin_of(double v, int bins) noexcept;

TileMappings build_tile_mappings(const PlaneF& plane, const ClaheParams& params);

/// Input samples are expected in [0,1] (values outside are clamped into the
/// end bins). Output lies in [0,1].
PlaneF clahe(const PlaneF& plane, const ClaheParams& params);

/// CLAHE applied to Y only; U and V pass through, then the inverse transform
/// clamps to [0,1].
RgbF enhance_contrast(const RgbF& img, const ClaheParams& params);

}  // namespace dustclear::contrast
