#pragma once

// No-reference assessment of a restoration from an (original, restored) pair:
//   e      relative gain in visible edges, (n_r - n_o) / n_o
//   r_bar  geometric mean of restored/original gradient ratios at the
//          restored image's visible edges
//   sigma  fraction of pixels that became saturated (black or white)

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dustclear/image.hpp"

namespace dustclear::iqa {

/// A metric is undefined for the given pair (no edges to normalize by).
class MetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<bool> visible;
    PlaneF grad;

    std::size_t count() const;
};

inline constexpr double kVisibilityThreshold = 0.05;
inline constexpr double kGradientGuard = 1e-6;

/// Sobel magnitude of the luma plane. Border pixels replicate their nearest
/// neighbour.
PlaneF sobel_magnitude(const PlaneF& plane);

/// A pixel is a visible edge when its 3x3 Michelson contrast exceeds 5%, its
/// gradient is positive, and the gradient beats at least 6 of the 8
/// neighbours or equals the neighbourhood maximum.
EdgeMap visible_edges(const RgbF& img);

/// Throws MetricError when the original has no visible edges.
double rate_e(const EdgeMap& orig, const EdgeMap& restored);

struct RbarResult {
    double r_bar = 1.0;
    std::size_t guarded = 0;  // edges whose original gradient hit the 1e-6 guard
};

/// Throws MetricError when the restored image has no visible edges.
RbarResult rate_rbar_detail(const EdgeMap& orig, const EdgeMap& restored_edges);
double rate_rbar(const RgbF& orig, const RgbF& restored, const EdgeMap& restored_edges);

struct SigmaResult {
    double sigma = 0.0;
    std::size_t n_s = 0;
};

SigmaResult rate_sigma_detail(const RgbF& orig, const RgbF& restored);
double rate_sigma(const RgbF& orig, const RgbF& restored);

struct StageTimings {
    double cast = 0.0;
    double dehaze = 0.0;
    double clahe = 0.0;
    double total = 0.0;
};

struct QualityReport {
    std::optional<double> e;
    std::optional<double> r_bar;
    double sigma = 0.0;
    std::size_t n_o = 0;
    std::size_t n_r = 0;
    std::size_t n_s = 0;
    std::size_t guarded_ratios = 0;
    StageTimings timings_ms;
    std::vector<std::string> errors;
};

/// Never throws on undefined metrics: they are left empty and described in
/// `errors`.
QualityReport assess(const RgbF& orig, const RgbF& restored, const StageTimings& timings = {});

}  // namespace dustclear::iqa
