#pragma once

// Three-stage restoration pipeline (cast correction, dehazing, CLAHE), the
// synthetic degradation used for self-contained evaluation, and batch mode.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dustclear/contrast.hpp"
#include "dustclear/dehaze.hpp"
#include "dustclear/image.hpp"
#include "dustclear/iqa.hpp"

namespace dustclear::pipeline {

struct PipelineConfig {
    dehaze::DehazeParams dehaze;
    contrast::ClaheParams clahe;
    bool skip_cast = false;
    bool skip_dehaze = false;
    bool skip_clahe = false;
    bool emit_intermediates = false;

    /// Throws std::invalid_argument when every stage is disabled or a
    /// parameter block is invalid.
    void validate() const;
};

struct EnhanceResult {
    Raster8 output;
    iqa::QualityReport report;
    /// Filled only with emit_intermediates: ("cast" | "dehaze" | "clahe", image).
    std::vector<std::pair<std::string, Raster8>> intermediates;
};

/// Stage order is fixed: cast -> dehaze -> clahe. The report compares the
/// input against the final output; `total` is the wall-clock time of the
/// enabled stages run back to back.
EnhanceResult enhance(const Raster8& img, const PipelineConfig& cfg);

/// Float-domain variant without assessment; used by tests that need the
/// unquantized stage outputs.
RgbF run_stages(const RgbF& img, const PipelineConfig& cfg);

struct DegradationParams {
    double t = 0.6;
    double airlight_r = 0.9;
    double airlight_g = 0.8;
    double airlight_b = 0.55;
    double u_shift = 0.0;
    double v_shift = 0.0;
    /// Standard deviation of additive Gaussian noise; 0 disables noise.
    double noise_sigma = 0.0;

    void validate() const;
};

/// I = J*t + A*(1 - t) per channel, then the chroma offsets are added in YUV.
RgbF synth_degrade(const RgbF& clean, const DegradationParams& p, std::uint64_t seed = 0);
Raster8 synth_degrade(const Raster8& clean, const DegradationParams& p, std::uint64_t seed = 0);

struct ImageResult {
    std::string name;
    std::optional<iqa::QualityReport> report;
    std::vector<std::string> errors;  // processing failures (unreadable file, ...)

    bool failed() const { return !report.has_value(); }
};

struct BatchResult {
    std::vector<ImageResult> rows;  // lexicographic by file name
    std::size_t failures = 0;
};

/// Lists the *.ppm / *.pnm files directly inside `dir`, sorted by name.
std::vector<std::filesystem::path> list_inputs(const std::filesystem::path& dir);

/// Enhances every input into `output_dir` (same file name) using `jobs`
/// workers. Throws std::runtime_error when the directory cannot be read or
/// holds no inputs; individual failures are recorded per row. Intermediates,
/// when enabled, go to `intermediates_dir` (default: `output_dir`) as
/// `<stem>.<stage>.ppm`.
BatchResult run_batch(const std::filesystem::path& input_dir,
                      const std::filesystem::path& output_dir, const PipelineConfig& cfg,
                      int jobs = 1, std::filesystem::path intermediates_dir = {});

}  // namespace dustclear::pipeline
