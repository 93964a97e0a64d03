#include "dustclear/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <stdexcept>
#include <thread>

#include "dustclear/colorcast.hpp"
#include "dustclear/ppm.hpp"

namespace dustclear::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

void PipelineConfig::validate() const {
    if (skip_cast && skip_dehaze && skip_clahe) {
        throw std::invalid_argument("at least one pipeline stage must be enabled");
    }
    dehaze.validate();
    clahe.validate();
}

RgbF run_stages(const RgbF& img, const PipelineConfig& cfg) {
    cfg.validate();
    RgbF cur = img;
    if (!cfg.skip_cast) cur = colorcast::correct_cast(cur);
    if (!cfg.skip_dehaze) cur = dehaze::dehaze(cur, cfg.dehaze);
    if (!cfg.skip_clahe) cur = contrast::enhance_contrast(cur, cfg.clahe);
    return cur;
}

EnhanceResult enhance(const Raster8& img, const PipelineConfig& cfg) {
    cfg.validate();
    EnhanceResult result;
    iqa::StageTimings timings;
    std::vector<std::pair<std::string, RgbF>> stages;

    const RgbF input = to_planes(img);
    RgbF cur = input;

    // `total` spans the stage section only; intermediates are quantized
    // after the clock stops.
    const auto started = Clock::now();
    if (!cfg.skip_cast) {
        const auto t0 = Clock::now();
        cur = colorcast::correct_cast(cur);
        timings.cast = ms_since(t0);
        if (cfg.emit_intermediates) stages.emplace_back("cast", cur);
    }
    if (!cfg.skip_dehaze) {
        const auto t0 = Clock::now();
        cur = dehaze::dehaze(cur, cfg.dehaze);
        timings.dehaze = ms_since(t0);
        if (cfg.emit_intermediates) stages.emplace_back("dehaze", cur);
    }
    if (!cfg.skip_clahe) {
        const auto t0 = Clock::now();
        cur = contrast::enhance_contrast(cur, cfg.clahe);
        timings.clahe = ms_since(t0);
        if (cfg.emit_intermediates) stages.emplace_back("clahe", cur);
    }
    timings.total = ms_since(started);

    result.output = to_raster(cur);
    for (const auto& [name, stage_img] : stages) {
        result.intermediates.emplace_back(name, to_raster(stage_img));
    }
    // Assess on the quantized output so the metrics match the written file.
    result.report = iqa::assess(input, to_planes(result.output), timings);
    return result;
}

void DegradationParams::validate() const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("transmission must lie in [0,1]");
    for (double a : {airlight_r, airlight_g, airlight_b}) {
        if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("airlight must lie in (0,1]");
    }
    if (!(noise_sigma >= 0.0)) throw std::invalid_argument("noise sigma must be >= 0");
}

RgbF synth_degrade(const RgbF& clean, const DegradationParams& p, std::uint64_t seed) {
    p.validate();
    RgbF hazy(clean.width(), clean.height());
    for (std::size_t i = 0; i < clean.size(); ++i) {
        hazy.r[i] = clean.r[i] * p.t + p.airlight_r * (1.0 - p.t);
        hazy.g[i] = clean.g[i] * p.t + p.airlight_g * (1.0 - p.t);
        hazy.b[i] = clean.b[i] * p.t + p.airlight_b * (1.0 - p.t);
    }
    colorcast::YuvPlanes yuv = colorcast::rgb_to_yuv(hazy);
    for (auto& s : yuv.u.samples()) s += p.u_shift;
    for (auto& s : yuv.v.samples()) s += p.v_shift;
    RgbF out = colorcast::yuv_to_rgb(yuv);

    if (p.noise_sigma > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, p.noise_sigma);
        for (PlaneF* plane : {&out.r, &out.g, &out.b}) {
            for (auto& s : plane->samples()) s = std::clamp(s + noise(rng), 0.0, 1.0);
        }
    }
    return out;
}

Raster8 synth_degrade(const Raster8& clean, const DegradationParams& p, std::uint64_t seed) {
    return to_raster(synth_degrade(to_planes(clean), p, seed));
}

std::vector<std::filesystem::path> list_inputs(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw std::runtime_error("cannot read input directory " + dir.string());
    }
    std::vector<fs::path> files;
    for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
        if (!it->is_regular_file(ec)) continue;
        auto ext = it->path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".ppm" || ext == ".pnm") files.push_back(it->path());
    }
    if (ec) throw std::runtime_error("cannot read input directory " + dir.string());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) {
                  return a.filename().string() < b.filename().string();
              });
    return files;
}

BatchResult run_batch(const std::filesystem::path& input_dir,
                      const std::filesystem::path& output_dir, const PipelineConfig& cfg,
                      int jobs, std::filesystem::path intermediates_dir) {
    cfg.validate();
    const auto inputs = list_inputs(input_dir);
    if (inputs.empty()) throw std::runtime_error("no input images in " + input_dir.string());

    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + output_dir.string());
    if (intermediates_dir.empty()) intermediates_dir = output_dir;
    if (cfg.emit_intermediates) {
        std::filesystem::create_directories(intermediates_dir, ec);
        if (ec) {
            throw std::runtime_error("cannot create directory " + intermediates_dir.string());
        }
    }

    BatchResult batch;
    batch.rows.resize(inputs.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++) {
            ImageResult& row = batch.rows[i];
            row.name = inputs[i].filename().string();
            try {
                EnhanceResult res = enhance(read_ppm(inputs[i]), cfg);
                write_ppm(output_dir / row.name, res.output);
                for (const auto& [stage, img] : res.intermediates) {
                    write_ppm(intermediates_dir / (inputs[i].stem().string() + "." + stage + ".ppm"), img);
                }
                row.report = std::move(res.report);
            } catch (const std::exception& err) {
                row.errors.emplace_back(err.what());
            }
        }
    };

    const int workers = std::clamp(jobs, 1, static_cast<int>(inputs.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    for (const auto& row : batch.rows) {
        if (row.failed()) ++batch.failures;
    }
    return batch;
}

}  // namespace dustclear::pipeline
