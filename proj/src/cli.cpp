#include "dustclear/cli.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dustclear/pipeline.hpp"
#include "dustclear/ppm.hpp"
#include "dustclear/report.hpp"

namespace dustclear::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFatal = 1;
constexpr int kRowFailures = 2;

struct TileGrid {
    int x = 8;
    int y = 8;
};

// "8x8" or "8X6".
TileGrid parse_tiles(const std::string& text) {
    const auto sep = text.find_first_of("xX");
    if (sep == std::string::npos) throw CLI::ValidationError("--tiles", "expected NxM");
    try {
        std::size_t used_x = 0;
        std::size_t used_y = 0;
        const std::string xs = text.substr(0, sep);
        const std::string ys = text.substr(sep + 1);
        TileGrid g{std::stoi(xs, &used_x), std::stoi(ys, &used_y)};
        if (used_x != xs.size() || used_y != ys.size() || g.x < 1 || g.y < 1) {
            throw CLI::ValidationError("--tiles", "expected positive NxM");
        }
        return g;
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("--tiles", "expected NxM, got " + text);
    }
}

struct ProcessingOptions {
    pipeline::PipelineConfig cfg;
    std::string tiles = "8x8";
    bool unbounded_clip = false;
    std::string report_path;
    std::string intermediates_dir;
    bool no_timings = false;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--skip-cast", cfg.skip_cast, "Skip chroma-cast correction");
        cmd->add_flag("--skip-dehaze", cfg.skip_dehaze, "Skip dark-channel dehazing");
        cmd->add_flag("--skip-clahe", cfg.skip_clahe, "Skip CLAHE on luma");
        cmd->add_option("--patch", cfg.dehaze.patch, "Dark-channel window edge (odd)")
            ->capture_default_str();
        cmd->add_option("--omega", cfg.dehaze.omega, "Haze removal strength in [0,1]")
            ->capture_default_str();
        cmd->add_option("--t-floor", cfg.dehaze.t_floor, "Minimum transmission")
            ->capture_default_str();
        cmd->add_option("--gf-radius", cfg.dehaze.gf_radius, "Guided filter radius")
            ->capture_default_str();
        cmd->add_option("--gf-eps", cfg.dehaze.gf_eps, "Guided filter regularizer")
            ->capture_default_str();
        cmd->add_option("--tiles", tiles, "CLAHE tile grid NxM")->capture_default_str();
        cmd->add_option("--clip", cfg.clahe.clip_limit, "CLAHE clip limit (>= 1)")
            ->capture_default_str();
        cmd->add_flag("--no-clip", unbounded_clip, "Disable CLAHE clipping");
        cmd->add_option("--emit-intermediates", intermediates_dir,
                        "Directory for per-stage images");
        cmd->add_flag("--no-timings", no_timings, "Omit wall-clock timings from the report");
    }

    void finalize() {
        const TileGrid grid = parse_tiles(tiles);
        cfg.clahe.tiles_x = grid.x;
        cfg.clahe.tiles_y = grid.y;
        if (unbounded_clip) cfg.clahe.clip_limit = contrast::ClaheParams::kUnbounded;
        cfg.emit_intermediates = !intermediates_dir.empty();
        cfg.validate();
    }
};

void print_summary(const report::ReportRow& row) {
    auto fmt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v).dump() : std::string("undefined");
    };
    std::cout << row.name << ": e=" << fmt(row.e) << " r_bar=" << fmt(row.r_bar)
              << " sigma=" << fmt(row.sigma);
    if (row.timings_ms) std::cout << " total_ms=" << row.timings_ms->total;
    std::cout << '\n';
    for (const auto& err : row.errors) std::cout << "  note: " << err << '\n';
}

int cmd_enhance(const std::string& in, const std::string& out, ProcessingOptions& opts) {
    opts.finalize();
    const Raster8 img = read_ppm(in);
    const pipeline::EnhanceResult res = pipeline::enhance(img, opts.cfg);
    write_ppm(out, res.output);
    if (opts.cfg.emit_intermediates) {
        std::filesystem::create_directories(opts.intermediates_dir);
        const auto stem = std::filesystem::path(in).stem().string();
        for (const auto& [stage, stage_img] : res.intermediates) {
            write_ppm(std::filesystem::path(opts.intermediates_dir) / (stem + "." + stage + ".ppm"),
                      stage_img);
        }
    }
    const auto row = report::to_row(std::filesystem::path(in).filename().string(), res.report);
    print_summary(row);
    if (!opts.report_path.empty()) {
        report::write_report(opts.report_path, {row}, {.timings = !opts.no_timings});
    }
    return kOk;
}

int cmd_batch(const std::string& in_dir, const std::string& out_dir, ProcessingOptions& opts,
              int jobs) {
    opts.finalize();
    const auto batch = pipeline::run_batch(in_dir, out_dir, opts.cfg, jobs, opts.intermediates_dir);
    std::vector<report::ReportRow> rows;
    rows.reserve(batch.rows.size());
    for (const auto& r : batch.rows) rows.push_back(report::to_row(r));
    for (const auto& row : rows) print_summary(row);
    print_summary(report::mean_row(rows));
    if (!opts.report_path.empty()) {
        report::write_report(opts.report_path, rows, {.timings = !opts.no_timings});
    }
    return batch.failures == 0 ? kOk : kRowFailures;
}

int cmd_assess(const std::string& orig_path, const std::string& restored_path,
               const std::string& report_path) {
    const RgbF orig = to_planes(read_ppm(orig_path));
    const RgbF restored = to_planes(read_ppm(restored_path));
    if (orig.width() != restored.width() || orig.height() != restored.height()) {
        throw std::runtime_error("image dimensions differ");
    }
    auto row = report::to_row(std::filesystem::path(restored_path).filename().string(),
                              iqa::assess(orig, restored));
    row.timings_ms.reset();
    print_summary(row);
    if (!report_path.empty()) report::write_report(report_path, {row}, {.timings = false});
    return kOk;
}

int cmd_degrade(const std::string& in, const std::string& out, pipeline::DegradationParams p,
                const std::vector<double>& airlight, std::uint64_t seed) {
    if (airlight.size() != 3) throw std::invalid_argument("--airlight expects R,G,B");
    p.airlight_r = airlight[0];
    p.airlight_g = airlight[1];
    p.airlight_b = airlight[2];
    write_ppm(out, pipeline::synth_degrade(read_ppm(in), p, seed));
    return kOk;
}

int cmd_histogram(const std::string& in, const std::string& out_path) {
    const Raster8 img = read_ppm(in);
    std::array<std::array<std::size_t, 256>, 3> counts{};
    const auto data = img.data();
    for (std::size_t i = 0; i < data.size(); ++i) ++counts[i % 3][data[i]];

    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << "level,r,g,b\n";
    for (int level = 0; level < 256; ++level) {
        out << level << ',' << counts[0][level] << ',' << counts[1][level] << ','
            << counts[2][level] << '\n';
    }
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"dustclear - sand-dust image restoration and no-reference assessment"};
    app.require_subcommand(1);

    std::string in;
    std::string out;
    ProcessingOptions enhance_opts;
    auto* enhance = app.add_subcommand("enhance", "Restore one image");
    enhance->add_option("in", in, "Input PPM")->required();
    enhance->add_option("out", out, "Output PPM")->required();
    enhance_opts.attach(enhance);
    enhance->add_option("--report", enhance_opts.report_path, "Write a JSON or CSV report");

    ProcessingOptions batch_opts;
    int jobs = 1;
    auto* batch = app.add_subcommand("batch", "Restore every PPM in a directory");
    batch->add_option("in_dir", in, "Input directory")->required();
    batch->add_option("out_dir", out, "Output directory")->required();
    batch_opts.attach(batch);
    batch->add_option("--report", batch_opts.report_path, "Report path (.csv or .json)");
    batch->add_option("--jobs", jobs, "Worker count")->check(CLI::PositiveNumber);

    std::string report_path;
    auto* assess = app.add_subcommand("assess", "Score a restored image against its original");
    assess->add_option("orig", in, "Original PPM")->required();
    assess->add_option("restored", out, "Restored PPM")->required();
    assess->add_option("--report", report_path, "Write a JSON or CSV report");

    pipeline::DegradationParams degradation;
    std::vector<double> airlight;
    std::uint64_t seed = 0;
    auto* degrade = app.add_subcommand("degrade", "Synthesize a sand-dust version of an image");
    degrade->add_option("in", in, "Clean PPM")->required();
    degrade->add_option("out", out, "Degraded PPM")->required();
    degrade->add_option("--t", degradation.t, "Transmission in [0,1]")->required();
    degrade->add_option("--airlight", airlight, "Airlight R,G,B")
        ->required()
        ->delimiter(',')
        ->expected(3);
    degrade->add_option("--u-shift", degradation.u_shift, "Offset added to U");
    degrade->add_option("--v-shift", degradation.v_shift, "Offset added to V");
    degrade->add_option("--noise", degradation.noise_sigma, "Gaussian noise sigma");
    degrade->add_option("--seed", seed, "Noise seed");

    std::string hist_out;
    auto* histogram = app.add_subcommand("histogram", "Dump per-channel 256-bin counts as CSV");
    histogram->add_option("in", in, "Input PPM")->required();
    histogram->add_option("--out", hist_out, "CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kOk : kFatal;
    }

    try {
        if (enhance->parsed()) return cmd_enhance(in, out, enhance_opts);
        if (batch->parsed()) return cmd_batch(in, out, batch_opts, jobs);
        if (assess->parsed()) return cmd_assess(in, out, report_path);
        if (degrade->parsed()) return cmd_degrade(in, out, degradation, airlight, seed);
        if (histogram->parsed()) return cmd_histogram(in, hist_out);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kOk : kFatal;
    } catch (const std::exception& err) {
        std::cerr << "dustclear: " << err.what() << '\n';
        return kFatal;
    }
    return kFatal;
}

}  // namespace dustclear::cli
