#pragma once

// Report serialization for single-image and batch runs.
//
// JSON: { "images": [ {name, e, r_bar, sigma, n_o, n_r, n_s,
//                      timings_ms: {cast, dehaze, clahe, total}, errors} ],
//         "mean": { ...same fields... } }
// CSV carries the same columns with a header row; the mean row is last and
// named "mean". Undefined metrics are null in JSON and empty in CSV.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dustclear/iqa.hpp"
#include "dustclear/pipeline.hpp"

namespace dustclear::report {

struct ReportRow {
    std::string name;
    std::optional<double> e;
    std::optional<double> r_bar;
    std::optional<double> sigma;
    std::optional<double> n_o;
    std::optional<double> n_r;
    std::optional<double> n_s;
    std::optional<iqa::StageTimings> timings_ms;
    std::vector<std::string> errors;
};

struct ReportOptions {
    /// Drop wall-clock timings so repeated runs produce identical bytes.
    bool timings = true;
};

ReportRow to_row(const std::string& name, const iqa::QualityReport& report);
ReportRow to_row(const pipeline::ImageResult& result);

/// Per-field arithmetic mean over the rows where that field is defined.
ReportRow mean_row(const std::vector<ReportRow>& rows);

nlohmann::json to_json(const ReportRow& row, const ReportOptions& opts = {});
nlohmann::json to_json(const std::vector<ReportRow>& rows, const ReportOptions& opts = {});

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows,
               const ReportOptions& opts = {});

/// Chooses CSV for a ".csv" extension and JSON otherwise.
void write_report(const std::string& path, const std::vector<ReportRow>& rows,
                  const ReportOptions& opts = {});

}  // namespace dustclear::report
