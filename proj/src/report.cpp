#include "dustclear/report.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace dustclear::report {

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::string csv_number(const std::optional<double>& v) {
    return v ? json(*v).dump() : std::string();
}

// Pixel counts are held as doubles so the mean row can average them; whole
// values print without a fractional part.
json optional_count(const std::optional<double>& v) {
    if (v && *v >= 0.0 && *v < 9.0e15 && std::floor(*v) == *v) {
        return json(static_cast<std::uint64_t>(*v));
    }
    return optional_number(v);
}

std::string csv_count(const std::optional<double>& v) {
    return v ? optional_count(v).dump() : std::string();
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

// Running mean over the rows that define a field.
struct Accumulator {
    double sum = 0.0;
    std::size_t n = 0;

    void add(const std::optional<double>& v) {
        if (v) {
            sum += *v;
            ++n;
        }
    }
    std::optional<double> mean() const {
        if (n == 0) return std::nullopt;
        return sum / static_cast<double>(n);
    }
};

}  // namespace

ReportRow to_row(const std::string& name, const iqa::QualityReport& report) {
    ReportRow row;
    row.name = name;
    row.e = report.e;
    row.r_bar = report.r_bar;
    row.sigma = report.sigma;
    row.n_o = static_cast<double>(report.n_o);
    row.n_r = static_cast<double>(report.n_r);
    row.n_s = static_cast<double>(report.n_s);
    row.timings_ms = report.timings_ms;
    row.errors = report.errors;
    if (report.guarded_ratios > 0) {
        row.errors.push_back("gradient guard applied to " + std::to_string(report.guarded_ratios) +
                             " edge ratios");
    }
    return row;
}

ReportRow to_row(const pipeline::ImageResult& result) {
    if (result.report) {
        ReportRow row = to_row(result.name, *result.report);
        row.errors.insert(row.errors.end(), result.errors.begin(), result.errors.end());
        return row;
    }
    ReportRow row;
    row.name = result.name;
    row.errors = result.errors;
    return row;
}

ReportRow mean_row(const std::vector<ReportRow>& rows) {
    Accumulator e, r_bar, sigma, n_o, n_r, n_s, cast, dehaze, clahe, total;
    for (const auto& row : rows) {
        e.add(row.e);
        r_bar.add(row.r_bar);
        sigma.add(row.sigma);
        n_o.add(row.n_o);
        n_r.add(row.n_r);
        n_s.add(row.n_s);
        if (row.timings_ms) {
            cast.add(row.timings_ms->cast);
            dehaze.add(row.timings_ms->dehaze);
            clahe.add(row.timings_ms->clahe);
            total.add(row.timings_ms->total);
        }
    }
    ReportRow mean;
    mean.name = "mean";
    mean.e = e.mean();
    mean.r_bar = r_bar.mean();
    mean.sigma = sigma.mean();
    mean.n_o = n_o.mean();
    mean.n_r = n_r.mean();
    mean.n_s = n_s.mean();
    if (total.n > 0) {
        mean.timings_ms = iqa::StageTimings{*cast.mean(), *dehaze.mean(), *clahe.mean(),
                                            *total.mean()};
    }
    return mean;
}

json to_json(const ReportRow& row, const ReportOptions& opts) {
    json j;
    j["name"] = row.name;
    j["e"] = optional_number(row.e);
    j["r_bar"] = optional_number(row.r_bar);
    j["sigma"] = optional_number(row.sigma);
    j["n_o"] = optional_count(row.n_o);
    j["n_r"] = optional_count(row.n_r);
    j["n_s"] = optional_count(row.n_s);
    if (opts.timings && row.timings_ms) {
        j["timings_ms"] = {{"cast", row.timings_ms->cast},
                           {"dehaze", row.timings_ms->dehaze},
                           {"clahe", row.timings_ms->clahe},
                           {"total", row.timings_ms->total}};
    } else {
        j["timings_ms"] = nullptr;
    }
    j["errors"] = row.errors;
    return j;
}

json to_json(const std::vector<ReportRow>& rows, const ReportOptions& opts) {
    json images = json::array();
    for (const auto& row : rows) images.push_back(to_json(row, opts));
    return {{"images", std::move(images)}, {"mean", to_json(mean_row(rows), opts)}};
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows, const ReportOptions& opts) {
    out << "name,e,r_bar,sigma,n_o,n_r,n_s,cast_ms,dehaze_ms,clahe_ms,total_ms,errors\n";
    auto emit = [&](const ReportRow& row) {
        out << csv_quote(row.name) << ',' << csv_number(row.e) << ',' << csv_number(row.r_bar)
            << ',' << csv_number(row.sigma) << ',' << csv_count(row.n_o) << ','
            << csv_count(row.n_r) << ',' << csv_count(row.n_s);
        if (opts.timings && row.timings_ms) {
            out << ',' << csv_number(row.timings_ms->cast) << ','
                << csv_number(row.timings_ms->dehaze) << ',' << csv_number(row.timings_ms->clahe)
                << ',' << csv_number(row.timings_ms->total);
        } else {
            out << ",,,,";
        }
        std::string joined;
        for (const auto& err : row.errors) {
            if (!joined.empty()) joined += "; ";
            joined += err;
        }
        out << ',' << csv_quote(joined) << '\n';
    };
    for (const auto& row : rows) emit(row);
    emit(mean_row(rows));
}

void write_report(const std::string& path, const std::vector<ReportRow>& rows,
                  const ReportOptions& opts) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write report " + path);
    const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    if (csv) {
        write_csv(out, rows, opts);
    } else {
        out << to_json(rows, opts).dump(2) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing report " + path);
}

}  // namespace dustclear::report
