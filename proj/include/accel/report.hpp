// Comparison of computed quantities against published reference values.
//
// Targets file, one entry per line ('#' starts a comment):
//
//   <quantity> <reference value> <relative tolerance | -> [note ...]
//
// A tolerance of '-' records an annotation: the row is shown but never fails.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accel/config.hpp"

namespace accel {

struct ReportTarget {
    std::string quantity;
    double reference = 0.0;
    std::optional<double> tolerance;
    std::string note;
    int line = 0;
};

struct ReportRow {
    std::string quantity;
    double computed = 0.0;
    double reference = 0.0;
    double relative_error = 0.0;
    std::optional<double> tolerance;  // unset for annotation rows
    bool pass = true;
    std::string note;

    bool checked() const { return tolerance.has_value(); }
};

struct Report {
    std::vector<ReportRow> rows;
    /// Overrides in effect and other caveats, one line each.
    std::vector<std::string> annotations;

    bool pass() const;
};

/// Names accepted in targets files.
const std::vector<std::string_view>& report_quantities();

/// Throws ConfigError (with line) on malformed lines or unknown quantities.
std::vector<ReportTarget> parse_targets(std::string_view text);
std::vector<ReportTarget> load_targets(const std::string& path);

Report reference_report(const Config& config, const std::vector<ReportTarget>& targets);

}  // namespace accel
