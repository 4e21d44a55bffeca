#pragma once

#include "ksrad/harness.hpp"

#include <string>
#include <vector>

namespace ksrad {

inline constexpr const char* kVersion = "ksrad 0.1.0";
inline constexpr const char* kCsvFormat = "ksrad-csv v1";

/// Format a double deterministically (shortest round-trip, C locale).
std::string format_double(double v);

/// Time-series CSV: a versioned header line, the echoed configuration as
/// comment lines, a fixed column header, then one row per record. Output is
/// byte-deterministic for identical inputs.
void write_records_csv(const std::string& path, const std::vector<DiagnosticRecord>& records,
                       const std::vector<std::string>& config_echo);

std::string records_csv_string(const std::vector<DiagnosticRecord>& records,
                               const std::vector<std::string>& config_echo);

/// Structured summary (JSON): per scenario, status and per-check
/// pass/fail/worst-margin plus the calibration stamps.
std::string suite_summary_json(const SuiteReport& report, std::uint64_t seed,
                               const std::vector<std::string>& config_echo);

std::string sweep_summary_json(const EpsSweepResult& sweep,
                               const std::vector<std::string>& config_echo);

std::string scan_summary_json(const BlowupScanResult& scan,
                              const std::vector<std::string>& config_echo);

void write_text_file(const std::string& path, const std::string& content);

/// Minimal SVG line plot of one or more named series over time.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};
std::string svg_line_plot(const std::string& title, const std::vector<PlotSeries>& series,
                          bool log_y = false);

} // namespace ksrad
