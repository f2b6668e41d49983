#pragma once

#include "levy/experiment.hpp"

#include <filesystem>
#include <string>

namespace levy {

// Increments exchange format: two header lines ("delta,<value>" and "n,<count>")
// followed by one value per line, printed with 17 significant digits so a
// write/read round trip is exact.
void write_increments_csv(const std::filesystem::path& path,
                          const SampleIncrements& sample);
SampleIncrements read_increments_csv(const std::filesystem::path& path);

// Flat key = value configuration files ('#' starts a comment).
ExperimentConfig parse_config_file(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text);

enum class ReportFormat { Csv, Json };

// Writes params.csv and, when targets are present, selection.csv, mise.csv and
// bands_<target>.csv — or report.json. Output is byte-stable for a fixed
// report.
void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& out_dir);

ExperimentReport read_report_json(const std::filesystem::path& path);

// Fixed-format double used in every emitted file.
std::string format_double(double v);

} // namespace levy
