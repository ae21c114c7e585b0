#pragma once

#include <filesystem>
#include <string>

#include "wsar/imager.hpp"

namespace wsar::cli {

/// dB matrix as CSV: one line per axis-2 row (ascending), axis-1 columns.
void write_db_csv(const std::filesystem::path& path, const Matrix<double>& db);

/// 8-bit binary PGM (P5). 0 dB maps to 255 and `dynamic_range_db` below
/// the peak (or less) to 0; the far end of axis 2 is drawn at the top.
void write_pgm(const std::filesystem::path& path, const Matrix<double>& db, double dynamic_range_db = 40.0);

std::string detection_report_json(const DetectionReport& report, const ImageGrid& grid);

}  // namespace wsar::cli
