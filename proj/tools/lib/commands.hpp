#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "config.hpp"
#include "wsar/dataset_io.hpp"
#include "wsar/error.hpp"
#include "wsar/imager.hpp"

namespace wsar::cli {

// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 2;
inline constexpr int exit_mismatch = 3;
inline constexpr int exit_numerical = 4;

int exit_code_for(ErrorKind kind);

struct SimulationProducts {
    AcquisitionDataset measured;
    AcquisitionDataset background;
};

/// In-memory acquisition: swing (optionally cropped), target plus clutter
/// for the measurement, clutter alone for the background. Noise streams
/// are derived from the config seed.
SimulationProducts simulate(const RunConfig& cfg);

struct ImagingProducts {
    AcquisitionDataset calibrated;
    double applied_delay = 0.0;
    ReflectivityImage image;
    Matrix<double> db;
    DetectionReport report;
};

/// subtract_background -> calibrate_phase -> backproject -> to_db -> detect_peak.
ImagingProducts image_pipeline(const AcquisitionDataset& measured, const AcquisitionDataset* background,
                               const RunConfig& cfg);

struct SimulateOutputs {
    std::filesystem::path measured;
    std::filesystem::path background;
    std::filesystem::path trajectory;
};

/// Writes measured.{json,bin}, background.{json,bin} and trajectory.csv to `out_dir`.
SimulateOutputs cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Reads the datasets, images them, and writes image_db.csv, image.pgm and
/// report.json to `out_dir`.
ImagingProducts cmd_image(const std::filesystem::path& measured, const std::optional<std::filesystem::path>& background,
                          const RunConfig& cfg, const std::filesystem::path& out_dir);

struct PsfReport {
    PsfMetrics measured;
    double expected_range_width = 0.0;       // c / (2B)
    double expected_crossrange_width = 0.0;  // lambda_c R / (2L)
    Vec3 target;
};

/// Noise-free single point at the PSF target, imaged and measured.
PsfReport cmd_psf(const RunConfig& cfg);

struct MetricsInputs {
    std::optional<double> gain_dbi;
    std::optional<double> directivity_db;
    std::optional<double> f_low_hz;
    std::optional<double> f_high_hz;
    std::optional<std::filesystem::path> cut;    // for FTBR
    std::optional<std::filesystem::path> cut_e;  // with cut_h, for two-cut directivity
    std::optional<std::filesystem::path> cut_h;
};

/// JSON object with whichever metrics the inputs allow.
std::string cmd_metrics(const MetricsInputs& in);

std::string psf_report_json(const PsfReport& r);

}  // namespace wsar::cli
