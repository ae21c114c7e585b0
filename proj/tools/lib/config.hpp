#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wsar/dataset_io.hpp"
#include "wsar/forward.hpp"
#include "wsar/imager.hpp"
#include "wsar/motion.hpp"
#include "wsar/scene.hpp"

namespace wsar::cli {

struct SweepSpec {
    double center_hz = 24e9;
    double bandwidth_hz = 4e9;
    std::size_t count = 3201;
};

struct PlateSpec {
    Vec3 center{0.0, 0.10, 0.0};
    double width = 0.10;
    double height = 0.10;
    std::optional<double> spacing;  // default: quarter wavelength at f_max
    Complex reflectivity{1.0, 0.0};
};

struct SceneSpec {
    std::vector<PlateSpec> plates;
    std::vector<PointScatterer> points;
    std::vector<PointScatterer> clutter;
};

struct CalibrationSpec {
    double delay_s = 0.0;
    bool auto_estimate = false;
    std::optional<double> known_range_m;  // default: swing standoff
};

struct GridSpec {
    Vec3 origin{-0.15, 0.02, 0.0};
    Vec3 axis1{1.0, 0.0, 0.0};
    Vec3 axis2{0.0, 1.0, 0.0};
    double width = 0.30;
    double height = 0.18;
    std::size_t pixels1 = 256;
    std::size_t pixels2 = 256;

    ImageGrid to_grid() const { return {origin, axis1, axis2, width, height, pixels1, pixels2}; }
};

struct PsfSpec {
    std::optional<Vec3> target;  // default: (0, standoff, 0)
    std::optional<GridSpec> grid;  // default: the imaging grid
};

// Everything a run needs. Defaults reproduce the wearable-radar measurement:
// 24 GHz center, 4 GHz band, 3201 frequencies, 12 cm swing, 10 x 10 cm
// plate at 10 cm.
struct RunConfig {
    SweepSpec sweep;
    SwingSpec swing;
    std::optional<double> crop_extent_m;
    SceneSpec scene;
    AmplitudeModel amplitude_model = AmplitudeModel::phase_only;
    std::optional<double> noise_snr_db;
    double system_delay_s = 0.0;
    double pattern_exponent = 0.0;
    CalibrationSpec calibration;
    GridSpec grid;
    Taper taper = Taper::none;
    double threshold_db = -6.0;
    PsfSpec psf;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    SampleType sample_type = SampleType::complex128;

    static RunConfig defaults();
};

/// Parses a JSON config document. Missing keys keep their defaults;
/// unknown keys are rejected. Throws ErrorKind::invalid_input.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Serializes back to JSON (used for provenance and round-trip tests).
std::string dump_config(const RunConfig& cfg);

/// Checks every sub-spec against its module invariants.
void validate(const RunConfig& cfg);

/// Target scatterers (plates discretized, then explicit points).
std::vector<PointScatterer> target_scatterers(const RunConfig& cfg, const FrequencySweep& sweep);

}  // namespace wsar::cli
