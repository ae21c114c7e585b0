#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "image_export.hpp"
#include "wsar/calib.hpp"
#include "wsar/error.hpp"
#include "wsar/forward.hpp"
#include "wsar/motion.hpp"
#include "wsar/radmetrics.hpp"

namespace wsar::cli {

namespace {

constexpr std::uint64_t kMeasuredNoiseStream = 1;
constexpr std::uint64_t kBackgroundNoiseStream = 2;

Trajectory make_trajectory(const RunConfig& cfg) {
    Trajectory traj = arm_swing(cfg.swing);
    if (cfg.crop_extent_m) traj = crop_aperture(traj, *cfg.crop_extent_m);
    return traj;
}

ForwardConfig forward_config(const RunConfig& cfg, std::uint64_t stream) {
    ForwardConfig f;
    f.amplitude_model = cfg.amplitude_model;
    f.noise_snr_db = cfg.noise_snr_db;
    f.seed = cfg.seed + stream;
    f.system_delay = cfg.system_delay_s;
    f.pattern_exponent = cfg.pattern_exponent;
    f.threads = cfg.threads;
    return f;
}

std::string format_double(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        fail_input("cannot create output directory " + dir.string());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail_input("cannot write " + path.string());
    out << text;
    if (!out) fail_input("write failed for " + path.string());
}

}  // namespace

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input: return exit_input;
        case ErrorKind::mismatch: return exit_mismatch;
        case ErrorKind::numerical: return exit_numerical;
    }
    return exit_input;
}

SimulationProducts simulate(const RunConfig& cfg) {
    const FrequencySweep sweep = make_sweep(cfg.sweep.center_hz, cfg.sweep.bandwidth_hz, cfg.sweep.count);
    const Trajectory traj = make_trajectory(cfg);

    std::vector<PointScatterer> scene = target_scatterers(cfg, sweep);
    scene.insert(scene.end(), cfg.scene.clutter.begin(), cfg.scene.clutter.end());

    return {acquire(scene, traj, sweep, forward_config(cfg, kMeasuredNoiseStream)),
            background_dataset(cfg.scene.clutter, traj, sweep, forward_config(cfg, kBackgroundNoiseStream))};
}

ImagingProducts image_pipeline(const AcquisitionDataset& measured, const AcquisitionDataset* background,
                               const RunConfig& cfg) {
    AcquisitionDataset data = background ? subtract_background(measured, *background) : measured;
    double delay = cfg.calibration.delay_s;
    if (cfg.calibration.auto_estimate) {
        delay = estimate_reference_delay(data, cfg.calibration.known_range_m.value_or(cfg.swing.standoff));
    }
    AcquisitionDataset calibrated = calibrate_phase(data, delay);
    ReflectivityImage image = backproject(calibrated, cfg.grid.to_grid(), {cfg.threads, cfg.taper});
    Matrix<double> db = to_db(image);
    DetectionReport report = detect_peak(image, cfg.threshold_db);
    return {std::move(calibrated), delay, std::move(image), std::move(db), report};
}

SimulateOutputs cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    validate(cfg);
    const auto products = simulate(cfg);
    ensure_dir(out_dir);

    DatasetMetadata meta;
    meta.seed = cfg.seed;
    meta.sample_type = cfg.sample_type;
    meta.provenance = {
        {"generator", "wsar simulate"},
        {"amplitude_model", cfg.amplitude_model == AmplitudeModel::phase_only ? "phase-only" : "spherical-spreading"},
        {"noise_snr_db", cfg.noise_snr_db ? format_double(*cfg.noise_snr_db) : "none"},
        {"system_delay_s", format_double(cfg.system_delay_s)},
        {"target_scatterers", std::to_string(target_scatterers(cfg, products.measured.sweep()).size())},
        {"clutter_scatterers", std::to_string(cfg.scene.clutter.size())},
    };

    SimulateOutputs out{out_dir / "measured.json", out_dir / "background.json", out_dir / "trajectory.csv"};
    meta.role = "measured";
    write_dataset(out.measured, products.measured, meta);
    meta.role = "background";
    write_dataset(out.background, products.background, meta);
    write_trajectory_csv(out.trajectory, products.measured.trajectory());
    return out;
}

ImagingProducts cmd_image(const std::filesystem::path& measured, const std::optional<std::filesystem::path>& background,
                          const RunConfig& cfg, const std::filesystem::path& out_dir) {
    const auto m = read_dataset(measured);
    std::optional<LoadedDataset> b;
    if (background) b = read_dataset(*background);
    auto products = image_pipeline(m.data, b ? &b->data : nullptr, cfg);

    ensure_dir(out_dir);
    write_db_csv(out_dir / "image_db.csv", products.db);
    write_pgm(out_dir / "image.pgm", products.db);
    nlohmann::json report = nlohmann::json::parse(detection_report_json(products.report, products.image.grid()));
    report["applied_delay_s"] = products.applied_delay;
    write_text(out_dir / "report.json", report.dump(2) + "\n");
    return products;
}

PsfReport cmd_psf(const RunConfig& cfg) {
    validate(cfg);
    const FrequencySweep sweep = make_sweep(cfg.sweep.center_hz, cfg.sweep.bandwidth_hz, cfg.sweep.count);
    const Trajectory traj = make_trajectory(cfg);
    const Vec3 target = cfg.psf.target.value_or(Vec3{0.0, cfg.swing.standoff, 0.0});

    ForwardConfig f;
    f.amplitude_model = cfg.amplitude_model;
    f.threads = cfg.threads;
    const PointScatterer point{target, {1.0, 0.0}};
    const auto data = acquire(std::span(&point, 1), traj, sweep, f);
    const ImageGrid grid = cfg.psf.grid.value_or(cfg.grid).to_grid();

    PsfReport r;
    r.target = target;
    r.measured = psf_metrics(data, grid, {cfg.threads, cfg.taper});

    Vec3 centroid{};
    double xmin = traj[0].x, xmax = traj[0].x;
    for (const auto& p : traj.positions()) {
        centroid += p;
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
    }
    centroid *= 1.0 / static_cast<double>(traj.size());
    r.expected_range_width = sweep.bandwidth() > 0.0 ? speed_of_light / (2.0 * sweep.bandwidth()) : INFINITY;
    const double aperture = xmax - xmin;
    r.expected_crossrange_width =
        aperture > 0.0 ? (speed_of_light / sweep.center()) * distance(centroid, target) / (2.0 * aperture) : INFINITY;
    return r;
}

std::string psf_report_json(const PsfReport& r) {
    nlohmann::json j = {
        {"target_m", {r.target.x, r.target.y, r.target.z}},
        {"range_width_m", r.measured.range_fwhm},
        {"crossrange_width_m", r.measured.crossrange_fwhm},
        {"peak_sidelobe_db", r.measured.peak_sidelobe_db},
        {"expected_range_width_m", r.expected_range_width},
        {"expected_crossrange_width_m", r.expected_crossrange_width},
        {"width_threshold_db", -6.0},
    };
    return j.dump(2) + "\n";
}

std::string cmd_metrics(const MetricsInputs& in) {
    nlohmann::json j = nlohmann::json::object();
    if (in.gain_dbi.has_value() != in.directivity_db.has_value()) {
        fail_input("metrics: efficiency needs both gain and directivity");
    }
    if (in.gain_dbi) j["efficiency_percent"] = efficiency(*in.gain_dbi, *in.directivity_db);
    if (in.f_low_hz.has_value() != in.f_high_hz.has_value()) {
        fail_input("metrics: fractional bandwidth needs both band edges");
    }
    if (in.f_low_hz) j["fractional_bandwidth_percent"] = fractional_bandwidth(*in.f_low_hz, *in.f_high_hz);
    if (in.cut) j["ftbr_db"] = ftbr(read_pattern_csv(in.cut->string()));
    if (in.cut_e.has_value() != in.cut_h.has_value()) {
        fail_input("metrics: two-cut directivity needs both E- and H-plane cuts");
    }
    if (in.cut_e) {
        const auto e = read_pattern_csv(in.cut_e->string());
        const auto h = read_pattern_csv(in.cut_h->string());
        j["beamwidth_e_deg"] = half_power_beamwidth(e);
        j["beamwidth_h_deg"] = half_power_beamwidth(h);
        j["directivity_estimate_db"] = directivity_from_cuts(e, h);
    }
    if (j.empty()) {
        fail_input("metrics: no inputs given");
    }
    return j.dump(2) + "\n";
}

}  // namespace wsar::cli
