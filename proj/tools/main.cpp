// wsar: simulate, image and characterize wearable SAR acquisitions.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "wsar/error.hpp"

namespace fs = std::filesystem;
using namespace wsar::cli;

namespace {

struct GlobalFlags {
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::optional<std::string> out;
    std::optional<double> threshold_db;
};

RunConfig resolve(const GlobalFlags& g) {
    RunConfig cfg = g.config ? load_config(*g.config) : RunConfig::defaults();
    if (g.seed) {
        cfg.seed = *g.seed;
        cfg.swing.seed = *g.seed;
    }
    if (g.threads) cfg.threads = *g.threads;
    if (g.out) cfg.out_dir = *g.out;
    if (g.threshold_db) cfg.threshold_db = *g.threshold_db;
    validate(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wearable short-range SAR imaging: simulate, image, psf, metrics"};
    app.require_subcommand(1);

    GlobalFlags g;
    auto add_globals = [&g](CLI::App* sub) {
        sub->add_option("--config", g.config, "JSON run configuration");
        sub->add_option("--seed", g.seed, "Override the configuration seed");
        sub->add_option("--threads", g.threads, "Worker threads (0 = all cores)");
        sub->add_option("--out", g.out, "Output directory");
        sub->add_option("--threshold-db", g.threshold_db, "Detection extent threshold in dB (negative)");
    };

    auto* simulate = app.add_subcommand("simulate", "Synthesize measured and background datasets");
    add_globals(simulate);

    auto* image = app.add_subcommand("image", "Background-subtract, calibrate and backproject a dataset");
    add_globals(image);
    std::optional<std::string> in_dir, measured_path, background_path;
    bool no_background = false;
    image->add_option("--in", in_dir, "Directory holding measured.json/background.json (default: --out)");
    image->add_option("--measured", measured_path, "Measured dataset header");
    image->add_option("--background", background_path, "Background dataset header");
    image->add_flag("--no-background", no_background, "Skip background subtraction");

    auto* psf = app.add_subcommand("psf", "Point-target resolution analysis");
    add_globals(psf);

    auto* metrics = app.add_subcommand("metrics", "Antenna radiation metrics");
    add_globals(metrics);
    MetricsInputs mi;
    std::optional<std::string> cut, cut_e, cut_h;
    metrics->add_option("--gain", mi.gain_dbi, "Gain in dBi");
    metrics->add_option("--directivity", mi.directivity_db, "Directivity in dB");
    metrics->add_option("--f-low", mi.f_low_hz, "Lower band edge in Hz");
    metrics->add_option("--f-high", mi.f_high_hz, "Upper band edge in Hz");
    metrics->add_option("--cut", cut, "Pattern cut CSV (angle_deg, level_db) for FTBR");
    metrics->add_option("--cut-e", cut_e, "E-plane cut CSV for the two-cut directivity estimate");
    metrics->add_option("--cut-h", cut_h, "H-plane cut CSV for the two-cut directivity estimate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (simulate->parsed()) {
            const RunConfig cfg = resolve(g);
            const auto out = cmd_simulate(cfg, cfg.out_dir);
            std::cout << "wrote " << out.measured.string() << ", " << out.background.string() << ", "
                      << out.trajectory.string() << "\n";
        } else if (image->parsed()) {
            const RunConfig cfg = resolve(g);
            const fs::path dir = in_dir ? fs::path(*in_dir) : fs::path(cfg.out_dir);
            const fs::path measured = measured_path ? fs::path(*measured_path) : dir / "measured.json";
            std::optional<fs::path> background;
            if (!no_background) {
                if (background_path) {
                    background = *background_path;
                } else if (fs::exists(dir / "background.json")) {
                    background = dir / "background.json";
                }
            }
            const auto products = cmd_image(measured, background, cfg, cfg.out_dir);
            const auto& r = products.report;
            std::cout << "peak at (" << r.peak_position.x << ", " << r.peak_position.y << ", " << r.peak_position.z
                      << ") m, extent_x " << r.extent_x << " m, extent_axis2 " << r.extent_axis2 << " m at "
                      << r.threshold_db << " dB\n";
        } else if (psf->parsed()) {
            const RunConfig cfg = resolve(g);
            const auto report = cmd_psf(cfg);
            const std::string text = psf_report_json(report);
            if (g.out) {
                fs::create_directories(*g.out);
                std::ofstream(fs::path(*g.out) / "psf.json") << text;
            }
            std::cout << text;
        } else if (metrics->parsed()) {
            if (cut) mi.cut = *cut;
            if (cut_e) mi.cut_e = *cut_e;
            if (cut_h) mi.cut_h = *cut_h;
            std::cout << cmd_metrics(mi);
        }
    } catch (const wsar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_ok;
}
