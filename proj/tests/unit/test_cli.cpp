#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "oracles.hpp"
#include "wsar/error.hpp"

using namespace wsar;
using namespace wsar::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("wsar_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

// Small, fast scene: 41 frequencies, 21 positions, 48x48 grid.
const char* kSmallConfig = R"({
  "seed": 7,
  "sweep": {"center_hz": 24e9, "bandwidth_hz": 4e9, "count": 41},
  "swing": {"aperture_length_m": 0.12, "point_count": 21, "jitter_std_m": 0.0005},
  "scene": {
    "plates": [],
    "points": [{"position_m": [0.0, 0.1, 0.0], "reflectivity": 1.0}],
    "clutter": [{"position_m": [0.05, 0.3, 0.0], "reflectivity": [0.3, 0.1]}]
  },
  "forward": {"noise_snr_db": 30, "system_delay_s": 0.4e-9},
  "calibration": {"delay_s": 0.4e-9},
  "grid": {"origin_m": [-0.06, 0.04, 0.0], "width_m": 0.12, "height_m": 0.12, "pixels": [48, 48]}
})";

int run(const std::string& args) {
    const std::string cmd = std::string(WSAR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const auto p = dir / "config.json";
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("default config mirrors the measurement table") {
    const auto cfg = RunConfig::defaults();
    CHECK(cfg.sweep.center_hz == 24e9);
    CHECK(cfg.sweep.bandwidth_hz == 4e9);
    CHECK(cfg.sweep.count == 3201);
    CHECK(cfg.swing.aperture_length == 0.12);
    REQUIRE(cfg.scene.plates.size() == 1);
    CHECK(cfg.scene.plates[0].width == 0.10);
    CHECK(cfg.scene.plates[0].height == 0.10);
    CHECK(cfg.scene.plates[0].center.y == 0.10);
    CHECK(cfg.grid.pixels1 == 256);
    CHECK(cfg.grid.pixels2 == 256);
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("config parsing") {
    const auto cfg = parse_config(kSmallConfig);
    CHECK(cfg.sweep.count == 41);
    CHECK(cfg.swing.point_count == 21);
    CHECK(cfg.swing.seed == 7);
    CHECK(cfg.scene.plates.empty());
    REQUIRE(cfg.scene.clutter.size() == 1);
    CHECK(cfg.scene.clutter[0].reflectivity == Complex(0.3, 0.1));
    CHECK(cfg.noise_snr_db == std::optional<double>(30.0));

    // dump -> parse is stable
    const auto again = parse_config(dump_config(cfg));
    CHECK(dump_config(again) == dump_config(cfg));

    CHECK_THROWS_AS(parse_config("{ nope"), Error);
    CHECK_THROWS_AS(parse_config(R"({"sweeep": {}})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"count": 0}})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"count": "many"}})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"grid": {"axis1": [1, 1, 0]}})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"imaging": {"threshold_db": 3}})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"forward": {"amplitude_model": "loud"}})"), Error);
}

TEST_CASE("simulate writes a 1x1 dataset for count=1, N=1") {
    const auto dir = scratch("tiny");
    auto cfg = parse_config(R"({"sweep": {"count": 1, "bandwidth_hz": 0}, "swing": {"point_count": 1},
                               "scene": {"points": [{"position_m": [0, 0.1, 0]}], "plates": [], "clutter": []}})");
    const auto out = cmd_simulate(cfg, dir);
    const auto d = read_dataset(out.measured);
    CHECK(d.data.frequency_count() == 1);
    CHECK(d.data.position_count() == 1);
    CHECK(d.data.sweep().frequency(0) == 24e9);
    CHECK(fs::exists(out.trajectory));
}

TEST_CASE("default config simulates 3201 frequencies over 22-26 GHz") {
    auto cfg = RunConfig::defaults();
    cfg.swing.point_count = 3;
    cfg.scene.plates[0].spacing = 0.05;  // keep the scene tiny
    const auto sim = simulate(cfg);
    CHECK(sim.measured.frequency_count() == 3201);
    CHECK(sim.measured.sweep().lowest() == 22e9);
    CHECK(sim.measured.sweep().highest() == 26e9);
    CHECK(sim.measured.position_count() == 3);
}

TEST_CASE("file round trip equals the in-process pipeline") {
    const auto dir = scratch("pipeline");
    const auto cfg = parse_config(kSmallConfig);
    const auto files = cmd_simulate(cfg, dir);
    const auto from_disk = cmd_image(files.measured, files.background, cfg, dir);

    const auto sim = simulate(cfg);
    const auto in_memory = image_pipeline(sim.measured, &sim.background, cfg);
    CHECK(oracle::relative_error(from_disk.image.values(), in_memory.image.values()) < 1e-12);
    CHECK(from_disk.image.values() == in_memory.image.values());

    // The point target is found.
    CHECK(std::abs(from_disk.report.peak_position.y - 0.10) < 0.005);
    CHECK(std::abs(from_disk.report.peak_position.x) < 0.005);

    for (const char* f : {"image_db.csv", "image.pgm", "report.json"}) CHECK(fs::exists(dir / f));
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report["peak_position_m"][1].get<double>() == doctest::Approx(from_disk.report.peak_position.y));
    CHECK(report["threshold_db"].get<double>() == -6.0);
    CHECK(slurp(dir / "image.pgm").rfind("P5\n48 48\n255\n", 0) == 0);
}

TEST_CASE("auto calibration recovers the synthesized delay") {
    auto cfg = parse_config(kSmallConfig);
    cfg.swing.aperture_length = 0.02;
    cfg.calibration = {0.0, true, 0.10};
    const auto sim = simulate(cfg);
    const auto out = image_pipeline(sim.measured, &sim.background, cfg);
    CHECK(std::abs(out.applied_delay - 0.4e-9) < 0.05 * 0.4e-9);
}

TEST_CASE("simulate is byte-identical across runs and thread counts") {
    auto cfg = parse_config(kSmallConfig);
    const auto a = scratch("det_a"), b = scratch("det_b");
    cfg.threads = 1;
    cmd_simulate(cfg, a);
    cfg.threads = 8;
    cmd_simulate(cfg, b);
    for (const char* f : {"measured.json", "measured.bin", "background.json", "background.bin", "trajectory.csv"}) {
        CHECK(slurp(a / f) == slurp(b / f));
    }
}

TEST_CASE("zero dataset fails with an empty-image error") {
    const auto dir = scratch("zero");
    auto cfg = parse_config(kSmallConfig);
    cfg.scene = {};
    cfg.noise_snr_db.reset();
    const auto files = cmd_simulate(cfg, dir);
    try {
        cmd_image(files.measured, files.background, cfg, dir);
        FAIL("expected empty image");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::numerical);
        CHECK(std::string(e.what()).find("empty image") != std::string::npos);
    }
}

TEST_CASE("psf command reports resolution figures") {
    auto cfg = parse_config(kSmallConfig);
    cfg.sweep.count = 101;
    cfg.swing.point_count = 61;
    cfg.swing.jitter_std = 0.0;
    cfg.psf.grid = GridSpec{{-0.02, 0.01, 0.0}, {1, 0, 0}, {0, 1, 0}, 0.04, 0.18, 81, 181};
    const auto r = cmd_psf(cfg);
    CHECK(r.expected_range_width == doctest::Approx(0.03747405725));
    CHECK(std::abs(r.measured.range_fwhm - r.expected_range_width) < 0.25 * r.expected_range_width);
    CHECK(std::abs(r.measured.crossrange_fwhm - r.expected_crossrange_width) < 0.30 * r.expected_crossrange_width);

    cfg.psf.grid = GridSpec{{-0.01, 0.09, 0.0}, {1, 0, 0}, {0, 1, 0}, 0.02, 0.02, 21, 21};
    CHECK_THROWS_AS(cmd_psf(cfg), Error);
}

TEST_CASE("metrics command") {
    MetricsInputs in;
    in.gain_dbi = 6.73;
    in.directivity_db = 6.74;
    in.f_low_hz = 23.2e9;
    in.f_high_hz = 24.8e9;
    const auto j = nlohmann::json::parse(cmd_metrics(in));
    CHECK(std::abs(j["efficiency_percent"].get<double>() - 99.8) <= 0.1);
    CHECK(j["fractional_bandwidth_percent"].get<double>() == doctest::Approx(6.6667).epsilon(1e-4));

    const auto dir = scratch("metrics");
    {
        std::ofstream sym(dir / "sym.csv");
        sym << "angle_deg,level_db\n";
        for (int a = -180; a <= 180; a += 30) sym << a << ",-3.5\n";
    }
    MetricsInputs cut;
    cut.cut = dir / "sym.csv";
    CHECK(nlohmann::json::parse(cmd_metrics(cut))["ftbr_db"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(cmd_metrics({}), Error);
}

TEST_CASE("CLI exit codes") {
    const auto dir = scratch("exit");
    const auto cfg_path = write_config(dir, kSmallConfig);
    const std::string common = "--config " + cfg_path.string() + " --out " + (dir / "run").string();

    CHECK(run("simulate " + common) == exit_ok);
    CHECK(run("image " + common) == exit_ok);
    CHECK(fs::exists(dir / "run" / "report.json"));

    // Unknown flag / bad config / unwritable output -> 2
    CHECK(run("simulate --bogus") == exit_input);
    std::ofstream(dir / "broken.json") << "{ \"sweep\": ";
    CHECK(run("simulate --config " + (dir / "broken.json").string()) == exit_input);
    CHECK(run("simulate --config " + cfg_path.string() + " --out /proc/forbidden/x") == exit_input);

    // Geometry mismatch between measured and background -> 3
    auto other = parse_config(kSmallConfig);
    other.sweep.count = 43;
    cmd_simulate(other, dir / "other");
    CHECK(run("image " + common + " --measured " + (dir / "run" / "measured.json").string() + " --background " +
              (dir / "other" / "background.json").string()) == exit_mismatch);

    // PSF grid too small -> 4
    std::ofstream(dir / "tiny_psf.json") << R"({"sweep": {"count": 21}, "swing": {"point_count": 11},
        "psf": {"grid": {"origin_m": [-0.005, 0.095, 0], "width_m": 0.01, "height_m": 0.01, "pixels": [11, 11]}}})";
    CHECK(run("psf --config " + (dir / "tiny_psf.json").string()) == exit_numerical);

    // Metrics: valid scalars, malformed CSV
    CHECK(run("metrics --gain 6.73 --directivity 6.74") == exit_ok);
    std::ofstream(dir / "bad.csv") << "angle,level\n0,1\n10,oops\n";
    CHECK(run("metrics --cut " + (dir / "bad.csv").string()) == exit_input);
}
