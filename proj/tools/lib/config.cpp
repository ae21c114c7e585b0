#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "wsar/error.hpp"

namespace wsar::cli {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        fail_input("config: '" + where + "' must be an object");
    }
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) {
            fail_input("config: unknown key '" + key + "' in '" + where + "'");
        }
    }
}

Vec3 vec3_from(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3) {
        fail_input("config: '" + what + "' must be a 3-element array");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_to(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Complex complex_from(const json& j, const std::string& what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    fail_input("config: '" + what + "' must be a number or [re, im]");
}

json complex_to(const Complex& c) { return json::array({c.real(), c.imag()}); }

PointScatterer point_from(const json& j, const std::string& where) {
    check_keys(j, where, {"position_m", "reflectivity"});
    PointScatterer p;
    p.position = vec3_from(j.at("position_m"), where + ".position_m");
    if (j.contains("reflectivity")) p.reflectivity = complex_from(j["reflectivity"], where + ".reflectivity");
    return p;
}

json point_to(const PointScatterer& p) {
    return {{"position_m", vec3_to(p.position)}, {"reflectivity", complex_to(p.reflectivity)}};
}

GridSpec grid_from(const json& j, const std::string& where) {
    check_keys(j, where, {"origin_m", "axis1", "axis2", "width_m", "height_m", "pixels"});
    GridSpec g;
    if (j.contains("origin_m")) g.origin = vec3_from(j["origin_m"], where + ".origin_m");
    if (j.contains("axis1")) g.axis1 = vec3_from(j["axis1"], where + ".axis1");
    if (j.contains("axis2")) g.axis2 = vec3_from(j["axis2"], where + ".axis2");
    g.width = j.value("width_m", g.width);
    g.height = j.value("height_m", g.height);
    if (j.contains("pixels")) {
        const auto& p = j["pixels"];
        if (!p.is_array() || p.size() != 2) fail_input("config: '" + where + ".pixels' must be [P1, P2]");
        g.pixels1 = p[0].get<std::size_t>();
        g.pixels2 = p[1].get<std::size_t>();
    }
    return g;
}

json grid_to(const GridSpec& g) {
    return {{"origin_m", vec3_to(g.origin)}, {"axis1", vec3_to(g.axis1)},     {"axis2", vec3_to(g.axis2)},
            {"width_m", g.width},            {"height_m", g.height},          {"pixels", {g.pixels1, g.pixels2}}};
}

AmplitudeModel amplitude_from(const std::string& s) {
    if (s == "phase-only") return AmplitudeModel::phase_only;
    if (s == "spherical-spreading") return AmplitudeModel::spherical_spreading;
    fail_input("config: unknown amplitude_model '" + s + "'");
}

std::string amplitude_to(AmplitudeModel m) {
    return m == AmplitudeModel::phase_only ? "phase-only" : "spherical-spreading";
}

Taper taper_from(const std::string& s) {
    if (s == "none") return Taper::none;
    if (s == "hann") return Taper::hann;
    fail_input("config: unknown taper '" + s + "'");
}

RunConfig from_json(const json& doc) {
    check_keys(doc, "<root>",
               {"seed", "threads", "out_dir", "sweep", "swing", "scene", "forward", "calibration", "grid", "imaging",
                "psf", "output"});
    RunConfig cfg = RunConfig::defaults();
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.threads = doc.value("threads", cfg.threads);
    cfg.out_dir = doc.value("out_dir", cfg.out_dir);

    if (doc.contains("sweep")) {
        const auto& s = doc["sweep"];
        check_keys(s, "sweep", {"center_hz", "bandwidth_hz", "count"});
        cfg.sweep.center_hz = s.value("center_hz", cfg.sweep.center_hz);
        cfg.sweep.bandwidth_hz = s.value("bandwidth_hz", cfg.sweep.bandwidth_hz);
        cfg.sweep.count = s.value("count", cfg.sweep.count);
    }
    if (doc.contains("swing")) {
        const auto& s = doc["swing"];
        check_keys(s, "swing",
                   {"aperture_length_m", "point_count", "standoff_m", "jitter_std_m", "drift_rate", "crop_extent_m"});
        cfg.swing.aperture_length = s.value("aperture_length_m", cfg.swing.aperture_length);
        cfg.swing.point_count = s.value("point_count", cfg.swing.point_count);
        cfg.swing.standoff = s.value("standoff_m", cfg.swing.standoff);
        cfg.swing.jitter_std = s.value("jitter_std_m", cfg.swing.jitter_std);
        cfg.swing.drift_rate = s.value("drift_rate", cfg.swing.drift_rate);
        if (s.contains("crop_extent_m") && !s["crop_extent_m"].is_null()) {
            cfg.crop_extent_m = s["crop_extent_m"].get<double>();
        }
    }
    if (doc.contains("scene")) {
        const auto& s = doc["scene"];
        check_keys(s, "scene", {"plates", "points", "clutter"});
        cfg.scene = {};
        for (const auto& p : s.value("plates", json::array())) {
            check_keys(p, "scene.plates[]", {"center_m", "width_m", "height_m", "spacing_m", "reflectivity"});
            PlateSpec plate;
            if (p.contains("center_m")) plate.center = vec3_from(p["center_m"], "scene.plates[].center_m");
            plate.width = p.value("width_m", plate.width);
            plate.height = p.value("height_m", plate.height);
            if (p.contains("spacing_m") && !p["spacing_m"].is_null()) plate.spacing = p["spacing_m"].get<double>();
            if (p.contains("reflectivity")) {
                plate.reflectivity = complex_from(p["reflectivity"], "scene.plates[].reflectivity");
            }
            cfg.scene.plates.push_back(plate);
        }
        for (const auto& p : s.value("points", json::array())) cfg.scene.points.push_back(point_from(p, "scene.points[]"));
        for (const auto& p : s.value("clutter", json::array())) {
            cfg.scene.clutter.push_back(point_from(p, "scene.clutter[]"));
        }
    }
    if (doc.contains("forward")) {
        const auto& f = doc["forward"];
        check_keys(f, "forward", {"amplitude_model", "noise_snr_db", "system_delay_s", "pattern_exponent"});
        if (f.contains("amplitude_model")) cfg.amplitude_model = amplitude_from(f["amplitude_model"].get<std::string>());
        if (f.contains("noise_snr_db")) {
            cfg.noise_snr_db = f["noise_snr_db"].is_null() ? std::nullopt
                                                           : std::optional<double>(f["noise_snr_db"].get<double>());
        }
        cfg.system_delay_s = f.value("system_delay_s", cfg.system_delay_s);
        cfg.pattern_exponent = f.value("pattern_exponent", cfg.pattern_exponent);
    }
    if (doc.contains("calibration")) {
        const auto& c = doc["calibration"];
        check_keys(c, "calibration", {"delay_s", "auto_estimate", "known_range_m"});
        cfg.calibration.delay_s = c.value("delay_s", cfg.calibration.delay_s);
        cfg.calibration.auto_estimate = c.value("auto_estimate", cfg.calibration.auto_estimate);
        if (c.contains("known_range_m") && !c["known_range_m"].is_null()) {
            cfg.calibration.known_range_m = c["known_range_m"].get<double>();
        }
    }
    if (doc.contains("grid")) cfg.grid = grid_from(doc["grid"], "grid");
    if (doc.contains("imaging")) {
        const auto& im = doc["imaging"];
        check_keys(im, "imaging", {"taper", "threshold_db"});
        if (im.contains("taper")) cfg.taper = taper_from(im["taper"].get<std::string>());
        cfg.threshold_db = im.value("threshold_db", cfg.threshold_db);
    }
    if (doc.contains("psf")) {
        const auto& p = doc["psf"];
        check_keys(p, "psf", {"target_m", "grid"});
        if (p.contains("target_m") && !p["target_m"].is_null()) cfg.psf.target = vec3_from(p["target_m"], "psf.target_m");
        if (p.contains("grid") && !p["grid"].is_null()) cfg.psf.grid = grid_from(p["grid"], "psf.grid");
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        check_keys(o, "output", {"sample_dtype"});
        if (o.contains("sample_dtype")) cfg.sample_type = sample_type_from_string(o["sample_dtype"].get<std::string>());
    }
    cfg.swing.seed = cfg.seed;
    return cfg;
}

}  // namespace

RunConfig RunConfig::defaults() {
    RunConfig cfg;
    cfg.scene.plates.push_back(PlateSpec{});
    // A static reflector outside the imaged area; removed by background subtraction.
    cfg.scene.clutter.push_back({{-0.08, 0.30, 0.0}, {0.5, 0.0}});
    return cfg;
}

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail_input(std::string("config: malformed JSON: ") + e.what());
    }
    try {
        RunConfig cfg = from_json(doc);
        validate(cfg);
        return cfg;
    } catch (const json::exception& e) {
        fail_input(std::string("config: ") + e.what());
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        fail_input("cannot open config " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const RunConfig& cfg) {
    json plates = json::array();
    for (const auto& p : cfg.scene.plates) {
        plates.push_back({{"center_m", vec3_to(p.center)},
                          {"width_m", p.width},
                          {"height_m", p.height},
                          {"spacing_m", p.spacing ? json(*p.spacing) : json(nullptr)},
                          {"reflectivity", complex_to(p.reflectivity)}});
    }
    json points = json::array();
    for (const auto& p : cfg.scene.points) points.push_back(point_to(p));
    json clutter = json::array();
    for (const auto& p : cfg.scene.clutter) clutter.push_back(point_to(p));

    json doc = {
        {"seed", cfg.seed},
        {"threads", cfg.threads},
        {"out_dir", cfg.out_dir},
        {"sweep", {{"center_hz", cfg.sweep.center_hz}, {"bandwidth_hz", cfg.sweep.bandwidth_hz}, {"count", cfg.sweep.count}}},
        {"swing",
         {{"aperture_length_m", cfg.swing.aperture_length},
          {"point_count", cfg.swing.point_count},
          {"standoff_m", cfg.swing.standoff},
          {"jitter_std_m", cfg.swing.jitter_std},
          {"drift_rate", cfg.swing.drift_rate},
          {"crop_extent_m", cfg.crop_extent_m ? json(*cfg.crop_extent_m) : json(nullptr)}}},
        {"scene", {{"plates", plates}, {"points", points}, {"clutter", clutter}}},
        {"forward",
         {{"amplitude_model", amplitude_to(cfg.amplitude_model)},
          {"noise_snr_db", cfg.noise_snr_db ? json(*cfg.noise_snr_db) : json(nullptr)},
          {"system_delay_s", cfg.system_delay_s},
          {"pattern_exponent", cfg.pattern_exponent}}},
        {"calibration",
         {{"delay_s", cfg.calibration.delay_s},
          {"auto_estimate", cfg.calibration.auto_estimate},
          {"known_range_m", cfg.calibration.known_range_m ? json(*cfg.calibration.known_range_m) : json(nullptr)}}},
        {"grid", grid_to(cfg.grid)},
        {"imaging", {{"taper", cfg.taper == Taper::hann ? "hann" : "none"}, {"threshold_db", cfg.threshold_db}}},
        {"psf",
         {{"target_m", cfg.psf.target ? vec3_to(*cfg.psf.target) : json(nullptr)},
          {"grid", cfg.psf.grid ? grid_to(*cfg.psf.grid) : json(nullptr)}}},
        {"output", {{"sample_dtype", to_string(cfg.sample_type)}}},
    };
    return doc.dump(2);
}

void validate(const RunConfig& cfg) {
    make_sweep(cfg.sweep.center_hz, cfg.sweep.bandwidth_hz, cfg.sweep.count);
    wsar::validate(cfg.swing);
    if (cfg.crop_extent_m && !(*cfg.crop_extent_m > 0.0)) {
        fail_input("config: crop_extent_m must be positive");
    }
    for (const auto& p : cfg.scene.plates) {
        if (!is_finite(p.center) || !(p.width > 0.0) || !(p.height > 0.0) || (p.spacing && !(*p.spacing > 0.0))) {
            fail_input("config: plates need a finite center and positive width, height and spacing");
        }
    }
    if (cfg.noise_snr_db && !std::isfinite(*cfg.noise_snr_db)) {
        fail_input("config: noise_snr_db must be finite");
    }
    if (!std::isfinite(cfg.system_delay_s) || !std::isfinite(cfg.calibration.delay_s)) {
        fail_input("config: delays must be finite");
    }
    if (!(cfg.pattern_exponent >= 0.0)) {
        fail_input("config: pattern_exponent must be non-negative");
    }
    if (!(cfg.threshold_db < 0.0)) {
        fail_input("config: threshold_db must be negative");
    }
    cfg.grid.to_grid();
    if (cfg.psf.grid) cfg.psf.grid->to_grid();
}

std::vector<PointScatterer> target_scatterers(const RunConfig& cfg, const FrequencySweep& sweep) {
    std::vector<PointScatterer> out;
    for (const auto& p : cfg.scene.plates) {
        const double spacing = p.spacing.value_or(default_plate_spacing(sweep));
        auto pts = discretize_plate(p.center, p.width, p.height, spacing, p.reflectivity);
        out.insert(out.end(), pts.begin(), pts.end());
    }
    out.insert(out.end(), cfg.scene.points.begin(), cfg.scene.points.end());
    return out;
}

}  // namespace wsar::cli
