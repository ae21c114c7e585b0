#include "image_export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "wsar/error.hpp"

namespace wsar::cli {

namespace {

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail_input("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail_input("write failed for " + path.string());
}

}  // namespace

void write_db_csv(const std::filesystem::path& path, const Matrix<double>& db) {
    std::string out;
    out.reserve(db.size() * 12);
    char buf[32];
    for (std::size_t r = 0; r < db.rows(); ++r) {
        for (std::size_t c = 0; c < db.cols(); ++c) {
            std::snprintf(buf, sizeof buf, c == 0 ? "%.9g" : ",%.9g", db(r, c));
            out += buf;
        }
        out += '\n';
    }
    write_bytes(path, out);
}

void write_pgm(const std::filesystem::path& path, const Matrix<double>& db, double dynamic_range_db) {
    if (!(dynamic_range_db > 0.0)) fail_input("pgm: dynamic range must be positive");
    std::string out = "P5\n" + std::to_string(db.cols()) + " " + std::to_string(db.rows()) + "\n255\n";
    for (std::size_t r = db.rows(); r-- > 0;) {
        for (std::size_t c = 0; c < db.cols(); ++c) {
            const double t = std::clamp((db(r, c) + dynamic_range_db) / dynamic_range_db, 0.0, 1.0);
            out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t))));
        }
    }
    write_bytes(path, out);
}

std::string detection_report_json(const DetectionReport& report, const ImageGrid& grid) {
    const auto& p = report.peak_position;
    nlohmann::json j = {
        {"peak_position_m", {p.x, p.y, p.z}},
        {"peak_index", {report.peak_index1, report.peak_index2}},
        {"peak_magnitude", report.peak_magnitude},
        {"peak_magnitude_db", report.peak_magnitude_db},
        {"extent_x_m", report.extent_x},
        {"extent_axis2_m", report.extent_axis2},
        {"threshold_db", report.threshold_db},
        {"pixel_pitch_m", {grid.pitch1(), grid.pitch2()}},
    };
    return j.dump(2) + "\n";
}

}  // namespace wsar::cli
