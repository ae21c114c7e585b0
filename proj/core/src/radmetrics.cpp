#include "wsar/radmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wsar/error.hpp"
#include "wsar/scene.hpp"

namespace wsar {

namespace {

constexpr double kGainRoundingSlack = 0.05;  // dB
constexpr double kHalfPowerDb = -3.0102999566398120;  // 10 log10(0.5)

double to_db(double level) { return level > 0.0 ? 10.0 * std::log10(level) : -INFINITY; }

double interpolate_db(double a_level, double b_level, double t) {
    if (t <= 0.0) return a_level;
    if (t >= 1.0) return b_level;
    if (a_level <= 0.0 || b_level <= 0.0) {
        // A zero endpoint is -inf dB; anything strictly between is still zero.
        return 0.0;
    }
    const double db = (1.0 - t) * to_db(a_level) + t * to_db(b_level);
    return std::pow(10.0, db / 10.0);
}

double wrap_deg(double a) {
    while (a > 180.0) a -= 360.0;
    while (a < -180.0) a += 360.0;
    return a;
}

}  // namespace

PatternCut::PatternCut(std::vector<double> angles_deg, std::vector<double> levels)
    : angles_(std::move(angles_deg)), levels_(std::move(levels)) {
    if (angles_.size() != levels_.size()) {
        fail_input("pattern cut: angle and level counts differ");
    }
    if (angles_.size() < 8) {
        fail_input("pattern cut: needs at least 8 samples");
    }
    for (std::size_t i = 0; i < angles_.size(); ++i) {
        if (!std::isfinite(angles_[i]) || angles_[i] < -180.0 || angles_[i] > 180.0) {
            fail_input("pattern cut: angles must lie in [-180, 180]");
        }
        if (i > 0 && !(angles_[i] > angles_[i - 1])) {
            fail_input("pattern cut: angles must be strictly increasing");
        }
        if (!(levels_[i] >= 0.0) || !std::isfinite(levels_[i])) {
            fail_input("pattern cut: levels must be finite and non-negative");
        }
    }
}

PatternCut PatternCut::from_db(std::vector<double> angles_deg, const std::vector<double>& levels_db) {
    std::vector<double> lin;
    lin.reserve(levels_db.size());
    for (double db : levels_db) lin.push_back(std::pow(10.0, db / 10.0));
    return PatternCut(std::move(angles_deg), std::move(lin));
}

double PatternCut::level_at(double angle_deg) const {
    const double a = wrap_deg(angle_deg);
    const auto it = std::lower_bound(angles_.begin(), angles_.end(), a);
    if (it != angles_.end() && *it == a) {
        return levels_[static_cast<std::size_t>(it - angles_.begin())];
    }
    // +/-180 are the same direction.
    if (std::abs(a) == 180.0) {
        if (angles_.front() == -180.0) return levels_.front();
        if (angles_.back() == 180.0) return levels_.back();
    }
    if (it == angles_.begin() || it == angles_.end()) {
        // Between the last sample and the first one, going through 180.
        const double a0 = angles_.back();
        const double a1 = angles_.front() + 360.0;
        const double x = a < a0 ? a + 360.0 : a;
        return interpolate_db(levels_.back(), levels_.front(), (x - a0) / (a1 - a0));
    }
    const std::size_t hi = static_cast<std::size_t>(it - angles_.begin());
    const std::size_t lo = hi - 1;
    return interpolate_db(levels_[lo], levels_[hi], (a - angles_[lo]) / (angles_[hi] - angles_[lo]));
}

PatternCut read_pattern_csv(std::istream& in) {
    std::vector<double> angles, levels_db;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        double a = 0.0, l = 0.0;
        if (!(fields >> a >> l)) {
            if (angles.empty() && lineno == 1) continue;  // header row
            fail_input("pattern csv: malformed line " + std::to_string(lineno));
        }
        std::string rest;
        if (fields >> rest) {
            fail_input("pattern csv: too many columns on line " + std::to_string(lineno));
        }
        angles.push_back(a);
        levels_db.push_back(l);
    }
    return PatternCut::from_db(std::move(angles), levels_db);
}

PatternCut read_pattern_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail_input("cannot open pattern file " + path);
    }
    return read_pattern_csv(in);
}

double efficiency(double gain_dbi, double directivity_db) {
    if (!std::isfinite(gain_dbi) || !std::isfinite(directivity_db)) {
        fail_input("efficiency: gain and directivity must be finite");
    }
    if (gain_dbi > directivity_db + kGainRoundingSlack) {
        fail_input("efficiency: gain exceeds directivity");
    }
    return std::min(100.0, 100.0 * std::pow(10.0, (gain_dbi - directivity_db) / 10.0));
}

double ftbr(const PatternCut& cut) {
    const double front = cut.level_at(0.0);
    const double back = cut.level_at(180.0);
    if (!(back > 0.0)) {
        fail_numerical("ftbr: back-lobe level is zero");
    }
    if (!(front > 0.0)) {
        fail_numerical("ftbr: boresight level is zero");
    }
    return 10.0 * std::log10(front / back);
}

double fractional_bandwidth(double f_low_hz, double f_high_hz) {
    if (!(f_low_hz > 0.0) || !(f_high_hz > f_low_hz) || !std::isfinite(f_high_hz)) {
        fail_input("fractional_bandwidth: requires 0 < f_low < f_high");
    }
    return 100.0 * (f_high_hz - f_low_hz) / (0.5 * (f_high_hz + f_low_hz));
}

double half_power_beamwidth(const PatternCut& cut) {
    const auto& ang = cut.angles();
    const auto& lev = cut.levels();
    const std::size_t n = ang.size();
    const auto peak_it = std::max_element(lev.begin(), lev.end());
    if (!(*peak_it > 0.0)) {
        fail_numerical("beamwidth: pattern is identically zero");
    }
    const std::size_t peak = static_cast<std::size_t>(peak_it - lev.begin());
    const double peak_db = to_db(*peak_it);
    const double threshold = peak_db + kHalfPowerDb;

    // Walk outward with wrap-around; return the angular offset of the crossing.
    auto walk = [&](int dir) {
        double travelled = 0.0;
        std::size_t t = peak;
        for (std::size_t step = 0; step < n; ++step) {
            const std::size_t next = dir > 0 ? (t + 1) % n : (t + n - 1) % n;
            double gap = dir > 0 ? ang[next] - ang[t] : ang[t] - ang[next];
            if (gap <= 0.0) gap += 360.0;
            const double lt = to_db(lev[t]);
            const double ln = to_db(lev[next]);
            if (ln < threshold) {
                const double frac = std::isinf(ln) ? 1.0 : (lt - threshold) / (lt - ln);
                return travelled + frac * gap;
            }
            travelled += gap;
            t = next;
        }
        fail_numerical("beamwidth: no half-power crossing in the cut");
    };
    const double width = walk(-1) + walk(+1);
    if (width >= 360.0) {
        fail_numerical("beamwidth: half-power region covers the full cut");
    }
    return width;
}

double directivity_from_cuts(const PatternCut& cut_e, const PatternCut& cut_h) {
    const double deg = pi / 180.0;
    const double theta_e = half_power_beamwidth(cut_e) * deg;
    const double theta_h = half_power_beamwidth(cut_h) * deg;
    return 10.0 * std::log10(4.0 * pi / (theta_e * theta_h));
}

}  // namespace wsar
