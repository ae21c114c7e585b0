#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wsar {

/// One planar radiation-pattern cut. Angles in degrees over [-180, 180],
/// strictly increasing; levels are linear power per unit solid angle.
class PatternCut {
public:
    PatternCut(std::vector<double> angles_deg, std::vector<double> levels);

    /// From parallel arrays with levels in dB.
    static PatternCut from_db(std::vector<double> angles_deg, const std::vector<double>& levels_db);

    const std::vector<double>& angles() const noexcept { return angles_; }
    const std::vector<double>& levels() const noexcept { return levels_; }

    /// Level at an arbitrary angle, interpolated linearly on the dB scale
    /// and wrapping across +/-180 degrees.
    double level_at(double angle_deg) const;

private:
    std::vector<double> angles_;
    std::vector<double> levels_;
};

/// Reads a two-column CSV (angle_deg, level_db). Lines starting with '#'
/// and a non-numeric header row are skipped.
PatternCut read_pattern_csv(std::istream& in);
PatternCut read_pattern_csv(const std::string& path);

/// Radiation efficiency in percent from gain (dBi) and directivity (dB),
/// capped at 100. Gains up to 0.05 dB above directivity are accepted as
/// rounding.
double efficiency(double gain_dbi, double directivity_db);

/// Front-to-back ratio in dB: level(0 deg) / level(180 deg).
double ftbr(const PatternCut& cut);

/// 100 * (f_high - f_low) / center, in percent.
double fractional_bandwidth(double f_low_hz, double f_high_hz);

/// Half-power (-3 dB) beamwidth of the main lobe, in degrees.
double half_power_beamwidth(const PatternCut& cut);

/// Kraus two-cut estimate D = 4 pi / (theta_E * theta_H) in dB, with the
/// half-power beamwidths in radians.
double directivity_from_cuts(const PatternCut& cut_e, const PatternCut& cut_h);

}  // namespace wsar
