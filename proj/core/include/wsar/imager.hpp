#pragma once

#include <cstddef>

#include "wsar/scene.hpp"

namespace wsar {

enum class Taper {
    none,
    hann,  // Hann weights across both frequency and aperture index
};

struct ImagingOptions {
    std::size_t threads = 1;  // 0 = all hardware threads
    Taper taper = Taper::none;
};

/// Sum-and-delay backprojection:
///
///   rho(r') = sum_n sum_m S(m, n) * exp(j 2 k_m |r' - r_n|)
///
/// evaluated at every pixel center, accumulated sequentially per pixel
/// with n outer and m inner. Work is split across pixels only, so the image
/// is bit-identical for any thread count. No amplitude normalization.
///
/// Throws ErrorKind::numerical naming the pixel when a pixel center
/// coincides with an antenna position.
ReflectivityImage backproject(const AcquisitionDataset& data, const ImageGrid& grid,
                              const ImagingOptions& options = {});

inline constexpr double db_floor = -120.0;

/// 20 log10(|v| / max|v|); exact zeros map to db_floor. Rows follow axis 2.
Matrix<double> to_db(const ReflectivityImage& image);

struct DetectionReport {
    Vec3 peak_position;
    std::size_t peak_index1 = 0;  // along axis 1
    std::size_t peak_index2 = 0;  // along axis 2
    double peak_magnitude = 0.0;  // linear |rho| at the peak
    double peak_magnitude_db = 0.0;
    double extent_x = 0.0;      // m, along axis 1
    double extent_axis2 = 0.0;  // m, along axis 2
    double threshold_db = -6.0;
};

/// Magnitude peak (lowest linear index wins ties) and the length of the
/// contiguous above-threshold run through it along each axis, counted in
/// whole pixels times the pitch.
DetectionReport detect_peak(const ReflectivityImage& image, double threshold_db = -6.0);

struct PsfMetrics {
    double range_fwhm = 0.0;       // m, along axis 2
    double crossrange_fwhm = 0.0;  // m, along axis 1
    double peak_sidelobe_db = db_floor;
};

/// Resolution figures for an image of a single point target. Widths are
/// taken at -6 dB on the 20 log10 scale with linear (dB) interpolation of
/// the crossings. The sidelobe level is the highest value on either cut
/// beyond the first minimum on each side of the peak.
///
/// Throws ErrorKind::numerical when the peak or a -6 dB crossing falls on
/// the grid boundary.
PsfMetrics psf_metrics(const ReflectivityImage& image);

/// Convenience: backproject then measure.
PsfMetrics psf_metrics(const AcquisitionDataset& point_target, const ImageGrid& grid,
                       const ImagingOptions& options = {});

}  // namespace wsar
