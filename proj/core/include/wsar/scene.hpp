#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wsar/matrix.hpp"
#include "wsar/vec3.hpp"

namespace wsar {

using Complex = std::complex<double>;

inline constexpr double speed_of_light = 299'792'458.0;  // m/s, exact
inline constexpr double pi = 3.14159265358979323846;

/// Free-space wavenumber 2*pi*f/c in rad/m. Requires freq > 0.
double wavenumber(double freq_hz);

/// An isotropic point reflector.
struct PointScatterer {
    Vec3 position;
    Complex reflectivity{1.0, 0.0};
};

/// Ordered set of stepped frequencies with cached wavenumbers.
class FrequencySweep {
public:
    /// Throws if the list is empty, non-increasing, or has a non-positive entry.
    explicit FrequencySweep(std::vector<double> frequencies_hz);

    std::size_t size() const noexcept { return freqs_.size(); }
    std::span<const double> frequencies() const noexcept { return freqs_; }
    std::span<const double> wavenumbers() const noexcept { return k_; }
    double frequency(std::size_t m) const { return freqs_[m]; }
    double lowest() const noexcept { return freqs_.front(); }
    double highest() const noexcept { return freqs_.back(); }
    double center() const noexcept { return 0.5 * (freqs_.front() + freqs_.back()); }
    double bandwidth() const noexcept { return freqs_.back() - freqs_.front(); }

    // True when adjacent gaps agree within 1e-9 relative, which lets the
    // imager step the phase by a constant rotation.
    bool is_uniform() const noexcept { return uniform_; }

    friend bool operator==(const FrequencySweep& a, const FrequencySweep& b) {
        return a.freqs_ == b.freqs_;
    }

private:
    std::vector<double> freqs_;
    std::vector<double> k_;
    bool uniform_ = true;
};

/// `count` uniformly spaced frequencies over [center - B/2, center + B/2].
/// A single-point sweep sits at the center.
FrequencySweep make_sweep(double center_hz, double bandwidth_hz, std::size_t count);

/// Ordered antenna phase-center positions.
class Trajectory {
public:
    explicit Trajectory(std::vector<Vec3> positions);

    std::size_t size() const noexcept { return pos_.size(); }
    std::span<const Vec3> positions() const noexcept { return pos_; }
    const Vec3& operator[](std::size_t n) const { return pos_[n]; }

    friend bool operator==(const Trajectory&, const Trajectory&) = default;

private:
    std::vector<Vec3> pos_;
};

/// S(m, n): one complex sample per (frequency, position). Rows are
/// frequencies, columns are positions.
class AcquisitionDataset {
public:
    AcquisitionDataset(FrequencySweep sweep, Trajectory trajectory, Matrix<Complex> samples);

    const FrequencySweep& sweep() const noexcept { return sweep_; }
    const Trajectory& trajectory() const noexcept { return traj_; }
    const Matrix<Complex>& samples() const noexcept { return samples_; }

    std::size_t frequency_count() const noexcept { return samples_.rows(); }
    std::size_t position_count() const noexcept { return samples_.cols(); }

    // Same geometry, new samples (dimensions are re-validated).
    AcquisitionDataset with_samples(Matrix<Complex> samples) const;

private:
    FrequencySweep sweep_;
    Trajectory traj_;
    Matrix<Complex> samples_;
};

/// Planar rectangular pixel grid. Pixel (i, j) is centered at
/// origin + (i + 1/2) * pitch1 * axis1 + (j + 1/2) * pitch2 * axis2,
/// so `origin` is the outer corner of pixel (0, 0).
class ImageGrid {
public:
    ImageGrid(Vec3 origin, Vec3 axis1, Vec3 axis2, double width, double height,
              std::size_t pixels1, std::size_t pixels2);

    /// Grid in the z = z0 plane covering [x0, x1] x [y0, y1].
    static ImageGrid xy(double x0, double x1, double y0, double y1,
                        std::size_t pixels_x, std::size_t pixels_y, double z0 = 0.0);

    const Vec3& origin() const noexcept { return origin_; }
    const Vec3& axis1() const noexcept { return axis1_; }
    const Vec3& axis2() const noexcept { return axis2_; }
    double width() const noexcept { return width_; }
    double height() const noexcept { return height_; }
    std::size_t pixels1() const noexcept { return p1_; }
    std::size_t pixels2() const noexcept { return p2_; }
    double pitch1() const noexcept { return width_ / static_cast<double>(p1_); }
    double pitch2() const noexcept { return height_ / static_cast<double>(p2_); }

    Vec3 pixel_center(std::size_t i, std::size_t j) const;

    /// Index of the pixel containing p's projection, clamped to the grid.
    std::pair<std::size_t, std::size_t> nearest_pixel(const Vec3& p) const;

    ImageGrid translated(const Vec3& offset) const;

private:
    Vec3 origin_, axis1_, axis2_;
    double width_, height_;
    std::size_t p1_, p2_;
};

/// Complex image. values()(j, i): rows follow axis 2, columns axis 1.
class ReflectivityImage {
public:
    ReflectivityImage(ImageGrid grid, Matrix<Complex> values);

    const ImageGrid& grid() const noexcept { return grid_; }
    const Matrix<Complex>& values() const noexcept { return values_; }
    Complex at(std::size_t i, std::size_t j) const { return values_(j, i); }

private:
    ImageGrid grid_;
    Matrix<Complex> values_;
};

/// Samples a width x height plate (spanning x and z, facing the aperture)
/// with a regular grid of scatterers whose pitch does not exceed `spacing`.
/// The total reflectivity is split equally across the points.
std::vector<PointScatterer> discretize_plate(const Vec3& center, double width, double height,
                                             double spacing, Complex reflectivity);

/// Default plate sampling pitch: a quarter wavelength at the top of the sweep.
double default_plate_spacing(const FrequencySweep& sweep);

}  // namespace wsar
