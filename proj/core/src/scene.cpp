#include "wsar/scene.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsar/error.hpp"

namespace wsar {

namespace {

constexpr double kUnitTolerance = 1e-9;

bool all_finite(std::span<const Complex> values) {
    return std::all_of(values.begin(), values.end(), [](const Complex& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

}  // namespace

double wavenumber(double freq_hz) {
    if (!(freq_hz > 0.0) || !std::isfinite(freq_hz)) {
        fail_input("wavenumber: frequency must be positive and finite");
    }
    return 2.0 * pi * freq_hz / speed_of_light;
}

FrequencySweep::FrequencySweep(std::vector<double> frequencies_hz) : freqs_(std::move(frequencies_hz)) {
    if (freqs_.empty()) {
        fail_input("frequency sweep must contain at least one frequency");
    }
    for (std::size_t m = 0; m < freqs_.size(); ++m) {
        if (!(freqs_[m] > 0.0) || !std::isfinite(freqs_[m])) {
            fail_input("frequency sweep entries must be positive and finite");
        }
        if (m > 0 && !(freqs_[m] > freqs_[m - 1])) {
            fail_input("frequency sweep must be strictly increasing");
        }
    }
    k_.reserve(freqs_.size());
    for (double f : freqs_) {
        k_.push_back(wavenumber(f));
    }
    if (freqs_.size() > 2) {
        const double nominal = (freqs_.back() - freqs_.front()) / static_cast<double>(freqs_.size() - 1);
        for (std::size_t m = 1; m < freqs_.size(); ++m) {
            if (std::abs((freqs_[m] - freqs_[m - 1]) - nominal) > 1e-9 * nominal) {
                uniform_ = false;
                break;
            }
        }
    }
}

FrequencySweep make_sweep(double center_hz, double bandwidth_hz, std::size_t count) {
    if (count < 1) {
        fail_input("make_sweep: count must be at least 1");
    }
    if (!(bandwidth_hz >= 0.0) || !std::isfinite(bandwidth_hz) || !std::isfinite(center_hz)) {
        fail_input("make_sweep: bandwidth must be non-negative and finite");
    }
    const double lo = center_hz - 0.5 * bandwidth_hz;
    const double hi = center_hz + 0.5 * bandwidth_hz;
    if (!(lo > 0.0)) {
        fail_input("make_sweep: lowest frequency must be positive");
    }
    if (count == 1) {
        return FrequencySweep({center_hz});
    }
    if (bandwidth_hz == 0.0) {
        fail_input("make_sweep: more than one frequency needs a positive bandwidth");
    }
    std::vector<double> f(count);
    const double denom = static_cast<double>(count - 1);
    for (std::size_t m = 0; m < count; ++m) {
        f[m] = lo + (hi - lo) * (static_cast<double>(m) / denom);
    }
    f.back() = hi;
    return FrequencySweep(std::move(f));
}

Trajectory::Trajectory(std::vector<Vec3> positions) : pos_(std::move(positions)) {
    if (pos_.empty()) {
        fail_input("trajectory must contain at least one position");
    }
    for (const auto& p : pos_) {
        if (!is_finite(p)) {
            fail_input("trajectory positions must be finite");
        }
    }
}

AcquisitionDataset::AcquisitionDataset(FrequencySweep sweep, Trajectory trajectory, Matrix<Complex> samples)
    : sweep_(std::move(sweep)), traj_(std::move(trajectory)), samples_(std::move(samples)) {
    if (samples_.rows() != sweep_.size() || samples_.cols() != traj_.size()) {
        fail_input("dataset samples are " + std::to_string(samples_.rows()) + "x" +
                   std::to_string(samples_.cols()) + ", expected " + std::to_string(sweep_.size()) +
                   "x" + std::to_string(traj_.size()));
    }
    if (!all_finite(samples_.flat())) {
        fail_input("dataset samples must be finite");
    }
}

AcquisitionDataset AcquisitionDataset::with_samples(Matrix<Complex> samples) const {
    return AcquisitionDataset(sweep_, traj_, std::move(samples));
}

ImageGrid::ImageGrid(Vec3 origin, Vec3 axis1, Vec3 axis2, double width, double height,
                     std::size_t pixels1, std::size_t pixels2)
    : origin_(origin), axis1_(axis1), axis2_(axis2), width_(width), height_(height), p1_(pixels1), p2_(pixels2) {
    if (!is_finite(origin_) || !is_finite(axis1_) || !is_finite(axis2_)) {
        fail_input("image grid vectors must be finite");
    }
    if (std::abs(norm(axis1_) - 1.0) > kUnitTolerance || std::abs(norm(axis2_) - 1.0) > kUnitTolerance) {
        fail_input("image grid axes must be unit vectors");
    }
    if (std::abs(dot(axis1_, axis2_)) > kUnitTolerance) {
        fail_input("image grid axes must be orthogonal");
    }
    if (!(width_ > 0.0) || !(height_ > 0.0) || !std::isfinite(width_) || !std::isfinite(height_)) {
        fail_input("image grid extents must be positive");
    }
    if (p1_ < 1 || p2_ < 1) {
        fail_input("image grid needs at least one pixel per axis");
    }
}

ImageGrid ImageGrid::xy(double x0, double x1, double y0, double y1, std::size_t pixels_x,
                        std::size_t pixels_y, double z0) {
    return ImageGrid({x0, y0, z0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, x1 - x0, y1 - y0, pixels_x, pixels_y);
}

Vec3 ImageGrid::pixel_center(std::size_t i, std::size_t j) const {
    const double u = (static_cast<double>(i) + 0.5) * pitch1();
    const double v = (static_cast<double>(j) + 0.5) * pitch2();
    return origin_ + u * axis1_ + v * axis2_;
}

std::pair<std::size_t, std::size_t> ImageGrid::nearest_pixel(const Vec3& p) const {
    const Vec3 rel = p - origin_;
    auto index = [](double coord, double pitch, std::size_t count) {
        const double f = std::floor(coord / pitch);
        if (f < 0.0) return std::size_t{0};
        if (f >= static_cast<double>(count)) return count - 1;
        return static_cast<std::size_t>(f);
    };
    return {index(dot(rel, axis1_), pitch1(), p1_), index(dot(rel, axis2_), pitch2(), p2_)};
}

ImageGrid ImageGrid::translated(const Vec3& offset) const {
    return ImageGrid(origin_ + offset, axis1_, axis2_, width_, height_, p1_, p2_);
}

ReflectivityImage::ReflectivityImage(ImageGrid grid, Matrix<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.rows() != grid_.pixels2() || values_.cols() != grid_.pixels1()) {
        fail_input("image values do not match grid pixel counts");
    }
}

std::vector<PointScatterer> discretize_plate(const Vec3& center, double width, double height,
                                             double spacing, Complex reflectivity) {
    if (!(width > 0.0) || !(height > 0.0) || !(spacing > 0.0)) {
        fail_input("discretize_plate: width, height and spacing must be positive");
    }
    // Points per side: one if the plate fits inside a single cell, otherwise
    // enough to reach both edges with pitch <= spacing.
    auto count_for = [spacing](double extent) -> std::size_t {
        if (spacing >= extent) return 1;
        return static_cast<std::size_t>(std::ceil(extent / spacing - 1e-9)) + 1;
    };
    const std::size_t nx = count_for(width);
    const std::size_t nz = count_for(height);
    auto offsets = [](double extent, std::size_t n) {
        std::vector<double> o(n, 0.0);
        if (n == 1) return o;
        const double half = 0.5 * extent;
        const double denom = static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            // Mirror the upper half from the lower half so pairs are exactly symmetric.
            const std::size_t lo = std::min(i, n - 1 - i);
            const double v = -half + extent * (static_cast<double>(lo) / denom);
            o[i] = (i == lo) ? v : -v;
        }
        if (n % 2 == 1) o[n / 2] = 0.0;
        return o;
    };
    const auto ox = offsets(width, nx);
    const auto oz = offsets(height, nz);
    const Complex each = reflectivity / static_cast<double>(nx * nz);

    std::vector<PointScatterer> out;
    out.reserve(nx * nz);
    for (double dz : oz) {
        for (double dx : ox) {
            out.push_back({center + Vec3{dx, 0.0, dz}, each});
        }
    }
    return out;
}

double default_plate_spacing(const FrequencySweep& sweep) {
    return speed_of_light / sweep.highest() / 4.0;
}

}  // namespace wsar
