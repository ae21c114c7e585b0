#include "wsar/calib.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wsar/error.hpp"

namespace wsar {

namespace {

constexpr double kGeometryTolerance = 1e-9;
constexpr double kPeakOverMedianDb = 6.0;

void require_same_geometry(const AcquisitionDataset& a, const AcquisitionDataset& b) {
    if (a.frequency_count() != b.frequency_count() || a.position_count() != b.position_count()) {
        fail_mismatch("datasets differ in dimensions");
    }
    const auto fa = a.sweep().frequencies();
    const auto fb = b.sweep().frequencies();
    for (std::size_t m = 0; m < fa.size(); ++m) {
        if (std::abs(fa[m] - fb[m]) > kGeometryTolerance * std::abs(fa[m])) {
            fail_mismatch("datasets differ in frequency sweep");
        }
    }
    const auto pa = a.trajectory().positions();
    const auto pb = b.trajectory().positions();
    for (std::size_t n = 0; n < pa.size(); ++n) {
        const Vec3 d = pa[n] - pb[n];
        if (std::abs(d.x) > kGeometryTolerance || std::abs(d.y) > kGeometryTolerance ||
            std::abs(d.z) > kGeometryTolerance) {
            fail_mismatch("datasets differ in trajectory");
        }
    }
}

Complex delay_rotation(double freq, double tau) {
    const double phase = 2.0 * pi * freq * tau;
    return {std::cos(phase), std::sin(phase)};
}

// Focus energy of the calibrated data at a fixed range.
double focus_energy(const AcquisitionDataset& data, const std::vector<Complex>& range_kernel, double tau) {
    const auto& S = data.samples();
    const std::size_t M = S.rows();
    const std::size_t N = S.cols();
    std::vector<Complex> w(M);
    for (std::size_t m = 0; m < M; ++m) {
        w[m] = range_kernel[m] * delay_rotation(data.sweep().frequency(m), tau);
    }
    double energy = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        Complex acc{};
        for (std::size_t m = 0; m < M; ++m) acc += S(m, n) * w[m];
        energy += std::norm(acc);
    }
    return energy;
}

}  // namespace

AcquisitionDataset subtract_background(const AcquisitionDataset& measured,
                                       const AcquisitionDataset& background) {
    require_same_geometry(measured, background);
    Matrix<Complex> out = measured.samples();
    const auto bg = background.samples().flat();
    auto dst = out.flat();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= bg[i];
    return measured.with_samples(std::move(out));
}

AcquisitionDataset calibrate_phase(const AcquisitionDataset& data, double reference_delay) {
    if (!std::isfinite(reference_delay)) {
        fail_input("calibrate_phase: delay must be finite");
    }
    if (reference_delay == 0.0) return data;
    Matrix<Complex> out = data.samples();
    for (std::size_t m = 0; m < out.rows(); ++m) {
        const Complex rot = delay_rotation(data.sweep().frequency(m), reference_delay);
        for (auto& v : out.row(m)) v *= rot;
    }
    return data.with_samples(std::move(out));
}

double estimate_reference_delay(const AcquisitionDataset& data, double known_range, const DelaySearch& search) {
    if (data.frequency_count() < 2) {
        fail_input("estimate_reference_delay: needs at least two frequencies");
    }
    if (!(known_range > 0.0) || !std::isfinite(known_range)) {
        fail_input("estimate_reference_delay: known range must be positive");
    }
    if (!(search.max_delay > search.min_delay)) {
        fail_input("estimate_reference_delay: empty search window");
    }
    const auto k = data.sweep().wavenumbers();
    std::vector<Complex> kernel(k.size());
    for (std::size_t m = 0; m < k.size(); ++m) {
        const double phase = 2.0 * k[m] * known_range;
        kernel[m] = {std::cos(phase), std::sin(phase)};
    }

    const double step = search.coarse_step > 0.0 ? search.coarse_step : 0.25 / data.sweep().bandwidth();
    const auto steps = static_cast<std::size_t>(std::ceil((search.max_delay - search.min_delay) / step));
    std::vector<double> taus, energy;
    taus.reserve(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        taus.push_back(std::min(search.min_delay + static_cast<double>(i) * step, search.max_delay));
        energy.push_back(focus_energy(data, kernel, taus.back()));
    }

    const auto best = static_cast<std::size_t>(std::max_element(energy.begin(), energy.end()) - energy.begin());
    std::vector<double> sorted = energy;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    if (!(energy[best] > 0.0) || 10.0 * std::log10(energy[best] / median) < kPeakOverMedianDb) {
        fail_numerical("estimate_reference_delay: no reflector peak above the noise floor");
    }

    // Golden-section search for the maximum inside the bracketing grid cells.
    double a = taus[best > 0 ? best - 1 : 0];
    double b = taus[std::min(best + 1, taus.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = focus_energy(data, kernel, c);
    double fd = focus_energy(data, kernel, d);
    while (b - a > search.tolerance) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = focus_energy(data, kernel, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = focus_energy(data, kernel, d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace wsar
