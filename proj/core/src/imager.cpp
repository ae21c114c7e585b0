#include "wsar/imager.hpp"

#include <algorithm>
#include <experimental/simd>
#include <cmath>
#include <string>
#include <vector>

#include "wsar/error.hpp"
#include "wsar/parallel.hpp"

namespace wsar {

namespace {

namespace stdx = std::experimental;

// Phasor recurrences are re-seeded with an exact sincos this often.
constexpr std::size_t kAnchorInterval = 256;
constexpr double kPsfThresholdDb = -6.0;

std::vector<double> hann(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n < 3) return w;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * pi * static_cast<double>(i + 1) / static_cast<double>(n + 1));
    }
    return w;
}

// Position-major copy of S (optionally tapered) as interleaved re/im pairs.
std::vector<double> position_major(const AcquisitionDataset& data, Taper taper) {
    const auto& S = data.samples();
    const std::size_t M = S.rows();
    const std::size_t N = S.cols();
    const auto wm = taper == Taper::hann ? hann(M) : std::vector<double>(M, 1.0);
    const auto wn = taper == Taper::hann ? hann(N) : std::vector<double>(N, 1.0);
    std::vector<double> out(2 * M * N);
    for (std::size_t n = 0; n < N; ++n) {
        for (std::size_t m = 0; m < M; ++m) {
            const Complex v = taper == Taper::none ? S(m, n) : S(m, n) * (wm[m] * wn[n]);
            out[2 * (n * M + m)] = v.real();
            out[2 * (n * M + m) + 1] = v.imag();
        }
    }
    return out;
}

[[noreturn]] void collocated(std::size_t i, std::size_t j, std::size_t n) {
    fail_numerical("backproject: pixel (" + std::to_string(i) + ", " + std::to_string(j) +
                   ") coincides with antenna position " + std::to_string(n));
}

// Pixels are evaluated in fixed batches of consecutive linear indices so
// the recurrences of neighbouring pixels interleave. Every pixel still sees
// the same sequence of IEEE operations, whatever batch or thread it lands in.
constexpr std::size_t kBatch = 8;

using Lanes = stdx::fixed_size_simd<double, kBatch>;

Lanes lane_cos(const Lanes& x) {
    Lanes out;
    for (std::size_t b = 0; b < kBatch; ++b) out[b] = std::cos(x[b]);
    return out;
}

Lanes lane_sin(const Lanes& x) {
    Lanes out;
    for (std::size_t b = 0; b < kBatch; ++b) out[b] = std::sin(x[b]);
    return out;
}

struct Kernel {
    std::span<const double> k;
    std::span<const Vec3> positions;
    const std::vector<double>& samples;  // position-major re/im
    bool uniform;
    double dk;

    void batch(const Vec3* r, std::size_t count, const std::size_t* idx, std::size_t P1, Complex* out) const {
        const std::size_t M = k.size();
        Lanes rx, ry, rz;
        for (std::size_t b = 0; b < kBatch; ++b) {
            const Vec3& p = r[b < count ? b : 0];
            rx[b] = p.x;
            ry[b] = p.y;
            rz[b] = p.z;
        }
        Lanes acc_re = 0.0;
        Lanes acc_im = 0.0;
        for (std::size_t n = 0; n < positions.size(); ++n) {
            const Lanes dx = rx - positions[n].x;
            const Lanes dy = ry - positions[n].y;
            const Lanes dz = rz - positions[n].z;
            const Lanes d = stdx::sqrt(dx * dx + dy * dy + dz * dz);
            for (std::size_t b = 0; b < count; ++b) {
                if (!(d[b] > 0.0)) collocated(idx[b] % P1, idx[b] / P1, n);
            }
            const double* s = samples.data() + 2 * n * M;
            if (uniform) {
                const Lanes rot_re = lane_cos(2.0 * dk * d);
                const Lanes rot_im = lane_sin(2.0 * dk * d);
                for (std::size_t m0 = 0; m0 < M; m0 += kAnchorInterval) {
                    const std::size_t m1 = std::min(M, m0 + kAnchorInterval);
                    Lanes p_re = lane_cos(2.0 * k[m0] * d);
                    Lanes p_im = lane_sin(2.0 * k[m0] * d);
                    for (std::size_t m = m0; m < m1; ++m) {
                        const double sr = s[2 * m];
                        const double si = s[2 * m + 1];
                        acc_re += sr * p_re - si * p_im;
                        acc_im += sr * p_im + si * p_re;
                        const Lanes t = p_re * rot_re - p_im * rot_im;
                        p_im = p_re * rot_im + p_im * rot_re;
                        p_re = t;
                    }
                }
            } else {
                for (std::size_t m = 0; m < M; ++m) {
                    const double sr = s[2 * m];
                    const double si = s[2 * m + 1];
                    const Lanes phase = 2.0 * k[m] * d;
                    const Lanes cr = lane_cos(phase);
                    const Lanes ci = lane_sin(phase);
                    acc_re += sr * cr - si * ci;
                    acc_im += sr * ci + si * cr;
                }
            }
        }
        for (std::size_t b = 0; b < count; ++b) out[b] = {acc_re[b], acc_im[b]};
    }
};

std::pair<std::size_t, std::size_t> argmax(const ReflectivityImage& image, double& peak) {
    const auto& v = image.values();
    std::size_t best = 0;
    peak = -1.0;
    const auto flat = v.flat();
    for (std::size_t idx = 0; idx < flat.size(); ++idx) {
        const double a = std::abs(flat[idx]);
        if (a > peak) {
            peak = a;
            best = idx;
        }
    }
    if (!(peak > 0.0)) {
        fail_numerical("empty image: every pixel is zero");
    }
    return {best % v.cols(), best / v.cols()};
}

// Magnitude cut through (i, j) along one axis, in dB relative to `peak`.
std::vector<double> cut_db(const ReflectivityImage& image, std::size_t i, std::size_t j, bool along_axis1,
                           double peak) {
    const auto& v = image.values();
    const std::size_t len = along_axis1 ? v.cols() : v.rows();
    std::vector<double> out(len);
    for (std::size_t t = 0; t < len; ++t) {
        const double a = std::abs(along_axis1 ? v(j, t) : v(t, i));
        out[t] = a > 0.0 ? 20.0 * std::log10(a / peak) : db_floor;
    }
    return out;
}

// Distance in samples from the peak to the interpolated threshold crossing.
double crossing(const std::vector<double>& cut, std::size_t peak, int dir, double threshold) {
    std::size_t t = peak;
    while (true) {
        const bool at_edge = dir < 0 ? t == 0 : t + 1 == cut.size();
        if (at_edge) {
            fail_numerical("psf: main lobe reaches the grid boundary (grid too small)");
        }
        const std::size_t next = dir < 0 ? t - 1 : t + 1;
        if (cut[next] < threshold) {
            const double frac = (cut[t] - threshold) / (cut[t] - cut[next]);
            return static_cast<double>(dir < 0 ? peak - t : t - peak) + frac;
        }
        t = next;
    }
}

double sidelobe(const std::vector<double>& cut, std::size_t peak) {
    double best = db_floor;
    std::size_t lo = peak;
    while (lo > 0 && cut[lo - 1] <= cut[lo]) --lo;
    for (std::size_t t = 0; t < lo; ++t) best = std::max(best, cut[t]);
    std::size_t hi = peak;
    while (hi + 1 < cut.size() && cut[hi + 1] <= cut[hi]) ++hi;
    for (std::size_t t = hi + 1; t < cut.size(); ++t) best = std::max(best, cut[t]);
    return best;
}

}  // namespace

ReflectivityImage backproject(const AcquisitionDataset& data, const ImageGrid& grid, const ImagingOptions& options) {
    const auto samples = position_major(data, options.taper);
    const auto& sweep = data.sweep();
    const std::size_t M = sweep.size();
    const double dk = M > 1 ? (sweep.wavenumbers().back() - sweep.wavenumbers().front()) / static_cast<double>(M - 1)
                            : 0.0;
    const Kernel kernel{sweep.wavenumbers(), data.trajectory().positions(), samples, sweep.is_uniform(), dk};

    const std::size_t P1 = grid.pixels1();
    const std::size_t P2 = grid.pixels2();
    const std::size_t total = P1 * P2;
    Matrix<Complex> out(P2, P1);
    Complex* dst = out.data();
    const std::size_t batches = (total + kBatch - 1) / kBatch;
    parallel_for(batches, options.threads, [&](std::size_t begin, std::size_t end) {
        Vec3 r[kBatch];
        std::size_t idx[kBatch];
        for (std::size_t bi = begin; bi < end; ++bi) {
            const std::size_t first = bi * kBatch;
            const std::size_t count = std::min(kBatch, total - first);
            for (std::size_t b = 0; b < count; ++b) {
                idx[b] = first + b;
                r[b] = grid.pixel_center(idx[b] % P1, idx[b] / P1);
            }
            kernel.batch(r, count, idx, P1, dst + first);
        }
    });
    return ReflectivityImage(grid, std::move(out));
}

Matrix<double> to_db(const ReflectivityImage& image) {
    double peak = 0.0;
    argmax(image, peak);
    const auto& v = image.values();
    Matrix<double> out(v.rows(), v.cols());
    for (std::size_t r = 0; r < v.rows(); ++r) {
        for (std::size_t c = 0; c < v.cols(); ++c) {
            const double a = std::abs(v(r, c));
            out(r, c) = a > 0.0 ? std::max(db_floor, 20.0 * std::log10(a / peak)) : db_floor;
        }
    }
    return out;
}

DetectionReport detect_peak(const ReflectivityImage& image, double threshold_db) {
    if (!(threshold_db < 0.0)) {
        fail_input("detect_peak: threshold must be negative");
    }
    double peak = 0.0;
    const auto [i, j] = argmax(image, peak);
    const auto& v = image.values();
    const double floor_mag = peak * std::pow(10.0, threshold_db / 20.0);

    std::size_t lo1 = i, hi1 = i;
    while (lo1 > 0 && std::abs(v(j, lo1 - 1)) >= floor_mag) --lo1;
    while (hi1 + 1 < v.cols() && std::abs(v(j, hi1 + 1)) >= floor_mag) ++hi1;
    std::size_t lo2 = j, hi2 = j;
    while (lo2 > 0 && std::abs(v(lo2 - 1, i)) >= floor_mag) --lo2;
    while (hi2 + 1 < v.rows() && std::abs(v(hi2 + 1, i)) >= floor_mag) ++hi2;

    DetectionReport r;
    r.peak_position = image.grid().pixel_center(i, j);
    r.peak_index1 = i;
    r.peak_index2 = j;
    r.peak_magnitude = peak;
    r.peak_magnitude_db = 0.0;
    r.extent_x = static_cast<double>(hi1 - lo1 + 1) * image.grid().pitch1();
    r.extent_axis2 = static_cast<double>(hi2 - lo2 + 1) * image.grid().pitch2();
    r.threshold_db = threshold_db;
    return r;
}

PsfMetrics psf_metrics(const ReflectivityImage& image) {
    double peak = 0.0;
    const auto [i, j] = argmax(image, peak);
    const auto& grid = image.grid();
    if (i == 0 || j == 0 || i + 1 == grid.pixels1() || j + 1 == grid.pixels2()) {
        fail_numerical("psf: peak lies on the grid boundary (grid too small)");
    }
    const auto cross = cut_db(image, i, j, true, peak);
    const auto range = cut_db(image, i, j, false, peak);

    PsfMetrics m;
    m.crossrange_fwhm = (crossing(cross, i, -1, kPsfThresholdDb) + crossing(cross, i, +1, kPsfThresholdDb)) *
                        grid.pitch1();
    m.range_fwhm = (crossing(range, j, -1, kPsfThresholdDb) + crossing(range, j, +1, kPsfThresholdDb)) *
                   grid.pitch2();
    m.peak_sidelobe_db = std::max(sidelobe(cross, i), sidelobe(range, j));
    return m;
}

PsfMetrics psf_metrics(const AcquisitionDataset& point_target, const ImageGrid& grid, const ImagingOptions& options) {
    return psf_metrics(backproject(point_target, grid, options));
}

}  // namespace wsar
