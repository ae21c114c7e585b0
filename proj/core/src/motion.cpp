#include "wsar/motion.hpp"

#include <cmath>
#include <deque>
#include <random>

#include "wsar/error.hpp"

namespace wsar {

namespace {

// Extent comparisons tolerate accumulated rounding in the position grid.
constexpr double kExtentSlack = 1e-12;

// Independent stream for drift so that toggling drift leaves jitter untouched.
constexpr std::uint64_t kDriftStreamSalt = 0x9E3779B97F4A7C15ull;

}  // namespace

void validate(const SwingSpec& spec) {
    if (!(spec.aperture_length > 0.0) || !std::isfinite(spec.aperture_length)) {
        fail_input("swing: aperture_length must be positive");
    }
    if (spec.point_count < 1) {
        fail_input("swing: point_count must be at least 1");
    }
    if (!(spec.jitter_std >= 0.0) || !std::isfinite(spec.jitter_std)) {
        fail_input("swing: jitter_std must be non-negative");
    }
    if (!(spec.drift_rate >= 0.0) || !std::isfinite(spec.drift_rate)) {
        fail_input("swing: drift_rate must be non-negative");
    }
    if (!std::isfinite(spec.standoff)) {
        fail_input("swing: standoff must be finite");
    }
}

Trajectory arm_swing(const SwingSpec& spec) {
    validate(spec);
    const std::size_t n = spec.point_count;
    const double half = 0.5 * spec.aperture_length;
    const double step = n > 1 ? spec.aperture_length / static_cast<double>(n - 1) : 0.0;

    std::mt19937_64 jitter_rng(spec.seed);
    std::mt19937_64 drift_rng(spec.seed ^ kDriftStreamSalt);
    std::normal_distribution<double> jitter(0.0, 1.0);
    std::normal_distribution<double> direction(0.0, 1.0);

    std::vector<Vec3> out;
    out.reserve(n);
    Vec3 bias{};
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 p{};
        if (n > 1) {
            p.x = -half + spec.aperture_length * (static_cast<double>(i) / static_cast<double>(n - 1));
        }
        if (i > 0 && spec.drift_rate > 0.0) {
            Vec3 d{direction(drift_rng), direction(drift_rng), direction(drift_rng)};
            const double len = norm(d);
            if (len > 0.0) {
                bias += d * (spec.drift_rate * step / len);
            }
        }
        if (spec.jitter_std > 0.0) {
            p += Vec3{jitter(jitter_rng), jitter(jitter_rng), jitter(jitter_rng)} * spec.jitter_std;
        }
        out.push_back(p + bias);
    }
    return Trajectory(std::move(out));
}

std::pair<std::size_t, std::size_t> crop_window(std::span<const Vec3> positions, double max_extent) {
    if (positions.empty()) {
        fail_input("crop_aperture: empty trajectory");
    }
    if (!(max_extent > 0.0)) {
        fail_input("crop_aperture: max_extent must be positive");
    }
    // Sliding window with monotone deques tracking the window min/max of x.
    std::deque<std::size_t> lo, hi;
    std::size_t best_first = 0, best_len = 0, first = 0;
    for (std::size_t last = 0; last < positions.size(); ++last) {
        const double x = positions[last].x;
        while (!lo.empty() && positions[lo.back()].x >= x) lo.pop_back();
        lo.push_back(last);
        while (!hi.empty() && positions[hi.back()].x <= x) hi.pop_back();
        hi.push_back(last);
        while (positions[hi.front()].x - positions[lo.front()].x > max_extent + kExtentSlack) {
            ++first;
            if (lo.front() < first) lo.pop_front();
            if (hi.front() < first) hi.pop_front();
        }
        const std::size_t len = last - first + 1;
        if (len > best_len) {
            best_len = len;
            best_first = first;
        }
    }
    return {best_first, best_first + best_len};
}

Trajectory crop_aperture(const Trajectory& traj, double max_extent) {
    const auto [first, last] = crop_window(traj.positions(), max_extent);
    const auto pos = traj.positions();
    return Trajectory(std::vector<Vec3>(pos.begin() + static_cast<std::ptrdiff_t>(first),
                                        pos.begin() + static_cast<std::ptrdiff_t>(last)));
}

}  // namespace wsar
