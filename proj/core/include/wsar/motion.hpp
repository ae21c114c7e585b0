#pragma once

#include <cstdint>

#include "wsar/scene.hpp"

namespace wsar {

// Hand-held swing along x. Nominal positions are uniform over
// [-L/2, +L/2] at y = z = 0; jitter and tracker drift are layered on top.
struct SwingSpec {
    double aperture_length = 0.12;  // m
    std::size_t point_count = 61;
    double standoff = 0.10;         // m, nominal range from the swing line to the scene
    double jitter_std = 0.0;        // m, per axis
    double drift_rate = 0.0;        // m of bias per m travelled
    std::uint64_t seed = 1;
};

void validate(const SwingSpec& spec);

/// Simulated arm swing. Deterministic for a given spec (including seed).
///
/// Each point receives independent N(0, jitter_std) offsets on all three
/// axes. Tracker drift is a seeded random walk: every step adds a bias
/// increment of length drift_rate * step_length in a random direction, so
/// the bias magnitude never exceeds drift_rate times the path travelled.
Trajectory arm_swing(const SwingSpec& spec);

/// Longest contiguous run of positions whose x-extent is at most
/// `max_extent`; the earliest such run wins ties.
Trajectory crop_aperture(const Trajectory& traj, double max_extent);

/// Same as crop_aperture but returns [first, last) indices into `traj`.
std::pair<std::size_t, std::size_t> crop_window(std::span<const Vec3> positions, double max_extent);

}  // namespace wsar
