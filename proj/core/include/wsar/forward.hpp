#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wsar/scene.hpp"

namespace wsar {

enum class AmplitudeModel {
    phase_only,           // rho * exp(-j 2 k d)
    spherical_spreading,  // additionally scaled by 1 / (4 pi d)^2
};

struct ForwardConfig {
    AmplitudeModel amplitude_model = AmplitudeModel::phase_only;
    std::optional<double> noise_snr_db;  // relative to mean sample power
    std::uint64_t seed = 1;
    // Extra common delay (s) applied to every sample as exp(-j 2 pi f tau),
    // emulating an uncalibrated feed line. Zero by default.
    double system_delay = 0.0;
    // Optional cos^n antenna taper about +y. Zero disables it.
    double pattern_exponent = 0.0;
    std::size_t threads = 1;
};

/// Echo of one scatterer seen from `antenna` at wavenumber k.
/// Throws ErrorKind::numerical when the antenna sits on the scatterer.
Complex monostatic_response(const PointScatterer& scatterer, const Vec3& antenna, double k,
                            AmplitudeModel model = AmplitudeModel::phase_only);

/// Synthesizes S(m, n) = sum_t response(t, r_n, k_m), then optionally adds
/// complex white Gaussian noise at the configured SNR.
AcquisitionDataset acquire(std::span<const PointScatterer> scatterers, const Trajectory& traj,
                           const FrequencySweep& sweep, const ForwardConfig& cfg = {});

/// Target-free reference acquisition of static clutter. Same contract as acquire().
AcquisitionDataset background_dataset(std::span<const PointScatterer> clutter, const Trajectory& traj,
                                      const FrequencySweep& sweep, const ForwardConfig& cfg = {});

}  // namespace wsar
