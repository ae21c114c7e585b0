#pragma once

#include "wsar/scene.hpp"

namespace wsar {

/// measured - background, element-wise. Both datasets must share the same
/// sweep (1e-9 relative) and trajectory (1e-9 m); otherwise ErrorKind::mismatch.
AcquisitionDataset subtract_background(const AcquisitionDataset& measured,
                                       const AcquisitionDataset& background);

/// Removes a common system delay: S(m, n) *= exp(+j 2 pi f_m tau).
AcquisitionDataset calibrate_phase(const AcquisitionDataset& data, double reference_delay);

struct DelaySearch {
    double min_delay = -2e-9;  // s
    double max_delay = 2e-9;   // s
    // Coarse grid step; zero picks a quarter of the inverse bandwidth.
    double coarse_step = 0.0;
    double tolerance = 1e-14;  // s, golden-section stopping width
};

/// Heuristic estimate of the common delay, given one dominant reflector at
/// `known_range` from every antenna position.
///
/// For each candidate tau the data are calibrated and focused at
/// known_range; the focus energy sum_n |sum_m S(m,n) e^{j2pi f_m tau} e^{j2k_m R}|^2
/// is maximized by a coarse grid scan followed by golden-section refinement
/// around the best grid point. Throws ErrorKind::numerical when the scan
/// shows no peak at least 6 dB above its median (no usable reflector).
double estimate_reference_delay(const AcquisitionDataset& data, double known_range,
                                const DelaySearch& search = {});

}  // namespace wsar
