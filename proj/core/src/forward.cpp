#include "wsar/forward.hpp"

#include <cmath>
#include <random>
#include <string>

#include "wsar/error.hpp"
#include "wsar/parallel.hpp"

namespace wsar {

namespace {

double pattern_weight(const Vec3& antenna, const Vec3& target, double d, double exponent) {
    if (exponent == 0.0) return 1.0;
    const double c = (target.y - antenna.y) / d;
    return c > 0.0 ? std::pow(c, exponent) : 0.0;
}

Complex response_at(Complex reflectivity, double d, double k, AmplitudeModel model) {
    const double phase = -2.0 * k * d;
    Complex v = reflectivity * Complex(std::cos(phase), std::sin(phase));
    if (model == AmplitudeModel::spherical_spreading) {
        const double s = 4.0 * pi * d;
        v /= s * s;
    }
    return v;
}

}  // namespace

Complex monostatic_response(const PointScatterer& scatterer, const Vec3& antenna, double k,
                            AmplitudeModel model) {
    const double d = distance(scatterer.position, antenna);
    if (!(d > 0.0)) {
        fail_numerical("monostatic_response: antenna collocated with scatterer");
    }
    return response_at(scatterer.reflectivity, d, k, model);
}

AcquisitionDataset acquire(std::span<const PointScatterer> scatterers, const Trajectory& traj,
                           const FrequencySweep& sweep, const ForwardConfig& cfg) {
    if (cfg.noise_snr_db && !std::isfinite(*cfg.noise_snr_db)) {
        fail_input("forward: noise SNR must be finite");
    }
    if (!std::isfinite(cfg.system_delay)) {
        fail_input("forward: system delay must be finite");
    }
    const std::size_t M = sweep.size();
    const std::size_t N = traj.size();
    const auto k = sweep.wavenumbers();
    const auto pos = traj.positions();

    for (const auto& t : scatterers) {
        if (!is_finite(t.position) || !std::isfinite(t.reflectivity.real()) ||
            !std::isfinite(t.reflectivity.imag())) {
            fail_input("forward: scatterer position and reflectivity must be finite");
        }
        for (const auto& r : pos) {
            if (!(distance(t.position, r) > 0.0)) {
                fail_numerical("forward: antenna collocated with scatterer");
            }
        }
    }

    Matrix<Complex> S(M, N);
    // Each column n is owned by one worker; per-sample sums run over
    // scatterers in input order, so the result does not depend on threads.
    parallel_for(N, cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t n = begin; n < end; ++n) {
            for (const auto& t : scatterers) {
                const double d = distance(t.position, pos[n]);
                const double w = pattern_weight(pos[n], t.position, d, cfg.pattern_exponent);
                if (w == 0.0) continue;
                const Complex rho = t.reflectivity * w;
                for (std::size_t m = 0; m < M; ++m) {
                    S(m, n) += response_at(rho, d, k[m], cfg.amplitude_model);
                }
            }
        }
    });

    if (cfg.system_delay != 0.0) {
        for (std::size_t m = 0; m < M; ++m) {
            const double phase = -2.0 * pi * sweep.frequency(m) * cfg.system_delay;
            const Complex rot(std::cos(phase), std::sin(phase));
            for (auto& v : S.row(m)) v *= rot;
        }
    }

    if (cfg.noise_snr_db) {
        double power = 0.0;
        for (const auto& v : S) power += std::norm(v);
        power /= static_cast<double>(S.size());
        // An empty scene has no reference power; fall back to unit power.
        if (!(power > 0.0)) power = 1.0;
        const double sigma = std::sqrt(power / std::pow(10.0, *cfg.noise_snr_db / 10.0) / 2.0);
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> g(0.0, sigma);
        for (auto& v : S) {
            const double re = g(rng);
            const double im = g(rng);
            v += Complex(re, im);
        }
    }
    return AcquisitionDataset(sweep, traj, std::move(S));
}

AcquisitionDataset background_dataset(std::span<const PointScatterer> clutter, const Trajectory& traj,
                                      const FrequencySweep& sweep, const ForwardConfig& cfg) {
    return acquire(clutter, traj, sweep, cfg);
}

}  // namespace wsar
