#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wsar/error.hpp"
#include "wsar/forward.hpp"
#include "wsar/motion.hpp"

using namespace wsar;

namespace {

std::vector<PointScatterer> random_scene(std::mt19937_64& rng, std::size_t count) {
    std::vector<PointScatterer> out;
    std::uniform_real_distribution<double> x(-0.1, 0.1), y(0.05, 0.3);
    for (std::size_t t = 0; t < count; ++t) {
        out.push_back({{x(rng), y(rng), 0.5 * x(rng)}, oracle::random_complex(rng)});
    }
    return out;
}

double max_rel(const Matrix<Complex>& a, const Matrix<Complex>& b) { return oracle::relative_error(a, b); }

}  // namespace

TEST_CASE("monostatic_response examples") {
    const PointScatterer unit{{0.0, 0.1, 0.0}, {1.0, 0.0}};
    SUBCASE("a full phase cycle returns to 1") {
        const double k = pi / 0.1;  // 2 k d = 2 pi
        const Complex v = monostatic_response(unit, {}, k);
        CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(v.imag()) < 1e-14);
    }
    SUBCASE("phase-only has unit magnitude") {
        const Complex v = monostatic_response(unit, {}, 500.0);
        CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::arg(v) == doctest::Approx(std::arg(std::polar(1.0, -100.0))).epsilon(1e-12));
    }
    SUBCASE("spherical spreading at 10 cm") {
        const Complex v = monostatic_response(unit, {}, 500.0, AmplitudeModel::spherical_spreading);
        // 1 / (4 pi 0.1)^2, evaluated independently.
        CHECK(std::abs(v) == doctest::Approx(0.6332573977646111).epsilon(1e-13));
    }
    SUBCASE("collocation is a numerical error") {
        try {
            monostatic_response(unit, unit.position, 500.0);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::numerical);
        }
    }
}

TEST_CASE("acquire reduces to the kernel and handles empty scenes") {
    const auto sweep = make_sweep(24e9, 4e9, 5);
    const Trajectory traj({{0, 0, 0}, {0.01, 0, 0}, {0.02, 0.001, 0}});
    const auto empty = acquire({}, traj, sweep);
    for (const auto& v : empty.samples()) CHECK(v == Complex{});

    const PointScatterer t{{0.01, 0.12, 0.0}, {0.3, -0.2}};
    const auto one = acquire(std::span(&t, 1), Trajectory({{0, 0, 0}}), make_sweep(24e9, 0.0, 1));
    REQUIRE(one.samples().rows() == 1);
    REQUIRE(one.samples().cols() == 1);
    CHECK(one.samples()(0, 0) == monostatic_response(t, {}, wavenumber(24e9)));

    std::vector<PointScatterer> collide{{traj[1], 1.0}};
    CHECK_THROWS_AS(acquire(collide, traj, sweep), Error);
}

TEST_CASE("superposition, scaling and unit magnitude over random scenes") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> small(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        const auto sweep = make_sweep(24e9, 4e9, small(rng));
        SwingSpec spec;
        spec.point_count = small(rng);
        spec.jitter_std = 1e-3;
        spec.seed = static_cast<std::uint64_t>(trial);
        const auto traj = arm_swing(spec);
        const auto A = random_scene(rng, small(rng));
        const auto B = random_scene(rng, small(rng));
        std::vector<PointScatterer> AB = A;
        AB.insert(AB.end(), B.begin(), B.end());

        const auto sa = acquire(A, traj, sweep).samples();
        const auto sb = acquire(B, traj, sweep).samples();
        const auto sab = acquire(AB, traj, sweep).samples();
        Matrix<Complex> sum = sa;
        for (std::size_t i = 0; i < sum.size(); ++i) sum.data()[i] += sb.data()[i];
        CHECK(max_rel(sab, sum) < 1e-12);

        const Complex alpha = oracle::random_complex(rng);
        std::vector<PointScatterer> scaled = A;
        for (auto& p : scaled) p.reflectivity *= alpha;
        Matrix<Complex> expect = sa;
        for (auto& v : expect) v *= alpha;
        CHECK(max_rel(acquire(scaled, traj, sweep).samples(), expect) < 1e-12);

        const PointScatterer unit{A[0].position, {1.0, 0.0}};
        const auto single = acquire(std::span(&unit, 1), traj, sweep);
        for (const auto& v : single.samples()) {
            CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("acquire is bit-identical for any thread count") {
    std::mt19937_64 rng(5);
    const auto scene = random_scene(rng, 40);
    const auto sweep = make_sweep(24e9, 4e9, 33);
    SwingSpec spec;
    spec.point_count = 37;
    const auto traj = arm_swing(spec);
    ForwardConfig one, many;
    many.threads = 7;
    CHECK(acquire(scene, traj, sweep, one).samples() == acquire(scene, traj, sweep, many).samples());
}

TEST_CASE("noise lands at the requested SNR and is seeded") {
    std::mt19937_64 rng(9);
    const auto scene = random_scene(rng, 3);
    const auto sweep = make_sweep(24e9, 4e9, 201);
    SwingSpec spec;
    spec.point_count = 61;
    const auto traj = arm_swing(spec);
    const auto clean = acquire(scene, traj, sweep).samples();

    for (double snr : {-5.0, 10.0, 30.0}) {
        ForwardConfig cfg;
        cfg.noise_snr_db = snr;
        cfg.seed = 123;
        const auto noisy = acquire(scene, traj, sweep, cfg).samples();
        double ps = 0.0, pn = 0.0;
        for (std::size_t i = 0; i < clean.size(); ++i) {
            ps += std::norm(clean.data()[i]);
            pn += std::norm(noisy.data()[i] - clean.data()[i]);
        }
        CHECK(std::abs(10.0 * std::log10(ps / pn) - snr) < 0.5);
        CHECK(acquire(scene, traj, sweep, cfg).samples() == noisy);
    }
}

TEST_CASE("spherical spreading scales by 1/(4 pi d)^2") {
    const PointScatterer t{{0.02, 0.15, 0.0}, {1.0, 0.0}};
    const auto sweep = make_sweep(24e9, 4e9, 9);
    const Trajectory traj({{0, 0, 0}, {0.05, 0, 0}});
    ForwardConfig cfg;
    cfg.amplitude_model = AmplitudeModel::spherical_spreading;
    const auto s = acquire(std::span(&t, 1), traj, sweep, cfg).samples();
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const double d = distance(t.position, traj[n]);
        for (std::size_t m = 0; m < sweep.size(); ++m) {
            CHECK(std::abs(s(m, n)) == doctest::Approx(1.0 / std::pow(4.0 * pi * d, 2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("background_dataset") {
    std::mt19937_64 rng(1);
    const auto clutter = random_scene(rng, 4);
    const auto sweep = make_sweep(24e9, 4e9, 11);
    const auto traj = arm_swing({});
    CHECK(background_dataset(clutter, traj, sweep).samples() == acquire(clutter, traj, sweep).samples());
    CHECK(background_dataset(clutter, traj, sweep).samples() == background_dataset(clutter, traj, sweep).samples());
    const auto empty = background_dataset({}, traj, sweep);
    for (const auto& v : empty.samples()) CHECK(v == Complex{});
}

TEST_CASE("system delay multiplies by exp(-j 2 pi f tau)") {
    const PointScatterer t{{0.0, 0.1, 0.0}, {1.0, 0.0}};
    const auto sweep = make_sweep(24e9, 4e9, 5);
    const Trajectory traj({{0, 0, 0}});
    ForwardConfig cfg;
    cfg.system_delay = 0.37e-9;
    const auto clean = acquire(std::span(&t, 1), traj, sweep).samples();
    const auto delayed = acquire(std::span(&t, 1), traj, sweep, cfg).samples();
    for (std::size_t m = 0; m < sweep.size(); ++m) {
        const Complex expect = clean(m, 0) * std::polar(1.0, -2.0 * pi * sweep.frequency(m) * cfg.system_delay);
        CHECK(std::abs(delayed(m, 0) - expect) < 1e-12);
    }
}
