#include <doctest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "wsar/dataset_io.hpp"
#include "wsar/error.hpp"
#include "wsar/motion.hpp"

using namespace wsar;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("wsar_io_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

AcquisitionDataset random_dataset(std::mt19937_64& rng, std::size_t M, std::size_t N) {
    SwingSpec spec;
    spec.point_count = N;
    spec.jitter_std = 1e-3;
    spec.seed = rng();
    Matrix<Complex> S(M, N);
    std::uniform_real_distribution<double> exp(-300, 300);
    for (auto& v : S) v = oracle::random_complex(rng) * std::pow(10.0, exp(rng) / 10.0);
    return AcquisitionDataset(make_sweep(24e9, 4e9, M), arm_swing(spec), std::move(S));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("dataset write/read round trip is bit-exact") {
    const auto dir = scratch("roundtrip");
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random_dataset(rng, 1 + trial * 7, 1 + trial * 3);
        DatasetMetadata meta;
        meta.role = "background";
        meta.seed = 99;
        meta.provenance = {{"k", "v"}};
        write_dataset(dir / "d.json", d, meta);
        const auto back = read_dataset(dir / "d.json");
        CHECK(back.data.samples() == d.samples());
        CHECK(back.data.sweep() == d.sweep());
        CHECK(back.data.trajectory() == d.trajectory());
        CHECK(back.meta.role == "background");
        CHECK(back.meta.seed == std::optional<std::uint64_t>(99));
        CHECK(back.meta.provenance.at("k") == "v");
    }
}

TEST_CASE("sample file is little-endian frequency-major") {
    const auto dir = scratch("layout");
    Matrix<Complex> S(2, 3);
    S(0, 0) = {1.0, -1.0};
    S(0, 1) = {2.0, 0.0};
    S(1, 0) = {0.5, 0.25};
    const AcquisitionDataset d(make_sweep(24e9, 4e9, 2), Trajectory({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}), S);
    write_dataset(dir / "x.json", d);
    const std::string bytes = slurp(dir / "x.bin");
    REQUIRE(bytes.size() == 2 * 3 * 16);
    auto read_f64 = [&](std::size_t offset) {
        std::uint64_t bits = 0;
        for (int b = 7; b >= 0; --b) bits = (bits << 8) | static_cast<unsigned char>(bytes[offset + b]);
        return std::bit_cast<double>(bits);
    };
    CHECK(read_f64(0) == 1.0);
    CHECK(read_f64(8) == -1.0);
    CHECK(read_f64(16) == 2.0);
    CHECK(read_f64(48) == 0.5);  // (m=1, n=0)
    CHECK(read_f64(56) == 0.25);
    // 1.0 as little-endian float64: 00 00 00 00 00 00 F0 3F
    CHECK(static_cast<unsigned char>(bytes[7]) == 0x3F);
    CHECK(static_cast<unsigned char>(bytes[6]) == 0xF0);
}

TEST_CASE("complex64 storage reads back at float precision") {
    const auto dir = scratch("c64");
    std::mt19937_64 rng(2);
    const auto d = random_dataset(rng, 5, 4);
    DatasetMetadata meta;
    meta.sample_type = SampleType::complex64;
    write_dataset(dir / "s.json", d, meta);
    CHECK(fs::file_size(dir / "s.bin") == 5 * 4 * 8);
    const auto back = read_dataset(dir / "s.json");
    CHECK(back.meta.sample_type == SampleType::complex64);
    for (std::size_t i = 0; i < d.samples().size(); ++i) {
        const Complex a = d.samples().data()[i];
        const Complex b = back.data.samples().data()[i];
        CHECK(b.real() == static_cast<double>(static_cast<float>(a.real())));
        CHECK(b.imag() == static_cast<double>(static_cast<float>(a.imag())));
    }
}

TEST_CASE("writes are deterministic") {
    const auto dir = scratch("determinism");
    std::mt19937_64 rng(3);
    const auto d = random_dataset(rng, 9, 8);
    write_dataset(dir / "a.json", d);
    write_dataset(dir / "b.json", d);
    CHECK(slurp(dir / "a.bin") == slurp(dir / "b.bin"));
    // Headers differ only in the sample file name.
    auto ha = slurp(dir / "a.json"), hb = slurp(dir / "b.json");
    ha.replace(ha.find("a.bin"), 5, "b.bin");
    CHECK(ha == hb);
}

TEST_CASE("corrupt inputs are rejected") {
    const auto dir = scratch("corrupt");
    std::mt19937_64 rng(4);
    const auto d = random_dataset(rng, 4, 3);
    write_dataset(dir / "d.json", d);

    CHECK_THROWS_AS(read_dataset(dir / "missing.json"), Error);

    fs::resize_file(dir / "d.bin", 10);
    CHECK_THROWS_AS(read_dataset(dir / "d.json"), Error);

    std::ofstream(dir / "bad.json") << "{ not json";
    CHECK_THROWS_AS(read_dataset(dir / "bad.json"), Error);

    std::ofstream(dir / "other.json") << R"({"format": "something-else", "version": 1})";
    CHECK_THROWS_AS(read_dataset(dir / "other.json"), Error);
}

TEST_CASE("trajectory CSV round trip") {
    const auto dir = scratch("traj");
    SwingSpec spec;
    spec.jitter_std = 1.3e-3;
    spec.drift_rate = 0.02;
    const auto t = arm_swing(spec);
    write_trajectory_csv(dir / "t.csv", t);
    CHECK(read_trajectory_csv(dir / "t.csv") == t);
    CHECK(slurp(dir / "t.csv").rfind("n,x_m,y_m,z_m\n", 0) == 0);
    std::ofstream(dir / "bad.csv") << "n,x_m,y_m,z_m\n0,1,2\n";
    CHECK_THROWS_AS(read_trajectory_csv(dir / "bad.csv"), Error);
}
