#include <benchmark/benchmark.h>

#include "wsar/forward.hpp"
#include "wsar/imager.hpp"
#include "wsar/motion.hpp"

namespace {

wsar::AcquisitionDataset point_target(std::size_t frequencies, std::size_t positions) {
    wsar::SwingSpec swing;
    swing.point_count = positions;
    const wsar::PointScatterer p{{0.0, 0.10, 0.0}, 1.0};
    return wsar::acquire(std::span(&p, 1), wsar::arm_swing(swing), wsar::make_sweep(24e9, 4e9, frequencies));
}

// Args: grid side, worker count.
void BM_Backproject(benchmark::State& state) {
    const auto side = static_cast<std::size_t>(state.range(0));
    const auto data = point_target(201, 61);
    const auto grid = wsar::ImageGrid::xy(-0.15, 0.15, 0.02, 0.20, side, side);
    wsar::ImagingOptions opt;
    opt.threads = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        auto img = wsar::backproject(data, grid, opt);
        benchmark::DoNotOptimize(img.values().data());
    }
    const double terms = static_cast<double>(side * side * data.frequency_count() * data.position_count());
    state.counters["terms/s"] = benchmark::Counter(terms, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_Backproject)
    ->ArgsProduct({{64, 256, 512}, {1, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

// Irregular frequency list: exact phase per term instead of the recurrence.
void BM_BackprojectIrregularSweep(benchmark::State& state) {
    auto data = point_target(201, 61);
    std::vector<double> f(data.sweep().frequencies().begin(), data.sweep().frequencies().end());
    for (std::size_t m = 1; m < f.size(); m += 2) f[m] += 1e6;
    const wsar::AcquisitionDataset irregular(wsar::FrequencySweep(f), data.trajectory(), data.samples());
    const auto grid = wsar::ImageGrid::xy(-0.15, 0.15, 0.02, 0.20, 64, 64);
    for (auto _ : state) {
        auto img = wsar::backproject(irregular, grid);
        benchmark::DoNotOptimize(img.values().data());
    }
}
BENCHMARK(BM_BackprojectIrregularSweep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
