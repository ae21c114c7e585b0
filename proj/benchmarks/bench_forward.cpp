#include <benchmark/benchmark.h>

#include "wsar/forward.hpp"
#include "wsar/motion.hpp"

namespace {

// Args: frequency count.
void BM_AcquirePlate(benchmark::State& state) {
    const auto sweep = wsar::make_sweep(24e9, 4e9, static_cast<std::size_t>(state.range(0)));
    const auto plate = wsar::discretize_plate({0.0, 0.10, 0.0}, 0.10, 0.10, wsar::default_plate_spacing(sweep), 1.0);
    const auto traj = wsar::arm_swing({});
    for (auto _ : state) {
        auto d = wsar::acquire(plate, traj, sweep);
        benchmark::DoNotOptimize(d.samples().data());
    }
    state.counters["scatterers"] = static_cast<double>(plate.size());
}
BENCHMARK(BM_AcquirePlate)->Arg(201)->Arg(801)->Unit(benchmark::kMillisecond);

}  // namespace
