// Hot paths: the weak-mode class sweep dominates time-domain runs, the FFT
// round trip dominates frequency-domain runs, and the class-grid burn loop
// dominates spectrum generation.
#include <benchmark/benchmark.h>

#include <limits>

#include "slowlight/burning.hpp"
#include "slowlight/detuning_grid.hpp"
#include "slowlight/fd_engine.hpp"
#include "slowlight/td_engine.hpp"

namespace {

using namespace slowlight;

Medium bench_medium(double width_hz) {
    Medium m;
    m.alpha0 = 850.0;
    m.length = 0.005;
    m.hole = SpectralHole{0.0, hz_to_rad(width_hz), 1.0};
    m.gamma_inh = hz_to_rad(20e9);
    m.t2 = 0.010;
    m.t1 = 10.0;
    return m;
}

Pulse bench_pulse() { return make_gaussian_pulse(5.37e-6, 1.0, 0.0, 1e-7, 450); }

void BM_FrequencyDomainPropagate(benchmark::State& state) {
    const Medium medium = bench_medium(860e3);
    const Pulse input = bench_pulse();
    for (auto _ : state)
        benchmark::DoNotOptimize(propagate_frequency_domain(input, medium));
}
BENCHMARK(BM_FrequencyDomainPropagate);

void BM_TimeDomainWeakSweep(benchmark::State& state) {
    const Medium medium = bench_medium(860e3);
    const Pulse input = bench_pulse();
    TdConfig config;
    config.z_steps = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(propagate_time_domain(input, medium, config));
    state.SetItemsProcessed(state.iterations() * state.range(0) * input.size());
}
BENCHMARK(BM_TimeDomainWeakSweep)->Arg(68)->Arg(136);

void BM_DetuningGridBuild(benchmark::State& state) {
    const SpectralHole hole{0.0, hz_to_rad(860e3), 1.0};
    GridConfig config;
    config.record_length = 45e-6;
    for (auto _ : state) benchmark::DoNotOptimize(build_detuning_grid(hole, config));
}
BENCHMARK(BM_DetuningGridBuild);

void BM_BurnSegment(benchmark::State& state) {
    LevelSystem sys;
    sys.delta_g = hz_to_rad(18e6);
    sys.delta_e = hz_to_rad(7.5e6);
    sys.gamma_hom = hz_to_rad(10e3);
    sys.branching = 0.5;
    sys.t1_opt = 800e-6;
    sys.t_hyperfine = std::numeric_limits<double>::infinity();
    sys.saturation_per_rate = 1.25;
    const ClassGrid grid =
        make_class_grid(hz_to_rad(-5e6), hz_to_rad(5e6), hz_to_rad(2.5e3), sys);
    PumpSequence seq;
    seq.segments.push_back(PumpSegment{0, 0.0, 0.0, hz_to_rad(1e6), 1e-3, 500.0});
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_pump_sequence(sys, grid, seq));
    state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(BM_BurnSegment);

} // namespace

BENCHMARK_MAIN();
