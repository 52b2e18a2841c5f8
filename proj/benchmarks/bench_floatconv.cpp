#include <benchmark/benchmark.h>

#include "floatconv/floatconv.hpp"

using namespace floatconv;

namespace {

const ForceCharacteristic spring = ForceCharacteristic::linear(124.55, 0.2);

void BM_WeightCounter(benchmark::State& state) {
    const auto table = ForceCharacteristic::tabulated({{0.0, 0.0}, {0.05, 4.0}, {0.12, 6.0}, {0.2, 25.0}});
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(synthesize_weight_counter(table, 0.02, 10.0, n));
    state.SetComplexityN(n);
}
BENCHMARK(BM_WeightCounter)->RangeMultiplier(4)->Range(128, 8192)->Complexity();

void BM_SpringCounter(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(synthesize_spring_counter(spring, 0.02, CounterElement::spring(10.0, 50.0), n));
    state.SetComplexityN(n);
}
BENCHMARK(BM_SpringCounter)->RangeMultiplier(4)->Range(512, 32768)->Complexity();

void BM_Sweep(benchmark::State& state) {
    const FloatingConverter conv(spring, synthesize_weight_counter(spring, 0.02, 10.0), CounterElement::weight(10.0),
                                 0.01, 0.003);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep(conv, 0.0, 0.2, n));
}
BENCHMARK(BM_Sweep)->Arg(201)->Arg(4001);

void BM_EnergyLedger(benchmark::State& state) {
    const FloatingConverter conv(spring, synthesize_weight_counter(spring, 0.02, 10.0), CounterElement::weight(10.0),
                                 0.01);
    for (auto _ : state) benchmark::DoNotOptimize(energy_ledger(conv, 0.0, 0.2));
}
BENCHMARK(BM_EnergyLedger);

void BM_Grasp(benchmark::State& state) {
    const auto k100 = ForceCharacteristic::linear(100.0, 0.12);
    const GripperModel model{FloatingConverter(k100, synthesize_weight_counter(k100, 0.02, 10.0),
                                               CounterElement::weight(10.0)),
                             0.1, 0.001, true, 5.0, 0.05, true};
    for (auto _ : state) benchmark::DoNotOptimize(simulate_grasp(model, plan_grasp(model, 10.0)));
}
BENCHMARK(BM_Grasp);

void BM_ProfileCsv(benchmark::State& state) {
    const auto p = synthesize_weight_counter(spring, 0.02, 10.0, 4096);
    for (auto _ : state) benchmark::DoNotOptimize(read_profile_csv(profile_to_csv(p), 0.02));
}
BENCHMARK(BM_ProfileCsv);

}  // namespace
BENCHMARK_MAIN();
