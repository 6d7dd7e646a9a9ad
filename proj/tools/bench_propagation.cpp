// Compares the serial whole-state engine with the per-bin OpenMP engine on a
// fully occupied N=8, M=3 device (512 time bins).

#include <benchmark/benchmark.h>

#include <random>

#include "qpermute/device.hpp"
#include "qpermute/oracle.hpp"

namespace {

using namespace qpermute;

struct Fixture {
  SwitchNetwork net = SwitchNetwork::build(8);
  SchedulerParams params{8, 3, 40, 40.0 * 512, 10, 5, 0};
  PulseSchedule schedule;
  PhotonState input{8, 512};
  std::vector<PolarizationOperator> ops;

  Fixture() {
    std::mt19937_64 rng(12345);
    std::set<std::int64_t> bins;
    for (std::int64_t bin = 0; bin < 512; ++bin) {
      bins.insert(bin);
    }
    schedule = buildSchedule(params, net, bins);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::int64_t bin = 0; bin < 512; ++bin) {
      input.set(bin, 0, {{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}});
    }
    input = input.normalized();
    for (int i = 0; i < 8; ++i) {
      ops.push_back(haarRandomUnitary(rng));
    }
  }
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

void BM_DeviceSerial(benchmark::State& state) {
  Fixture& f = fixture();
  const auto provider = fixedOperators(f.ops);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        runDeviceSerial(f.input, f.net, f.schedule, provider, f.params.passes));
  }
}

void BM_DeviceParallel(benchmark::State& state) {
  Fixture& f = fixture();
  const auto provider = fixedOperators(f.ops);
  for (auto _ : state) {
    benchmark::DoNotOptimize(runDeviceParallel(f.input, f.net, f.schedule,
                                               provider, f.params.passes));
  }
}

BENCHMARK(BM_DeviceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeviceParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
