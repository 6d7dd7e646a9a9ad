#include <doctest.h>

#include <random>

#include "qpermute/device.hpp"
#include "qpermute/errors.hpp"
#include "qpermute/oracle.hpp"
#include "qpermute/scheduler.hpp"
#include "qpermute/switch_network.hpp"

using namespace qpermute;

namespace {

// Schedule covering a single bin on a single pass, from explicit settings.
PulseSchedule singleBinSchedule(const SwitchNetwork& net,
                                const std::vector<SwitchSetting>& mux,
                                const std::vector<SwitchSetting>& demux) {
  PulseSchedule schedule;
  schedule.params = {net.nModes(), 1, 40,
                     static_cast<double>(net.nModes()) * 40, 10, 5, 0};
  for (const auto& setting : mux) {
    schedule.logical[{setting.id, 0, 0}] = setting.on;
  }
  for (const auto& setting : demux) {
    schedule.logical[{setting.id, 0, 0}] = setting.on;
  }
  return schedule;
}

}  // namespace

TEST_CASE("tree topology matches the mode-pair formula") {
  const SwitchNetwork net = SwitchNetwork::build(8);
  const ModePair pair = net.modes({Side::Mux, 1, 1});
  CHECK(pair.a == 4);
  CHECK(pair.b == 6);
  CHECK(net.switchCount() == 14);

  const SwitchNetwork small = SwitchNetwork::build(2);
  CHECK(small.switchCount() == 2);
  CHECK(small.switches(Side::Mux).size() == 1);
  CHECK(small.switches(Side::Demux).size() == 1);
  CHECK(small.modes({Side::Mux, 0, 0}).a == 0);
  CHECK(small.modes({Side::Mux, 0, 0}).b == 1);
}

TEST_CASE("non-power-of-two sizes are rejected") {
  CHECK_THROWS_AS(SwitchNetwork::build(3), ConfigError);
  CHECK_THROWS_AS(SwitchNetwork::build(0), ConfigError);
  CHECK_THROWS_AS(SwitchNetwork::build(1), ConfigError);
}

TEST_CASE("switch count is 2(n-1) for every power of two up to 64") {
  for (int n : {2, 4, 8, 16, 32, 64}) {
    CHECK(SwitchNetwork::build(n).switchCount() == 2 * (n - 1));
  }
}

TEST_CASE("applySwitch") {
  const SwitchNetwork net = SwitchNetwork::build(2);
  PhotonState s(2, 1);
  s.set(0, 0, {1, 0});

  const PhotonState off = applySwitch(s, net, {Side::Mux, 0, 0}, false, 0);
  CHECK(fidelity(s, off) == doctest::Approx(1.0));

  const PhotonState on = applySwitch(s, net, {Side::Mux, 0, 0}, true, 0);
  CHECK(on.find(0, 0) == nullptr);
  REQUIRE(on.find(0, 1) != nullptr);
  CHECK(on.find(0, 1)->h == Complex{1, 0});

  const PhotonState twice = applySwitch(on, net, {Side::Mux, 0, 0}, true, 0);
  CHECK(fidelity(s, twice) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("every leaf is reachable and drains back to the root") {
  for (int n : {2, 4, 8, 16}) {
    const SwitchNetwork net = SwitchNetwork::build(n);
    for (int leaf = 0; leaf < n; ++leaf) {
      const PulseSchedule schedule =
          singleBinSchedule(net, routeSettings(leaf, net, Side::Mux),
                            routeSettings(leaf, net, Side::Demux));
      PhotonState probe(n, 1);
      probe.set(0, 0, {1, 0});

      PhotonState down = probe;
      for (int level = 0; level < net.levels(); ++level) {
        for (const SwitchId& id : net.switches(Side::Mux)) {
          if (id.level == level) {
            down = applySwitch(down, net, id, schedule.isOn(id, 0, 0), 0);
          }
        }
      }
      REQUIRE(down.find(0, leaf) != nullptr);
      CHECK(down.amplitudes().size() == 1);

      PhotonState up = down;
      for (int level = net.levels() - 1; level >= 0; --level) {
        for (const SwitchId& id : net.switches(Side::Demux)) {
          if (id.level == level) {
            up = applySwitch(up, net, id, schedule.isOn(id, 0, 0), 0);
          }
        }
      }
      REQUIRE(up.find(0, 0) != nullptr);
      CHECK(up.amplitudes().size() == 1);
    }
  }
}

TEST_CASE("single-bin straight-through iteration applies U_0") {
  // N=2, both switches off: the photon goes straight through the x_0 arm.
  const SwitchNetwork net = SwitchNetwork::build(2);
  PulseSchedule schedule;
  schedule.params = {2, 1, 40, 80, 10, 5, 0};
  schedule.logical[{{Side::Mux, 0, 0}, 0, 0}] = false;
  schedule.logical[{{Side::Demux, 0, 0}, 0, 0}] = false;

  PhotonState input(2, 1);
  input.set(0, 0, {1, 0});
  const std::vector<PolarizationOperator> ops{PolarizationOperator::pauliX(),
                                              PolarizationOperator::identity()};
  const PhotonState out =
      propagateIteration(input, net, schedule, fixedOperators(ops), 0);
  const auto* spinor = out.find(0, 0);
  REQUIRE(spinor != nullptr);
  CHECK(spinor->h == Complex{0, 0});
  CHECK(spinor->v == Complex{1, 0});
}

TEST_CASE("all-off all-identity iteration is the identity") {
  const SwitchNetwork net = SwitchNetwork::build(4);
  PulseSchedule schedule;
  schedule.params = {4, 1, 40, 200, 10, 5, 0};
  for (Side side : {Side::Mux, Side::Demux}) {
    for (const SwitchId& id : net.switches(side)) {
      schedule.logical[{id, 0, 0}] = false;
    }
  }
  PhotonState input(4, 1);
  input.set(0, 0, {0.6, {0, 0.8}});
  const std::vector<PolarizationOperator> ops(
      4, PolarizationOperator::identity());
  const PhotonState out =
      propagateIteration(input, net, schedule, fixedOperators(ops), 0);
  CHECK(fidelity(input, out) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scheduled iterations preserve norm") {
  std::mt19937_64 rng(17);
  const SwitchNetwork net = SwitchNetwork::build(4);
  const SchedulerParams params{4, 2, 40, 1000, 10, 5, 0};
  const std::set<std::int64_t> bins{0, 3, 7, 9};
  const PulseSchedule schedule = buildSchedule(params, net, bins);

  PhotonState input(4, params.binCount());
  for (std::int64_t bin : bins) {
    input.set(bin, 0, {{0.3, 0.1}, {0.2, -0.4}});
  }
  input = input.normalized();
  std::vector<PolarizationOperator> ops;
  for (int i = 0; i < 4; ++i) {
    ops.push_back(haarRandomUnitary(rng));
  }
  PhotonState state = input;
  for (int pass = 0; pass < 2; ++pass) {
    state = propagateIteration(state, net, schedule, fixedOperators(ops), pass);
    CHECK(std::abs(state.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("serial and parallel engines agree") {
  std::mt19937_64 rng(23);
  const SwitchNetwork net = SwitchNetwork::build(4);
  const SchedulerParams params{4, 3, 40, 3000, 10, 5, 0};
  const std::set<std::int64_t> bins{1, 5, 13, 44, 60};
  const PulseSchedule schedule = buildSchedule(params, net, bins);

  PhotonState input(4, params.binCount());
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::int64_t bin : bins) {
    input.set(bin, 0, {{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}});
  }
  input = input.normalized();
  std::vector<PolarizationOperator> ops;
  for (int i = 0; i < 4; ++i) {
    ops.push_back(haarRandomUnitary(rng));
  }
  const auto provider = fixedOperators(ops);
  const PhotonState serial = runDeviceSerial(input, net, schedule, provider, 3);
  const PhotonState parallel =
      runDeviceParallel(input, net, schedule, provider, 3);
  CHECK(fidelity(serial, parallel) == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& [key, spinor] : serial.amplitudes()) {
    CHECK(key.mode == 0);
    const auto* other = parallel.find(key.bin, key.mode);
    REQUIRE(other != nullptr);
    CHECK(std::abs(spinor.h - other->h) < 1e-15);
    CHECK(std::abs(spinor.v - other->v) < 1e-15);
  }
}

TEST_CASE("a schedule that strands the photon raises a collision error") {
  const SwitchNetwork net = SwitchNetwork::build(2);
  // Mux off but demux on for the one pass: the photon exits on x_1.
  PulseSchedule schedule;
  schedule.params = {2, 1, 40, 80, 10, 5, 0};
  schedule.logical[{{Side::Mux, 0, 0}, 0, 0}] = false;
  schedule.logical[{{Side::Demux, 0, 0}, 0, 0}] = true;

  PhotonState input(2, 1);
  input.set(0, 0, {1, 0});
  const std::vector<PolarizationOperator> ops(
      2, PolarizationOperator::identity());
  CHECK_THROWS_AS(
      runDeviceSerial(input, net, schedule, fixedOperators(ops), 1),
      CollisionError);
  CHECK_THROWS_AS(
      runDeviceParallel(input, net, schedule, fixedOperators(ops), 1),
      CollisionError);
}
