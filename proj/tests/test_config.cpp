#include <doctest.h>

#include <nlohmann/json.hpp>

#include "qpermute/config.hpp"
#include "qpermute/errors.hpp"
#include "qpermute/oracle.hpp"

using namespace qpermute;
using nlohmann::json;

namespace {

json baseConfigJson() {
  return json{
      {"n", 2},
      {"m", 2},
      {"operators",
       {{{0, 0}, {1, 0}, {1, 0}, {0, 0}},    // Pauli-X
        {{1, 0}, {0, 0}, {0, 0}, {1, 0}}}},  // identity
      {"input_polarization", {{1, 0}, {0, 0}}},
      {"control_amplitudes",
       {{"1", {0.6, 0}}, {"2", {0, 0.8}}}},
      {"timing",
       {{"bin_spacing_ps", 40}, {"loop_delay_ps", 200}}},
      {"seed", 5}};
}

}  // namespace

TEST_CASE("config parsing") {
  const SimulationConfig config = simulationConfigFromJson(baseConfigJson());
  CHECK(config.nOperators == 2);
  CHECK(config.passes == 2);
  CHECK(config.operators.size() == 2);
  CHECK(config.controlAmplitudes.at(1) == Complex{0.6, 0});
  CHECK(config.controlAmplitudes.at(2) == Complex{0, 0.8});
  CHECK(config.timing.switchWindowPs == 10);  // defaulted
  CHECK(config.occupiedBins() == std::set<std::int64_t>{1, 2});
}

TEST_CASE("config validation errors") {
  json j = baseConfigJson();
  j["operators"][0] = {{0.5, 0}, {0, 0}, {0, 0}, {1, 0}};  // not unitary
  CHECK_THROWS_AS(simulationConfigFromJson(j), ConfigError);

  j = baseConfigJson();
  j["n"] = 3;
  CHECK_THROWS_AS(simulationConfigFromJson(j), ConfigError);

  j = baseConfigJson();
  j["control_amplitudes"] = "all-bins";
  CHECK_THROWS_AS(simulationConfigFromJson(j), ConfigError);

  j = baseConfigJson();
  j["control_amplitudes"] = {{"9", {1.0, 0}}};  // 9 >= 2^2
  CHECK_THROWS_AS(simulationConfigFromJson(j), ConfigError);
}

TEST_CASE("uniform-permutations token fixes M = N") {
  json j = baseConfigJson();
  j["m"] = 7;  // overridden by the token
  j["control_amplitudes"] = "uniform-permutations";
  const SimulationConfig config = simulationConfigFromJson(j);
  CHECK(config.passes == 2);
  CHECK(config.uniformPermutations);
  CHECK(config.occupiedBins() == permutationBins(2));
  const auto control = config.normalizedControlAmplitudes();
  CHECK(control.size() == 2);
  CHECK(std::abs(control.at(1) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("config json round trip") {
  const SimulationConfig config = simulationConfigFromJson(baseConfigJson());
  const SimulationConfig reloaded =
      simulationConfigFromJson(json::parse(simulationConfigToJson(config).dump()));
  CHECK(simulationConfigToJson(config) == simulationConfigToJson(reloaded));
}

TEST_CASE("schedule serialization round trip keeps logical settings") {
  const SimulationConfig config = simulationConfigFromJson(baseConfigJson());
  const SwitchNetwork net = SwitchNetwork::build(config.nOperators);
  const PulseSchedule schedule =
      buildSchedule(config.schedulerParams(), net, config.occupiedBins());

  const auto j = scheduleToJson(schedule);
  const PulseSchedule reloaded = scheduleFromJson(json::parse(j.dump()));
  CHECK(reloaded.logical == schedule.logical);
  REQUIRE(reloaded.timeline.size() == schedule.timeline.size());
  for (std::size_t i = 0; i < schedule.timeline.size(); ++i) {
    CHECK(reloaded.timeline[i].id == schedule.timeline[i].id);
    CHECK(reloaded.timeline[i].startPs == schedule.timeline[i].startPs);
    CHECK(reloaded.timeline[i].endPs == schedule.timeline[i].endPs);
  }
  // Stable serialization for reproducible diffs.
  CHECK(scheduleToJson(reloaded).dump() == j.dump());
}

TEST_CASE("input state is normalized with all amplitude on x_0") {
  const SimulationConfig config = simulationConfigFromJson(baseConfigJson());
  const PhotonState input = config.inputState();
  CHECK(std::abs(input.norm() - 1.0) < 1e-12);
  for (const auto& [key, spinor] : input.amplitudes()) {
    CHECK(key.mode == 0);
  }
  CHECK(std::abs(input.find(1, 0)->h - 0.6) < 1e-12);
}
