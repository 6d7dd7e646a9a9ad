#include "qpermute/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "qpermute/errors.hpp"

namespace qpermute {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Complex complexFromJson(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError("complex values must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json complexToJson(Complex c) {
  return ordered_json::array({c.real(), c.imag()});
}

PolarizationOperator operatorFromJson(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw ConfigError("operators must be row-major lists of 4 [re, im] pairs");
  }
  try {
    return {complexFromJson(j[0]), complexFromJson(j[1]), complexFromJson(j[2]),
            complexFromJson(j[3])};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ordered_json operatorToJson(const PolarizationOperator& op) {
  return ordered_json::array({complexToJson(op.at(0, 0)),
                              complexToJson(op.at(0, 1)),
                              complexToJson(op.at(1, 0)),
                              complexToJson(op.at(1, 1))});
}

SwitchId switchIdFromJson(const json& j) {
  const std::string side = j.at("side").get<std::string>();
  if (side != "mux" && side != "demux") {
    throw ConfigError("switch side must be 'mux' or 'demux'");
  }
  return {side == "mux" ? Side::Mux : Side::Demux, j.at("p").get<int>(),
          j.at("q").get<int>()};
}

ordered_json switchIdToJson(const SwitchId& id) {
  return {{"side", to_string(id.side)}, {"p", id.level}, {"q", id.index}};
}

}  // namespace

SchedulerParams SimulationConfig::schedulerParams() const {
  return {nOperators,          passes,
          timing.binSpacingPs, timing.loopDelayPs,
          timing.switchWindowPs, timing.transitionPs,
          timing.levelLatencyPs};
}

std::set<std::int64_t> SimulationConfig::occupiedBins() const {
  if (uniformPermutations) {
    return permutationBins(nOperators);
  }
  std::set<std::int64_t> bins;
  for (const auto& [bin, amp] : controlAmplitudes) {
    if (amp != Complex{}) {
      bins.insert(bin);
    }
  }
  return bins;
}

std::map<std::int64_t, Complex> SimulationConfig::normalizedControlAmplitudes()
    const {
  std::map<std::int64_t, Complex> control;
  if (uniformPermutations) {
    const auto bins = permutationBins(nOperators);
    const double amp = 1.0 / std::sqrt(static_cast<double>(bins.size()));
    for (std::int64_t bin : bins) {
      control[bin] = amp;
    }
    return control;
  }
  double total = 0.0;
  for (const auto& [bin, amp] : controlAmplitudes) {
    total += std::norm(amp);
  }
  if (total == 0.0) {
    throw ConfigError("control amplitudes are all zero");
  }
  for (const auto& [bin, amp] : controlAmplitudes) {
    if (amp != Complex{}) {
      control[bin] = amp / std::sqrt(total);
    }
  }
  return control;
}

PolarizationSpinor SimulationConfig::normalizedPolarization() const {
  const double n = std::sqrt(inputPolarization.normSq());
  if (n == 0.0) {
    throw ConfigError("input polarization is the zero spinor");
  }
  return {inputPolarization.h / n, inputPolarization.v / n};
}

PhotonState SimulationConfig::inputState() const {
  validate();
  PhotonState state(nOperators, ipow(nOperators, passes));
  if (uniformPermutations) {
    for (std::int64_t bin : permutationBins(nOperators)) {
      state.set(bin, 0, {inputPolarization.h, inputPolarization.v});
    }
  } else {
    for (const auto& [bin, amp] : controlAmplitudes) {
      state.set(bin, 0, {amp * inputPolarization.h, amp * inputPolarization.v});
    }
  }
  return state.normalized();
}

void SimulationConfig::validate() const {
  if (nOperators < 2 || (nOperators & (nOperators - 1)) != 0) {
    throw ConfigError("n must be a power of two >= 2");
  }
  if (passes < 1) {
    throw ConfigError("m must be >= 1");
  }
  if (static_cast<int>(operators.size()) != nOperators) {
    throw ConfigError("expected " + std::to_string(nOperators) +
                      " operators, got " + std::to_string(operators.size()));
  }
  if (uniformPermutations) {
    if (passes != nOperators) {
      throw ConfigError("uniform-permutations requires m = n");
    }
  } else {
    const std::int64_t bins = ipow(nOperators, passes);
    double total = 0.0;
    for (const auto& [bin, amp] : controlAmplitudes) {
      if (bin < 0 || bin >= bins) {
        throw ConfigError("control amplitude bin " + std::to_string(bin) +
                          " outside [0, N^M)");
      }
      total += std::norm(amp);
    }
    if (total == 0.0) {
      throw ConfigError("control amplitudes are all zero");
    }
  }
  if (inputPolarization.normSq() == 0.0) {
    throw ConfigError("input polarization is the zero spinor");
  }
  if (driftSigma && *driftSigma < 0) {
    throw ConfigError("drift sigma must be >= 0");
  }
}

SimulationConfig simulationConfigFromJson(const json& j) {
  SimulationConfig config;
  config.nOperators = j.at("n").get<int>();
  config.passes = j.at("m").get<int>();
  for (const auto& op : j.at("operators")) {
    config.operators.push_back(operatorFromJson(op));
  }
  const auto& pol = j.at("input_polarization");
  if (!pol.is_array() || pol.size() != 2) {
    throw ConfigError("input_polarization must be two [re, im] pairs");
  }
  config.inputPolarization = {complexFromJson(pol[0]), complexFromJson(pol[1])};

  const auto& control = j.at("control_amplitudes");
  if (control.is_string()) {
    if (control.get<std::string>() != "uniform-permutations") {
      throw ConfigError("unknown control_amplitudes token: " +
                        control.get<std::string>());
    }
    config.uniformPermutations = true;
    config.passes = config.nOperators;  // M = N in this mode
  } else if (control.is_object()) {
    for (const auto& [key, value] : control.items()) {
      config.controlAmplitudes[std::stoll(key)] = complexFromJson(value);
    }
  } else {
    throw ConfigError("control_amplitudes must be a map or a mode token");
  }

  if (j.contains("timing")) {
    const auto& t = j.at("timing");
    config.timing.binSpacingPs = t.at("bin_spacing_ps").get<double>();
    config.timing.loopDelayPs = t.at("loop_delay_ps").get<double>();
    config.timing.switchWindowPs =
        t.value("switch_window_ps", config.timing.switchWindowPs);
    config.timing.transitionPs =
        t.value("transition_ps", config.timing.transitionPs);
    config.timing.levelLatencyPs =
        t.value("level_latency_ps", config.timing.levelLatencyPs);
  }
  config.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("drift_sigma")) {
    config.driftSigma = j.at("drift_sigma").get<double>();
  }
  config.validate();
  return config;
}

ordered_json simulationConfigToJson(const SimulationConfig& config) {
  ordered_json j;
  j["n"] = config.nOperators;
  j["m"] = config.passes;
  j["operators"] = ordered_json::array();
  for (const auto& op : config.operators) {
    j["operators"].push_back(operatorToJson(op));
  }
  j["input_polarization"] = ordered_json::array(
      {complexToJson(config.inputPolarization.h),
       complexToJson(config.inputPolarization.v)});
  if (config.uniformPermutations) {
    j["control_amplitudes"] = "uniform-permutations";
  } else {
    ordered_json control = ordered_json::object();
    for (const auto& [bin, amp] : config.controlAmplitudes) {
      control[std::to_string(bin)] = complexToJson(amp);
    }
    j["control_amplitudes"] = control;
  }
  j["timing"] = {{"bin_spacing_ps", config.timing.binSpacingPs},
                 {"loop_delay_ps", config.timing.loopDelayPs},
                 {"switch_window_ps", config.timing.switchWindowPs},
                 {"transition_ps", config.timing.transitionPs},
                 {"level_latency_ps", config.timing.levelLatencyPs}};
  j["seed"] = config.seed;
  if (config.driftSigma) {
    j["drift_sigma"] = *config.driftSigma;
  }
  return j;
}

SimulationConfig loadSimulationConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  try {
    return simulationConfigFromJson(json::parse(in));
  } catch (const json::exception& e) {
    throw ConfigError("parse error in " + path + ": " + e.what());
  }
}

ordered_json scheduleToJson(const PulseSchedule& schedule) {
  ordered_json j;
  j["params"] = {{"n", schedule.params.nOperators},
                 {"m", schedule.params.passes},
                 {"bin_spacing_ps", schedule.params.binSpacingPs},
                 {"loop_delay_ps", schedule.params.loopDelayPs},
                 {"switch_window_ps", schedule.params.switchWindowPs},
                 {"transition_ps", schedule.params.transitionPs},
                 {"level_latency_ps", schedule.params.levelLatencyPs}};
  j["logical"] = ordered_json::array();
  for (const auto& [key, on] : schedule.logical) {
    j["logical"].push_back({{"switch", switchIdToJson(key.id)},
                            {"bin", key.bin},
                            {"iteration", key.pass},
                            {"on", on}});
  }
  j["timeline"] = ordered_json::array();
  for (const PulseInterval& interval : schedule.timeline) {
    j["timeline"].push_back({{"switch", switchIdToJson(interval.id)},
                             {"start_ps", interval.startPs},
                             {"end_ps", interval.endPs}});
  }
  return j;
}

PulseSchedule scheduleFromJson(const json& j) {
  PulseSchedule schedule;
  const auto& p = j.at("params");
  schedule.params = {p.at("n").get<int>(),
                     p.at("m").get<int>(),
                     p.at("bin_spacing_ps").get<double>(),
                     p.at("loop_delay_ps").get<double>(),
                     p.at("switch_window_ps").get<double>(),
                     p.at("transition_ps").get<double>(),
                     p.value("level_latency_ps", 0.0)};
  for (const auto& entry : j.at("logical")) {
    schedule.logical[{switchIdFromJson(entry.at("switch")),
                      entry.at("bin").get<std::int64_t>(),
                      entry.at("iteration").get<int>()}] =
        entry.at("on").get<bool>();
  }
  for (const auto& entry : j.at("timeline")) {
    schedule.timeline.push_back({switchIdFromJson(entry.at("switch")),
                                 entry.at("start_ps").get<double>(),
                                 entry.at("end_ps").get<double>()});
  }
  return schedule;
}

}  // namespace qpermute
