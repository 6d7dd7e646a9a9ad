#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qpermute/photon_state.hpp"
#include "qpermute/scheduler.hpp"
#include "qpermute/types.hpp"

namespace qpermute {

struct TimingConfig {
  double binSpacingPs = 40;
  double loopDelayPs = 200;
  double switchWindowPs = 10;
  double transitionPs = 5;
  double levelLatencyPs = 0;
};

/// Full device run description as read from a config file.
struct SimulationConfig {
  int nOperators = 2;
  int passes = 2;
  std::vector<PolarizationOperator> operators;
  PolarizationSpinor inputPolarization{1, 0};
  /// Explicit bin -> amplitude map, or empty with uniformPermutations set.
  std::map<std::int64_t, Complex> controlAmplitudes;
  bool uniformPermutations = false;
  TimingConfig timing;
  std::uint64_t seed = 0;
  std::optional<double> driftSigma;

  SchedulerParams schedulerParams() const;
  std::set<std::int64_t> occupiedBins() const;

  /// Control amplitudes scaled to unit total weight (uniform over the
  /// permutation bins in uniform-permutations mode).
  std::map<std::int64_t, Complex> normalizedControlAmplitudes() const;
  PolarizationSpinor normalizedPolarization() const;

  /// Normalized input state of the device: the control amplitudes spread over
  /// time bins, all on spatial mode x_0, each slot carrying the input
  /// polarization.
  PhotonState inputState() const;

  /// Throws ConfigError on structural problems (non-power-of-two N, wrong
  /// operator count, out-of-range bins, zero total amplitude).
  void validate() const;
};

SimulationConfig simulationConfigFromJson(const nlohmann::json& j);
nlohmann::ordered_json simulationConfigToJson(const SimulationConfig& config);

/// Throws ConfigError with the file position on parse failure.
SimulationConfig loadSimulationConfig(const std::string& path);

nlohmann::ordered_json scheduleToJson(const PulseSchedule& schedule);
PulseSchedule scheduleFromJson(const nlohmann::json& j);

}  // namespace qpermute
