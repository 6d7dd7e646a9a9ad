#pragma once

#include <functional>

#include "qpermute/config.hpp"
#include "qpermute/photon_state.hpp"
#include "qpermute/scheduler.hpp"
#include "qpermute/switch_network.hpp"

namespace qpermute {

/// Operator applied on mode x_l during a given pass. The ideal device ignores
/// the pass; the drift model returns a different approximation each pass.
using OperatorProvider =
    std::function<PolarizationOperator(int pass, int opIndex)>;

OperatorProvider fixedOperators(const std::vector<PolarizationOperator>& ops);

/// One full trip through the device: mux tree down, polarization operator at
/// the leaf, demux tree up. Whole-state serial reference implementation.
/// Throws CollisionError when a bin's amplitude is not confined to exactly one
/// mode at the operator plane (a scheduling bug).
PhotonState propagateIteration(const PhotonState& state,
                               const SwitchNetwork& net,
                               const PulseSchedule& schedule,
                               const OperatorProvider& ops, int pass);

/// M passes through the device using the serial whole-state engine. Checks
/// that every bin exits each pass on the feedback port (or x_0 on the final
/// pass) and that all amplitude ends on x_0.
PhotonState runDeviceSerial(const PhotonState& input, const SwitchNetwork& net,
                            const PulseSchedule& schedule,
                            const OperatorProvider& ops, int passes);

/// Same semantics as runDeviceSerial, but walks each occupied bin's mode
/// trajectory independently with an OpenMP parallel loop over bins.
PhotonState runDeviceParallel(const PhotonState& input,
                              const SwitchNetwork& net,
                              const PulseSchedule& schedule,
                              const OperatorProvider& ops, int passes);

/// Full device run from a validated config and a schedule built for it.
PhotonState runDevice(const SimulationConfig& config,
                      const PulseSchedule& schedule);

PhotonState runDevice(const SimulationConfig& config,
                      const PulseSchedule& schedule,
                      const OperatorProvider& ops);

}  // namespace qpermute
