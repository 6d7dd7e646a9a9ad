#include "qpermute/device.hpp"

#include <set>
#include <vector>

#include "qpermute/errors.hpp"

namespace qpermute {

OperatorProvider fixedOperators(const std::vector<PolarizationOperator>& ops) {
  return [ops](int /*pass*/, int opIndex) { return ops.at(opIndex); };
}

namespace {

std::set<std::int64_t> occupiedBinsOf(const PhotonState& state) {
  std::set<std::int64_t> bins;
  for (const auto& [key, spinor] : state.amplitudes()) {
    bins.insert(key.bin);
  }
  return bins;
}

void checkExitPort(const PhotonState& state, int expectedMode, int pass) {
  for (const auto& [key, spinor] : state.amplitudes()) {
    if (key.mode != expectedMode) {
      throw CollisionError("bin " + std::to_string(key.bin) +
                           " exited pass " + std::to_string(pass) +
                           " on x_" + std::to_string(key.mode) +
                           " instead of x_" + std::to_string(expectedMode));
    }
  }
}

}  // namespace

PhotonState propagateIteration(const PhotonState& state,
                               const SwitchNetwork& net,
                               const PulseSchedule& schedule,
                               const OperatorProvider& ops, int pass) {
  const std::set<std::int64_t> bins = occupiedBinsOf(state);
  PhotonState cur = state;

  for (int level = 0; level < net.levels(); ++level) {
    for (const SwitchId& id : net.switches(Side::Mux)) {
      if (id.level != level) {
        continue;
      }
      for (std::int64_t bin : bins) {
        cur = applySwitch(cur, net, id, schedule.isOn(id, bin, pass), bin);
      }
    }
  }

  // Operator plane: each bin must sit on exactly one leaf mode.
  std::map<std::int64_t, int> slotCount;
  for (const auto& [key, spinor] : cur.amplitudes()) {
    ++slotCount[key.bin];
  }
  for (const auto& [bin, count] : slotCount) {
    if (count != 1) {
      throw CollisionError("bin " + std::to_string(bin) + " occupies " +
                           std::to_string(count) +
                           " modes at the operator plane");
    }
  }
  PhotonState afterOps(cur.nModes(), cur.nBins());
  for (const auto& [key, spinor] : cur.amplitudes()) {
    const PolarizationOperator op = ops(pass, net.operatorOnMode(key.mode));
    afterOps.set(key.bin, key.mode, op.apply(spinor));
  }
  cur = afterOps;

  for (int level = net.levels() - 1; level >= 0; --level) {
    for (const SwitchId& id : net.switches(Side::Demux)) {
      if (id.level != level) {
        continue;
      }
      for (std::int64_t bin : bins) {
        cur = applySwitch(cur, net, id, schedule.isOn(id, bin, pass), bin);
      }
    }
  }
  return cur;
}

PhotonState runDeviceSerial(const PhotonState& input, const SwitchNetwork& net,
                            const PulseSchedule& schedule,
                            const OperatorProvider& ops, int passes) {
  checkExitPort(input, 0, -1);
  PhotonState state = input;
  for (int pass = 0; pass < passes; ++pass) {
    state = propagateIteration(state, net, schedule, ops, pass);
    const bool last = pass == passes - 1;
    checkExitPort(state, last ? 0 : net.feedbackMode(), pass);
    // The feedback loop maps the demux x_{N/2} port to the mux x_{N/2} port
    // with no state change, so nothing to do between passes.
  }
  return state;
}

namespace {

// Mode trajectory step through one tree level: find the switch whose mode
// pair contains `mode`, and cross to the partner mode when it is on.
int stepThroughLevel(int mode, int level, const SwitchNetwork& net, Side side,
                     const PulseSchedule& schedule, std::int64_t bin,
                     int pass) {
  const int stride = net.nModes() >> (level + 1);
  if (mode % stride != 0) {
    return mode;  // no switch at this level acts on this wire
  }
  const int slot = mode / stride;
  const SwitchId id{side, level, slot / 2};
  if (!schedule.isOn(id, bin, pass)) {
    return mode;
  }
  return (slot ^ 1) * stride;
}

}  // namespace

PhotonState runDeviceParallel(const PhotonState& input,
                              const SwitchNetwork& net,
                              const PulseSchedule& schedule,
                              const OperatorProvider& ops, int passes) {
  checkExitPort(input, 0, -1);
  std::vector<std::pair<std::int64_t, PolarizationSpinor>> slots;
  slots.reserve(input.amplitudes().size());
  for (const auto& [key, spinor] : input.amplitudes()) {
    slots.emplace_back(key.bin, spinor);
  }

  std::vector<PolarizationSpinor> outSpinors(slots.size());
  std::vector<int> exitModes(slots.size());
  std::exception_ptr failure;

#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(slots.size());
       ++idx) {
    try {
      const std::int64_t bin = slots[idx].first;
      PolarizationSpinor spinor = slots[idx].second;
      int mode = 0;
      for (int pass = 0; pass < passes; ++pass) {
        for (int level = 0; level < net.levels(); ++level) {
          mode = stepThroughLevel(mode, level, net, Side::Mux, schedule, bin,
                                  pass);
        }
        spinor = ops(pass, net.operatorOnMode(mode)).apply(spinor);
        for (int level = net.levels() - 1; level >= 0; --level) {
          mode = stepThroughLevel(mode, level, net, Side::Demux, schedule, bin,
                                  pass);
        }
        const int expected = pass == passes - 1 ? 0 : net.feedbackMode();
        if (mode != expected) {
          throw CollisionError("bin " + std::to_string(bin) +
                               " exited pass " + std::to_string(pass) +
                               " on x_" + std::to_string(mode) +
                               " instead of x_" + std::to_string(expected));
        }
      }
      outSpinors[idx] = spinor;
      exitModes[idx] = mode;
    } catch (...) {
#pragma omp critical
      if (!failure) {
        failure = std::current_exception();
      }
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  PhotonState out(input.nModes(), input.nBins());
  for (std::size_t idx = 0; idx < slots.size(); ++idx) {
    out.set(slots[idx].first, exitModes[idx], outSpinors[idx]);
  }
  return out;
}

PhotonState runDevice(const SimulationConfig& config,
                      const PulseSchedule& schedule) {
  return runDevice(config, schedule, fixedOperators(config.operators));
}

PhotonState runDevice(const SimulationConfig& config,
                      const PulseSchedule& schedule,
                      const OperatorProvider& ops) {
  const SwitchNetwork net = SwitchNetwork::build(config.nOperators);
  return runDeviceParallel(config.inputState(), net, schedule, ops,
                           config.passes);
}

}  // namespace qpermute
