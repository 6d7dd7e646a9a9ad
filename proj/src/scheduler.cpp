#include "qpermute/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "qpermute/errors.hpp"

namespace qpermute {

std::int64_t ipow(std::int64_t base, int exp) {
  if (base < 1 || exp < 0) {
    throw ConfigError("ipow domain error");
  }
  std::int64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > std::numeric_limits<std::int64_t>::max() / base) {
      throw ConfigError("bin count overflows 64-bit arithmetic");
    }
    result *= base;
  }
  return result;
}

void SchedulerParams::validate() const {
  if (nOperators < 2 || (nOperators & (nOperators - 1)) != 0) {
    throw ConfigError("operator count N must be a power of two >= 2");
  }
  if (passes < 1) {
    throw ConfigError("pass count M must be >= 1");
  }
  if (binSpacingPs < switchWindowPs + transitionPs) {
    throw TimingInfeasibleError("binSpacing >= switchWindow + transition");
  }
  const double required = static_cast<double>(binCount()) * binSpacingPs;
  if (loopDelayPs < required) {
    throw TimingInfeasibleError("loopDelay >= N^M * binSpacing");
  }
}

int operatorIndex(std::int64_t bin, int pass, int nOperators, int passes) {
  if (pass < 0 || pass >= passes) {
    throw std::out_of_range("pass index out of range");
  }
  const std::int64_t total = ipow(nOperators, passes);
  if (bin < 0 || bin >= total) {
    throw std::out_of_range("time bin out of range");
  }
  return static_cast<int>((bin / ipow(nOperators, passes - 1 - pass)) %
                          nOperators);
}

namespace {

// The switch on leaf l's root-to-leaf path at a given level, and whether it
// must swap: level p's switch is S_{p, l >> (k-p)}, and it swaps exactly when
// bit (k-1-p) of l is set.
int pathIndexAt(int leaf, int level, int levels) {
  return leaf >> (levels - level);
}

bool pathBitSet(int leaf, int level, int levels) {
  return ((leaf >> (levels - 1 - level)) & 1) != 0;
}

}  // namespace

std::vector<SwitchSetting> routeSettings(int leaf, const SwitchNetwork& net,
                                         Side side) {
  if (leaf < 0 || leaf >= net.nModes()) {
    throw TopologyError("leaf mode x_" + std::to_string(leaf) +
                        " outside network");
  }
  std::vector<SwitchSetting> settings;
  settings.reserve(net.switches(side).size());
  for (const SwitchId& id : net.switches(side)) {
    const bool onPath = id.index == pathIndexAt(leaf, id.level, net.levels());
    const bool on = onPath && pathBitSet(leaf, id.level, net.levels());
    settings.push_back({id, on});
  }
  return settings;
}

BoundarySettings boundarySettings(std::int64_t /*bin*/, int pass, int leaf,
                                  const SchedulerParams& params) {
  const int half = params.nOperators / 2;
  const bool upper = leaf >= half;
  // First pass enters on x_0, later passes on the feedback port x_{N/2}; last
  // pass exits on x_0, earlier passes on x_{N/2}.
  const bool muxRootOn = (pass == 0) ? upper : !upper;
  const bool demuxRootOn = (pass == params.passes - 1) ? upper : !upper;
  return {muxRootOn, demuxRootOn};
}

bool PulseSchedule::isOn(const SwitchId& id, std::int64_t bin, int pass) const {
  const auto it = logical.find(LogicalKey{id, bin, pass});
  if (it == logical.end()) {
    throw ConfigError("schedule has no setting for " + to_string(id) +
                      " bin " + std::to_string(bin) + " pass " +
                      std::to_string(pass));
  }
  return it->second;
}

double arrivalPs(const SchedulerParams& params, int levels, const SwitchId& id,
                 std::int64_t bin, int pass) {
  const int position =
      id.side == Side::Mux ? id.level : 2 * levels - 1 - id.level;
  return static_cast<double>(bin) * params.binSpacingPs +
         static_cast<double>(pass) * params.loopDelayPs +
         position * params.levelLatencyPs;
}

PulseSchedule buildSchedule(const SchedulerParams& params,
                            const SwitchNetwork& net,
                            const std::set<std::int64_t>& occupiedBins) {
  params.validate();
  if (net.nModes() != params.nOperators) {
    throw ConfigError("network size does not match scheduler params");
  }
  const std::int64_t bins = params.binCount();
  PulseSchedule schedule;
  schedule.params = params;

  for (std::int64_t bin : occupiedBins) {
    if (bin < 0 || bin >= bins) {
      throw ConfigError("occupied bin " + std::to_string(bin) +
                        " outside [0, N^M)");
    }
    for (int pass = 0; pass < params.passes; ++pass) {
      const int leaf = operatorIndex(bin, pass, params.nOperators, params.passes);
      const BoundarySettings roots = boundarySettings(bin, pass, leaf, params);
      for (Side side : {Side::Mux, Side::Demux}) {
        for (SwitchSetting setting : routeSettings(leaf, net, side)) {
          if (setting.id.level == 0) {
            setting.on = side == Side::Mux ? roots.muxRootOn : roots.demuxRootOn;
          }
          schedule.logical[{setting.id, bin, pass}] = setting.on;
        }
      }
    }
  }

  // Physical timeline: one pulse per maximal run of adjacent on-bins.
  std::map<SwitchId, std::vector<double>> onInstants;
  for (const auto& [key, on] : schedule.logical) {
    if (on) {
      onInstants[key.id].push_back(
          arrivalPs(params, net.levels(), key.id, key.bin, key.pass));
    }
  }
  for (auto& [id, instants] : onInstants) {
    std::sort(instants.begin(), instants.end());
    const double half = params.switchWindowPs / 2.0;
    double runStart = instants.front();
    double prev = instants.front();
    for (std::size_t i = 1; i <= instants.size(); ++i) {
      const bool adjacent =
          i < instants.size() && instants[i] - prev <= params.binSpacingPs + 1e-9;
      if (adjacent) {
        prev = instants[i];
        continue;
      }
      schedule.timeline.push_back({id, runStart - half, prev + half});
      if (i < instants.size()) {
        runStart = prev = instants[i];
      }
    }
  }

  // The merged intervals must still be realizable pulse by pulse.
  const PulseInterval* prev = nullptr;
  for (const PulseInterval& interval : schedule.timeline) {
    if (prev && prev->id == interval.id &&
        interval.startPs - prev->endPs < params.transitionPs) {
      throw TimingInfeasibleError(
          "pulse intervals at " + to_string(interval.id) +
          " closer than the transition time");
    }
    prev = &interval;
  }
  return schedule;
}

std::set<std::int64_t> permutationBins(int n) {
  if (n < 1) {
    throw ConfigError("operator count must be >= 1");
  }
  std::set<std::int64_t> bins;
  const std::int64_t total = ipow(n, n);
  for (std::int64_t bin = 0; bin < total; ++bin) {
    std::vector<int> counts(n, 0);
    std::int64_t rest = bin;
    for (int digit = 0; digit < n; ++digit) {
      ++counts[rest % n];
      rest /= n;
    }
    if (std::all_of(counts.begin(), counts.end(),
                    [](int c) { return c == 1; })) {
      bins.insert(bin);
    }
  }
  return bins;
}

bool literalActivationOn(int level, int index, int leaf, int nModes) {
  if (level == 0) {
    return false;  // root behavior is given separately in the source text
  }
  const int stride = nModes >> (level + 1);
  return (index + 1) * stride <= leaf && leaf < (index + 2) * stride;
}

std::vector<RoutingDiscrepancy> routingDiscrepancies(
    const std::vector<int>& modeCounts) {
  std::vector<RoutingDiscrepancy> rows;
  for (int n : modeCounts) {
    const SwitchNetwork net = SwitchNetwork::build(n);
    for (const SwitchId& id : net.switches(Side::Mux)) {
      if (id.level == 0) {
        continue;
      }
      for (int leaf = 0; leaf < n; ++leaf) {
        const bool onPath = id.index == pathIndexAt(leaf, id.level, net.levels());
        const bool derived = onPath && pathBitSet(leaf, id.level, net.levels());
        const bool literal = literalActivationOn(id.level, id.index, leaf, n);
        if (derived != literal) {
          rows.push_back({n, id.level, id.index, leaf, literal, derived});
        }
      }
    }
  }
  return rows;
}

std::string formatDiscrepancyReport(
    const std::vector<RoutingDiscrepancy>& rows) {
  std::ostringstream out;
  out << "closed-form vs path-derived switch activation disagreements\n"
      << "N\tswitch\tleaf\tclosed-form\tpath-derived\n";
  for (const RoutingDiscrepancy& row : rows) {
    out << row.nModes << "\tS[" << row.level << "," << row.index << "]\tx_"
        << row.leaf << "\t" << (row.literalOn ? "on" : "off") << "\t"
        << (row.derivedOn ? "on" : "off") << "\n";
  }
  out << "total disagreements: " << rows.size() << "\n";
  return out.str();
}

}  // namespace qpermute
