#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qpermute/switch_network.hpp"

namespace qpermute {

/// n^m in 64-bit arithmetic; throws ConfigError on overflow.
std::int64_t ipow(std::int64_t base, int exp);

struct SchedulerParams {
  int nOperators = 2;       // N, power of two
  int passes = 2;           // M
  double binSpacingPs = 40;
  double loopDelayPs = 200;
  double switchWindowPs = 10;
  double transitionPs = 5;
  double levelLatencyPs = 0;  // optional per-tree-level propagation delay

  std::int64_t binCount() const { return ipow(nOperators, passes); }

  /// Throws TimingInfeasibleError naming the violated constraint.
  void validate() const;
};

/// Index l of the operator U_l that time bin i sees on pass k: the k-th
/// most-significant base-n digit of i written with m digits.
int operatorIndex(std::int64_t bin, int pass, int nOperators, int passes);

/// On/off settings routing a photon between the root of one tree and leaf
/// mode x_l. The root setting assumes entry (mux) or exit (demux) on the x_0
/// port; feedback passes override it via boundarySettings.
std::vector<SwitchSetting> routeSettings(int leaf, const SwitchNetwork& net,
                                         Side side);

struct BoundarySettings {
  bool muxRootOn;    // S[0,0]
  bool demuxRootOn;  // S'[0,0]
};

/// Root-switch settings for pass `pass` targeting leaf x_l: the packet arrives
/// at the mux root on x_0 (first pass) or the feedback port x_{N/2} (later
/// passes), and must leave the demux root on x_0 (last pass) or x_{N/2}.
BoundarySettings boundarySettings(std::int64_t bin, int pass, int leaf,
                                  const SchedulerParams& params);

struct LogicalKey {
  SwitchId id;
  std::int64_t bin;
  int pass;

  friend auto operator<=>(const LogicalKey&, const LogicalKey&) = default;
};

struct PulseInterval {
  SwitchId id;
  double startPs;
  double endPs;
};

struct PulseSchedule {
  SchedulerParams params;
  std::map<LogicalKey, bool> logical;
  std::vector<PulseInterval> timeline;  // sorted by (switch, start)

  /// Throws ConfigError if the schedule has no entry for this slot.
  bool isOn(const SwitchId& id, std::int64_t bin, int pass) const;
};

/// Arrival instant of time bin `bin` on pass `pass` at the given switch, in
/// absolute device time.
double arrivalPs(const SchedulerParams& params, int levels, const SwitchId& id,
                 std::int64_t bin, int pass);

/// Compiles the full logical settings table and the physical pulse timeline.
/// Adjacent on-bins at one switch share a single merged pulse.
PulseSchedule buildSchedule(const SchedulerParams& params,
                            const SwitchNetwork& net,
                            const std::set<std::int64_t>& occupiedBins);

/// Time bins in [0, n^n) whose base-n digit string uses each digit exactly
/// once; exactly n! of them.
std::set<std::int64_t> permutationBins(int n);

// --- comparison mode: the published closed-form switching predicates -------
//
// The paper's closed-form activation range for internal switches disagrees
// with the tree topology for some (p, q, l); production routing comes from
// the path computation above, and these literal predicates are kept only to
// enumerate the disagreements.

bool literalActivationOn(int level, int index, int leaf, int nModes);

struct RoutingDiscrepancy {
  int nModes;
  int level;
  int index;
  int leaf;
  bool literalOn;
  bool derivedOn;
};

std::vector<RoutingDiscrepancy> routingDiscrepancies(
    const std::vector<int>& modeCounts);

std::string formatDiscrepancyReport(const std::vector<RoutingDiscrepancy>& rows);

}  // namespace qpermute
