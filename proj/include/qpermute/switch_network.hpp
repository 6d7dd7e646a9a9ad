#pragma once

#include <compare>
#include <string>
#include <vector>

#include "qpermute/photon_state.hpp"

namespace qpermute {

/// Which of the two mirrored trees a switch belongs to: the multiplexer fans
/// one input mode out to N leaf modes, the demultiplexer drains them back.
enum class Side { Mux, Demux };

std::string to_string(Side side);

/// Switch at tree level `level` (0 = root), position `index` within the level.
struct SwitchId {
  Side side;
  int level;  // p in [0, log2 N)
  int index;  // q in [0, 2^p)

  friend auto operator<=>(const SwitchId&, const SwitchId&) = default;
};

std::string to_string(const SwitchId& id);

struct ModePair {
  int a;  // even port, x_{2q N / 2^{p+1}}
  int b;  // odd port, x_{(2q+1) N / 2^{p+1}}
};

struct SwitchSetting {
  SwitchId id;
  bool on;
};

/// The device topology: two mirrored binary trees of conditional mode-swap
/// switches, one polarization operator per leaf mode, and a feedback loop from
/// the demux root's x_{N/2} port back to the mux root's x_{N/2} port.
class SwitchNetwork {
 public:
  /// Throws ConfigError unless n is a power of two >= 2.
  static SwitchNetwork build(int nModes);

  int nModes() const { return nModes_; }
  int levels() const { return levels_; }
  int switchCount() const { return 2 * (nModes_ - 1); }
  int feedbackMode() const { return nModes_ / 2; }

  /// The two spatial modes switch (p, q) acts on.
  ModePair modes(const SwitchId& id) const;

  const std::vector<SwitchId>& switches(Side side) const {
    return side == Side::Mux ? muxSwitches_ : demuxSwitches_;
  }

  /// Leaf mode x_l feeds operator U_l.
  int operatorOnMode(int mode) const;

  bool validId(const SwitchId& id) const;

 private:
  explicit SwitchNetwork(int nModes);

  int nModes_;
  int levels_;
  std::vector<SwitchId> muxSwitches_;
  std::vector<SwitchId> demuxSwitches_;
};

/// Conditional mode swap on a single time bin: when on, the amplitudes at the
/// switch's two modes are exchanged; polarization spinors are untouched.
PhotonState applySwitch(const PhotonState& state, const SwitchNetwork& net,
                        const SwitchId& id, bool on, std::int64_t bin);

}  // namespace qpermute
