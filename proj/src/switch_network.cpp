#include "qpermute/switch_network.hpp"

#include <bit>

#include "qpermute/errors.hpp"

namespace qpermute {

std::string to_string(Side side) {
  return side == Side::Mux ? "mux" : "demux";
}

std::string to_string(const SwitchId& id) {
  const char* prime = id.side == Side::Demux ? "'" : "";
  return "S" + std::string(prime) + "[" + std::to_string(id.level) + "," +
         std::to_string(id.index) + "]";
}

SwitchNetwork::SwitchNetwork(int nModes)
    : nModes_(nModes), levels_(std::countr_zero(static_cast<unsigned>(nModes))) {
  for (int p = 0; p < levels_; ++p) {
    for (int q = 0; q < (1 << p); ++q) {
      muxSwitches_.push_back({Side::Mux, p, q});
      demuxSwitches_.push_back({Side::Demux, p, q});
    }
  }
}

SwitchNetwork SwitchNetwork::build(int nModes) {
  if (nModes < 2 || !std::has_single_bit(static_cast<unsigned>(nModes))) {
    throw ConfigError("mode count must be a power of two >= 2, got " +
                      std::to_string(nModes));
  }
  return SwitchNetwork(nModes);
}

ModePair SwitchNetwork::modes(const SwitchId& id) const {
  if (!validId(id)) {
    throw TopologyError("switch " + to_string(id) + " not in this network");
  }
  const int stride = nModes_ >> (id.level + 1);  // N / 2^{p+1}
  return {2 * id.index * stride, (2 * id.index + 1) * stride};
}

bool SwitchNetwork::validId(const SwitchId& id) const {
  return id.level >= 0 && id.level < levels_ && id.index >= 0 &&
         id.index < (1 << id.level);
}

int SwitchNetwork::operatorOnMode(int mode) const {
  if (mode < 0 || mode >= nModes_) {
    throw TopologyError("no operator on mode x_" + std::to_string(mode));
  }
  return mode;
}

PhotonState applySwitch(const PhotonState& state, const SwitchNetwork& net,
                        const SwitchId& id, bool on, std::int64_t bin) {
  if (!on) {
    return state;
  }
  const ModePair pair = net.modes(id);
  PhotonState out = state;
  const PolarizationSpinor* atA = state.find(bin, pair.a);
  const PolarizationSpinor* atB = state.find(bin, pair.b);
  out.set(bin, pair.a, atB ? *atB : PolarizationSpinor{});
  out.set(bin, pair.b, atA ? *atA : PolarizationSpinor{});
  return out;
}

}  // namespace qpermute
