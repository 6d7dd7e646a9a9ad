#include "qpermute/photon_state.hpp"

#include <cmath>

namespace qpermute {

PhotonState::PhotonState(int nModes, std::int64_t nBins)
    : nModes_(nModes), nBins_(nBins) {
  if (nModes < 1 || nBins < 1) {
    throw DimensionError("photon state needs at least one mode and one bin");
  }
}

void PhotonState::checkSlot(std::int64_t bin, int mode) const {
  if (bin < 0 || bin >= nBins_ || mode < 0 || mode >= nModes_) {
    throw DimensionError("slot (" + std::to_string(bin) + ", " +
                         std::to_string(mode) + ") outside state dimensions");
  }
}

void PhotonState::set(std::int64_t bin, int mode,
                      const PolarizationSpinor& spinor) {
  checkSlot(bin, mode);
  if (!spinor.finite()) {
    throw NormalizationError("non-finite amplitude");
  }
  const SlotKey key{bin, mode};
  if (spinor.normSq() == 0.0) {
    amps_.erase(key);
  } else {
    amps_[key] = spinor;
  }
}

const PolarizationSpinor* PhotonState::find(std::int64_t bin, int mode) const {
  checkSlot(bin, mode);
  const auto it = amps_.find(SlotKey{bin, mode});
  return it == amps_.end() ? nullptr : &it->second;
}

double PhotonState::norm() const {
  double sum = 0.0;
  for (const auto& [key, spinor] : amps_) {
    sum += spinor.normSq();
  }
  return std::sqrt(sum);
}

PhotonState PhotonState::normalized() const {
  const double n = norm();
  if (n == 0.0) {
    throw NormalizationError("cannot normalize the zero state");
  }
  PhotonState out(nModes_, nBins_);
  for (const auto& [key, spinor] : amps_) {
    out.amps_[key] = {spinor.h / n, spinor.v / n};
  }
  return out;
}

PhotonState PhotonState::applyPolarizationOp(const PolarizationOperator& op,
                                             const SlotPredicate& where) const {
  PhotonState out(nModes_, nBins_);
  for (const auto& [key, spinor] : amps_) {
    out.amps_[key] = where(key.bin, key.mode) ? op.apply(spinor) : spinor;
  }
  return out;
}

PhotonState PhotonState::applyPolarizationOp(const PolarizationOperator& op) const {
  return applyPolarizationOp(op, [](std::int64_t, int) { return true; });
}

Complex innerProduct(const PhotonState& a, const PhotonState& b) {
  if (a.nModes() != b.nModes() || a.nBins() != b.nBins()) {
    throw DimensionError("inner product between states of different dimensions");
  }
  Complex sum{};
  for (const auto& [key, spinor] : a.amplitudes()) {
    if (const auto* other = b.find(key.bin, key.mode)) {
      sum += innerProduct(spinor, *other);
    }
  }
  return sum;
}

double fidelity(const PhotonState& a, const PhotonState& b) {
  return std::norm(innerProduct(a, b));
}

}  // namespace qpermute
