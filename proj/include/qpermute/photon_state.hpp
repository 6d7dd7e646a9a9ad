#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>

#include "qpermute/errors.hpp"
#include "qpermute/types.hpp"

namespace qpermute {

/// Occupied (timeBin, spatialMode) slot key. Ordered so iteration over the
/// sparse map is deterministic.
struct SlotKey {
  std::int64_t bin;
  int mode;

  friend auto operator<=>(const SlotKey&, const SlotKey&) = default;
};

using SlotPredicate = std::function<bool(std::int64_t bin, int mode)>;

/// Single-photon wavefunction: a sparse map from occupied (timeBin, spatialMode)
/// slots to polarization spinors. Multi-photon terms are unrepresentable by
/// construction; vacuum slots are simply absent.
class PhotonState {
 public:
  PhotonState(int nModes, std::int64_t nBins);

  int nModes() const { return nModes_; }
  std::int64_t nBins() const { return nBins_; }

  /// Sets the spinor at a slot (replacing any previous value). Slots whose
  /// spinor is exactly zero are dropped.
  void set(std::int64_t bin, int mode, const PolarizationSpinor& spinor);

  /// Returns nullptr for vacuum slots.
  const PolarizationSpinor* find(std::int64_t bin, int mode) const;

  const std::map<SlotKey, PolarizationSpinor>& amplitudes() const {
    return amps_;
  }

  double norm() const;

  /// Divides by the norm; throws NormalizationError on a zero state.
  PhotonState normalized() const;

  /// Applies op to every occupied slot selected by the predicate.
  PhotonState applyPolarizationOp(const PolarizationOperator& op,
                                  const SlotPredicate& where) const;
  PhotonState applyPolarizationOp(const PolarizationOperator& op) const;

 private:
  void checkSlot(std::int64_t bin, int mode) const;

  int nModes_;
  std::int64_t nBins_;
  std::map<SlotKey, PolarizationSpinor> amps_;
};

Complex innerProduct(const PhotonState& a, const PhotonState& b);

/// |<a|b>|^2 over the joint (time, space, polarization) Hilbert space.
/// Throws DimensionError if the two states have different mode/bin counts.
double fidelity(const PhotonState& a, const PhotonState& b);

}  // namespace qpermute
