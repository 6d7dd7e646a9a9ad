#pragma once

#include <cstdint>
#include <vector>

#include "qpermute/config.hpp"
#include "qpermute/device.hpp"
#include "qpermute/types.hpp"

namespace qpermute {

/// Per-pass operator drift: each pass sees a slightly different approximation
/// of each operator, modeled as a small random rotation in front of it.
struct DriftParams {
  double sigma = 0.0;  // std-dev of the rotation angle, radians
  std::uint64_t seed = 0;
};

/// R * u with R a rotation by |Normal(0, sigma)| radians about a random axis,
/// deterministic in (seed, pass, opIndex). sigma = 0 returns u unchanged.
PolarizationOperator perturbOperator(const PolarizationOperator& u,
                                     const DriftParams& params, int pass,
                                     int opIndex);

/// Operator provider applying fresh drift on every (pass, opIndex).
OperatorProvider driftedOperators(const std::vector<PolarizationOperator>& ops,
                                  const DriftParams& params);

struct DriftSweepRow {
  double sigma;
  double meanFidelity;
  double stdFidelity;
  int trials;
};

/// Runs the device with drifted operators and reports fidelity against the
/// unperturbed brute-force oracle, per sigma. Trial seeds are shared across
/// sigma values so the sweep is smooth in sigma.
std::vector<DriftSweepRow> driftFidelitySweep(const SimulationConfig& config,
                                              const std::vector<double>& sigmas,
                                              int trials);

}  // namespace qpermute
