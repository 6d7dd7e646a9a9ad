#pragma once

#include <stdexcept>
#include <string>

namespace qpermute {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NormalizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A scheduler parameter set that cannot be realized physically. The message
/// names the violated constraint.
struct TimingInfeasibleError : std::runtime_error {
  explicit TimingInfeasibleError(const std::string& constraint)
      : std::runtime_error("timing infeasible: " + constraint),
        constraint(constraint) {}
  std::string constraint;
};

/// Two occupied slots landed on one (timeBin, mode), or a bin's amplitude was
/// split across modes. Either means the schedule is wrong.
struct CollisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TopologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qpermute
