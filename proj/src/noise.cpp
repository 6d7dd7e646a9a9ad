#include "qpermute/noise.hpp"

#include <cmath>
#include <random>

#include "qpermute/errors.hpp"
#include "qpermute/oracle.hpp"

namespace qpermute {

namespace {

std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // splitmix64 over the combined words
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (a + 1) +
                    0xBF58476D1CE4E5B9ULL * (b + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

PolarizationOperator perturbOperator(const PolarizationOperator& u,
                                     const DriftParams& params, int pass,
                                     int opIndex) {
  if (params.sigma < 0) {
    throw ConfigError("drift sigma must be >= 0");
  }
  if (params.sigma == 0.0) {
    return u;
  }
  std::mt19937_64 rng(mixSeed(params.seed, static_cast<std::uint64_t>(pass),
                              static_cast<std::uint64_t>(opIndex)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  double nx = gauss(rng);
  double ny = gauss(rng);
  double nz = gauss(rng);
  const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
  nx /= len;
  ny /= len;
  nz /= len;
  const double angle = params.sigma * std::abs(gauss(rng));

  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  // exp(-i angle/2 n.sigma)
  const PolarizationOperator rotation{{c, -s * nz},
                                      {-s * ny, -s * nx},
                                      {s * ny, -s * nx},
                                      {c, s * nz}};
  return rotation.compose(u);
}

OperatorProvider driftedOperators(const std::vector<PolarizationOperator>& ops,
                                  const DriftParams& params) {
  return [ops, params](int pass, int opIndex) {
    return perturbOperator(ops.at(opIndex), params, pass, opIndex);
  };
}

std::vector<DriftSweepRow> driftFidelitySweep(const SimulationConfig& config,
                                              const std::vector<double>& sigmas,
                                              int trials) {
  if (trials < 1) {
    throw ConfigError("drift sweep needs at least one trial");
  }
  config.validate();

  // Unperturbed target.
  const PhotonState ideal = metaOperatorOutput(
      config.operators, config.normalizedControlAmplitudes(),
      config.normalizedPolarization(), config.nOperators, config.passes);

  const SwitchNetwork net = SwitchNetwork::build(config.nOperators);
  const PulseSchedule schedule =
      buildSchedule(config.schedulerParams(), net, config.occupiedBins());
  const PhotonState input = config.inputState();

  std::vector<DriftSweepRow> rows;
  for (double sigma : sigmas) {
    double sum = 0.0;
    double sumSq = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
      const DriftParams params{sigma, mixSeed(config.seed, 0xD21F, trial)};
      const PhotonState out =
          runDeviceParallel(input, net, schedule,
                            driftedOperators(config.operators, params),
                            config.passes);
      const double f = fidelity(out, ideal);
      sum += f;
      sumSq += f * f;
    }
    const double mean = sum / trials;
    const double var =
        trials > 1 ? std::max(0.0, (sumSq - trials * mean * mean) / (trials - 1))
                   : 0.0;
    rows.push_back({sigma, mean, std::sqrt(var), trials});
  }
  return rows;
}

}  // namespace qpermute
