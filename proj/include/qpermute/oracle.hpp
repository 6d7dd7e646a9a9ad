#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "qpermute/photon_state.hpp"
#include "qpermute/types.hpp"

namespace qpermute {

/// Control-register amplitudes over time bins (checked to be normalized).
using ControlRegister = std::map<std::int64_t, Complex>;

/// Closed-form two-operator permutation: alpha |bin0> (x) U0 U1 |psi> +
/// beta |bin1> (x) U1 U0 |psi>, as a 2-bin x 1-mode photon state.
PhotonState q2Permute(const PolarizationOperator& u0,
                      const PolarizationOperator& u1, Complex alpha,
                      Complex beta, const PolarizationSpinor& psi);

/// The product of pass-by-pass operator choices experienced by time bin
/// `bin`: later passes multiply on the left.
PolarizationOperator metaOperator(const std::vector<PolarizationOperator>& ops,
                                  std::int64_t bin, int nOperators, int passes);

/// Brute-force target output: for each occupied bin i, alpha_i * (O_i psi) at
/// (t_i, x_0) in an nOperators-mode, nOperators^passes-bin state.
PhotonState metaOperatorOutput(const std::vector<PolarizationOperator>& ops,
                               const ControlRegister& control,
                               const PolarizationSpinor& psi, int nOperators,
                               int passes);

/// Gate-by-gate simulation of the two-operator circuit: a controlled swap
/// between the data wire and an empty ancilla wire, the composite operators
/// on the two wires, and a second controlled swap. Verifies all amplitude
/// returns to the data wire, then returns the collapsed 2-bin x 1-mode state.
PhotonState circuitN2(const PolarizationOperator& u0,
                      const PolarizationOperator& u1, Complex alpha,
                      Complex beta, const PolarizationSpinor& psi);

/// (device switch count 2n-2, circuit-model copies of each operator n).
std::pair<int, int> resourceCounts(int n);

PolarizationOperator haarRandomUnitary(std::mt19937_64& rng);
PolarizationOperator haarRandomUnitary(std::uint64_t seed);

/// Haar-random polarization spinor (a random unitary applied to |h>).
PolarizationSpinor randomSpinor(std::mt19937_64& rng);

/// Random point on the complex unit sphere in 2 dimensions, as (alpha, beta).
std::pair<Complex, Complex> randomAmplitudePair(std::mt19937_64& rng);

}  // namespace qpermute
