#include "qpermute/oracle.hpp"

#include <cmath>

#include "qpermute/errors.hpp"
#include "qpermute/scheduler.hpp"

namespace qpermute {

namespace {

void checkNormalizedPair(Complex alpha, Complex beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kStateNormTol) {
    throw NormalizationError("control amplitudes are not normalized");
  }
}

void checkNormalizedSpinor(const PolarizationSpinor& psi) {
  if (std::abs(psi.normSq() - 1.0) > kStateNormTol) {
    throw NormalizationError("input polarization is not normalized");
  }
}

}  // namespace

PhotonState q2Permute(const PolarizationOperator& u0,
                      const PolarizationOperator& u1, Complex alpha,
                      Complex beta, const PolarizationSpinor& psi) {
  checkNormalizedPair(alpha, beta);
  checkNormalizedSpinor(psi);
  const PolarizationSpinor branch0 = u0.compose(u1).apply(psi);
  const PolarizationSpinor branch1 = u1.compose(u0).apply(psi);
  PhotonState out(1, 2);
  out.set(0, 0, {alpha * branch0.h, alpha * branch0.v});
  out.set(1, 0, {beta * branch1.h, beta * branch1.v});
  return out;
}

PolarizationOperator metaOperator(const std::vector<PolarizationOperator>& ops,
                                  std::int64_t bin, int nOperators,
                                  int passes) {
  PolarizationOperator acc = PolarizationOperator::identity();
  for (int pass = 0; pass < passes; ++pass) {
    acc = ops.at(operatorIndex(bin, pass, nOperators, passes)).compose(acc);
  }
  return acc;
}

PhotonState metaOperatorOutput(const std::vector<PolarizationOperator>& ops,
                               const ControlRegister& control,
                               const PolarizationSpinor& psi, int nOperators,
                               int passes) {
  checkNormalizedSpinor(psi);
  double total = 0.0;
  for (const auto& [bin, amp] : control) {
    total += std::norm(amp);
  }
  if (std::abs(total - 1.0) > kStateNormTol) {
    throw NormalizationError("control register is not normalized");
  }
  PhotonState out(nOperators, ipow(nOperators, passes));
  for (const auto& [bin, amp] : control) {
    const PolarizationSpinor rotated =
        metaOperator(ops, bin, nOperators, passes).apply(psi);
    out.set(bin, 0, {amp * rotated.h, amp * rotated.v});
  }
  return out;
}

PhotonState circuitN2(const PolarizationOperator& u0,
                      const PolarizationOperator& u1, Complex alpha,
                      Complex beta, const PolarizationSpinor& psi) {
  checkNormalizedPair(alpha, beta);
  checkNormalizedSpinor(psi);

  // Control bin x wire mode x polarization; the ancilla wire (mode 1) starts
  // in the vacuum reference state.
  PhotonState state(2, 2);
  state.set(0, 0, {alpha * psi.h, alpha * psi.v});
  state.set(1, 0, {beta * psi.h, beta * psi.v});

  const auto controlledSwap = [](const PhotonState& s) {
    PhotonState out(2, 2);
    for (const auto& [key, spinor] : s.amplitudes()) {
      const int mode = key.bin == 1 ? 1 - key.mode : key.mode;
      out.set(key.bin, mode, spinor);
    }
    return out;
  };

  state = controlledSwap(state);
  state = state.applyPolarizationOp(
      u0.compose(u1), [](std::int64_t, int mode) { return mode == 0; });
  state = state.applyPolarizationOp(
      u1.compose(u0), [](std::int64_t, int mode) { return mode == 1; });
  state = controlledSwap(state);

  double leaked = 0.0;
  for (const auto& [key, spinor] : state.amplitudes()) {
    if (key.mode != 0) {
      leaked += spinor.normSq();
    }
  }
  if (leaked > kStateNormTol) {
    throw std::logic_error("ancilla wire failed to disentangle");
  }

  PhotonState out(1, 2);
  for (const auto& [key, spinor] : state.amplitudes()) {
    out.set(key.bin, 0, spinor);
  }
  return out;
}

std::pair<int, int> resourceCounts(int n) {
  if (n < 2 || (n & (n - 1)) != 0) {
    throw ConfigError("resource counts defined for power-of-two n >= 2");
  }
  return {2 * n - 2, n};
}

PolarizationOperator haarRandomUnitary(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double a = gauss(rng);
  const double b = gauss(rng);
  const double c = gauss(rng);
  const double d = gauss(rng);
  const double r = std::sqrt(a * a + b * b + c * c + d * d);
  const Complex w{a / r, b / r};
  const Complex z{c / r, d / r};
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const Complex phase = std::polar(1.0, angle(rng));
  return {phase * w, phase * z, phase * -std::conj(z), phase * std::conj(w)};
}

PolarizationOperator haarRandomUnitary(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haarRandomUnitary(rng);
}

PolarizationSpinor randomSpinor(std::mt19937_64& rng) {
  const PolarizationOperator u = haarRandomUnitary(rng);
  return u.apply({1, 0});
}

std::pair<Complex, Complex> randomAmplitudePair(std::mt19937_64& rng) {
  const PolarizationSpinor s = randomSpinor(rng);
  return {s.h, s.v};
}

}  // namespace qpermute
