#include <doctest.h>

#include <random>

#include "qpermute/errors.hpp"
#include "qpermute/oracle.hpp"
#include "qpermute/photon_state.hpp"

using namespace qpermute;

namespace {

PhotonState randomState(int nModes, std::int64_t nBins, std::mt19937_64& rng) {
  PhotonState state(nModes, nBins);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> bin(0, nBins - 1);
  std::uniform_int_distribution<int> mode(0, nModes - 1);
  for (int i = 0; i < 6; ++i) {
    state.set(bin(rng), mode(rng),
              {{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}});
  }
  return state.normalized();
}

}  // namespace

TEST_CASE("non-unitary operators are rejected at construction") {
  CHECK_THROWS_AS(PolarizationOperator(1, 0, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(PolarizationOperator(1, 1, 0, 1), std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(PolarizationOperator(Complex{nan, 0}, 0, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("identity leaves any state unchanged") {
  std::mt19937_64 rng(7);
  const PhotonState s = randomState(2, 4, rng);
  const PhotonState t = s.applyPolarizationOp(PolarizationOperator::identity());
  CHECK(fidelity(s, t) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Pauli-X flips the basis spinor on the selected slot") {
  PhotonState s(1, 1);
  s.set(0, 0, {1, 0});
  const PhotonState t = s.applyPolarizationOp(PolarizationOperator::pauliX());
  const auto* spinor = t.find(0, 0);
  REQUIRE(spinor != nullptr);
  CHECK(spinor->h == Complex{0, 0});
  CHECK(spinor->v == Complex{1, 0});
}

TEST_CASE("Hadamard applied twice is the identity") {
  // Oracle: the matrix product H*H.
  const auto h = PolarizationOperator::hadamard();
  const auto hh = h.compose(h);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      CHECK(std::abs(hh.at(r, c) - (r == c ? 1.0 : 0.0)) < 1e-12);
    }
  }
  std::mt19937_64 rng(11);
  const PhotonState s = randomState(2, 4, rng);
  const PhotonState t =
      s.applyPolarizationOp(h).applyPolarizationOp(h);
  CHECK(fidelity(s, t) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("selective application touches only matching slots") {
  PhotonState s(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  s.set(0, 0, {r, 0});
  s.set(1, 1, {r, 0});
  const PhotonState t = s.applyPolarizationOp(
      PolarizationOperator::pauliX(),
      [](std::int64_t bin, int) { return bin == 0; });
  CHECK(t.find(0, 0)->v == Complex{r, 0});
  CHECK(t.find(1, 1)->h == Complex{r, 0});
}

TEST_CASE("norm") {
  PhotonState s(1, 2);
  s.set(0, 0, {1, 0});
  CHECK(s.norm() == doctest::Approx(1.0));

  const double r = 1.0 / std::sqrt(2.0);
  PhotonState two(1, 2);
  two.set(0, 0, {r, 0});
  two.set(1, 0, {r, 0});
  CHECK(two.norm() == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(3);
  CHECK(randomState(2, 8, rng).norm() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(PhotonState(1, 1).normalized(), NormalizationError);
}

TEST_CASE("fidelity basics") {
  std::mt19937_64 rng(5);
  const PhotonState s = randomState(2, 4, rng);
  CHECK(fidelity(s, s) == doctest::Approx(1.0).epsilon(1e-12));

  PhotonState a(1, 2);
  a.set(0, 0, {1, 0});
  PhotonState b(1, 2);
  b.set(1, 0, {1, 0});
  CHECK(fidelity(a, b) == 0.0);

  // Global phase invariance.
  const Complex phase = std::polar(1.0, 0.83);
  const PolarizationOperator phaseOp(phase, 0, 0, phase);
  CHECK(fidelity(s, s.applyPolarizationOp(phaseOp)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(fidelity(a, PhotonState(1, 3)), DimensionError);
  CHECK_THROWS_AS(fidelity(a, PhotonState(2, 2)), DimensionError);
}

TEST_CASE("unitaries preserve norm and compose") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const PhotonState s = randomState(2, 8, rng);
    const PolarizationOperator u = haarRandomUnitary(rng);
    const PolarizationOperator v = haarRandomUnitary(rng);
    CHECK(std::abs(s.applyPolarizationOp(u).norm() - 1.0) < 1e-12);

    const PhotonState stepwise = s.applyPolarizationOp(u).applyPolarizationOp(v);
    const PhotonState once = s.applyPolarizationOp(v.compose(u));
    CHECK(fidelity(stepwise, once) == doctest::Approx(1.0).epsilon(1e-12));

    const PhotonState t = randomState(2, 8, rng);
    CHECK(fidelity(s, t) == doctest::Approx(fidelity(t, s)).epsilon(1e-12));
  }
}

TEST_CASE("slots outside the declared dimensions are rejected") {
  PhotonState s(2, 4);
  CHECK_THROWS_AS(s.set(4, 0, {1, 0}), DimensionError);
  CHECK_THROWS_AS(s.set(0, 2, {1, 0}), DimensionError);
  CHECK_THROWS_AS(s.set(-1, 0, {1, 0}), DimensionError);
}
