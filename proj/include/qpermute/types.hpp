#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qpermute {

using Complex = std::complex<double>;

// Tolerance tiers: states are checked loosely, constructed unitaries a bit
// tighter, and algebraic identities at double-precision headroom.
inline constexpr double kStateNormTol = 1e-9;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kAlgebraTol = 1e-12;

inline bool isFinite(Complex c) {
  return std::isfinite(c.real()) && std::isfinite(c.imag());
}

/// Amplitudes of the polarization qubit in the fixed h/v basis.
struct PolarizationSpinor {
  Complex h{};
  Complex v{};

  double normSq() const { return std::norm(h) + std::norm(v); }

  bool finite() const { return isFinite(h) && isFinite(v); }
};

inline Complex innerProduct(const PolarizationSpinor& a,
                            const PolarizationSpinor& b) {
  return std::conj(a.h) * b.h + std::conj(a.v) * b.v;
}

/// A 2x2 unitary acting on the polarization qubit. Unitarity is enforced at
/// construction so downstream code never has to re-validate.
class PolarizationOperator {
 public:
  PolarizationOperator(Complex m00, Complex m01, Complex m10, Complex m11)
      : m_{m00, m01, m10, m11} {
    for (const auto& c : m_) {
      if (!isFinite(c)) {
        throw std::invalid_argument("polarization operator has non-finite entries");
      }
    }
    if (unitarityResidual() > kUnitaryTol) {
      throw std::invalid_argument("polarization operator is not unitary");
    }
  }

  static PolarizationOperator identity() { return {1, 0, 0, 1}; }
  static PolarizationOperator pauliX() { return {0, 1, 1, 0}; }
  static PolarizationOperator pauliZ() { return {1, 0, 0, -1}; }
  static PolarizationOperator hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s, s, -s};
  }

  Complex at(int row, int col) const { return m_[2 * row + col]; }

  PolarizationSpinor apply(const PolarizationSpinor& s) const {
    return {m_[0] * s.h + m_[1] * s.v, m_[2] * s.h + m_[3] * s.v};
  }

  /// Matrix product this * rhs (rhs acts first).
  PolarizationOperator compose(const PolarizationOperator& rhs) const {
    return {m_[0] * rhs.m_[0] + m_[1] * rhs.m_[2],
            m_[0] * rhs.m_[1] + m_[1] * rhs.m_[3],
            m_[2] * rhs.m_[0] + m_[3] * rhs.m_[2],
            m_[2] * rhs.m_[1] + m_[3] * rhs.m_[3]};
  }

  /// Max-norm of M^dag M - I.
  double unitarityResidual() const {
    const Complex g00 = std::conj(m_[0]) * m_[0] + std::conj(m_[2]) * m_[2];
    const Complex g01 = std::conj(m_[0]) * m_[1] + std::conj(m_[2]) * m_[3];
    const Complex g10 = std::conj(m_[1]) * m_[0] + std::conj(m_[3]) * m_[2];
    const Complex g11 = std::conj(m_[1]) * m_[1] + std::conj(m_[3]) * m_[3];
    double r = std::abs(g00 - 1.0);
    r = std::max(r, std::abs(g01));
    r = std::max(r, std::abs(g10));
    r = std::max(r, std::abs(g11 - 1.0));
    return r;
  }

 private:
  std::array<Complex, 4> m_;
};

}  // namespace qpermute
