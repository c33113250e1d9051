#pragma once

#include <cmath>
#include <complex>

#include "tfchan/quadrature.hpp"

namespace tfchan::tfcore {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// exp(i t).
inline Complex cis(double t) { return {std::cos(t), std::sin(t)}; }

/// A point mu = (mu1, mu2) of the time-frequency plane: mu1 is the time
/// (delay) displacement, mu2 the frequency (Doppler) displacement.
struct PhasePoint {
  double mu1 = 0.0;
  double mu2 = 0.0;

  PhasePoint operator+(const PhasePoint& o) const { return {mu1 + o.mu1, mu2 + o.mu2}; }
  PhasePoint operator-() const { return {-mu1, -mu2}; }
  double norm2() const { return mu1 * mu1 + mu2 * mu2; }
};

/// zeta(mu, nu) = mu1 * nu2.
inline double zeta(const PhasePoint& mu, const PhasePoint& nu) { return mu.mu1 * nu.mu2; }

/// Symplectic form eta(mu, nu) = zeta(mu, nu) - zeta(nu, mu).
inline double eta(const PhasePoint& mu, const PhasePoint& nu) {
  return mu.mu1 * nu.mu2 - nu.mu1 * mu.mu2;
}

/// Symbol-calculus ordering parameter. alpha = 0 is the symmetric (Weyl)
/// case, alpha = 1/2 the Kohn-Nirenberg case.
struct Polarization {
  double alpha = 0.0;
};

/// Phase e^{-i 2 pi eta(mu, nu)} by which shifting first by nu and then by
/// mu differs from the opposite order (any polarizations).
inline Complex commutation_phase(const PhasePoint& mu, const PhasePoint& nu) {
  return cis(-kTwoPi * eta(mu, nu));
}

}  // namespace tfchan::tfcore
