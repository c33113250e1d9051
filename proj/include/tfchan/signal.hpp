#pragma once

#include <memory>
#include <vector>

#include "tfchan/phase_space.hpp"
#include "tfchan/quadrature.hpp"

namespace tfchan::tfcore {

/// Default sampling grid: [-8, 8] with 4097 points. e^{-pi x^2} is below
/// 1e-80 at the boundary, so grid truncation is negligible against every
/// tolerance used here.
inline constexpr double kDefaultGridHalfWidth = 8.0;
inline constexpr int kDefaultGridPoints = 4097;

class GridOverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A signal of one real variable. Analytic kinds (the fixed Gaussian
/// g(x) = 2^{1/4} e^{-pi x^2} and the Hermite functions) carry displacements
/// symbolically as a canonical record  scale * (S_rho base); sampled kinds
/// hold values on a uniform symmetric grid and materialize displacements.
class Signal {
 public:
  enum class Kind { kGaussian, kHermite, kSampled };

  static Signal gaussian();
  static Signal hermite(int m);
  /// Unit-normalized sampled signal (the pulse constructor; norm2 == 1).
  static Signal sampled(double half_width, std::vector<Complex> values);
  /// Sampled signal kept as-is (used for operator outputs).
  static Signal sampled_raw(double half_width, std::vector<Complex> values);

  Kind kind() const { return kind_; }
  int hermite_order() const { return hermite_m_; }
  bool is_standard_gaussian() const;
  double norm2() const { return norm2_; }

  Complex operator()(double x) const;

  /// p-norm over the real line, p in [1, inf).
  double norm(double p) const;
  double sup_norm() const;

  double grid_half_width() const;
  int grid_points() const;
  const std::vector<Complex>& grid_values() const;

  /// <a, b> = integral of conj(a) b (grid Simpson for sampled pairs,
  /// quadrature otherwise).
  static Complex inner(const Signal& a, const Signal& b, double tol = 1e-10);

  friend Signal shift(const Signal& s, const PhasePoint& mu, const Polarization& pol);

 private:
  Signal() = default;

  Kind kind_ = Kind::kGaussian;
  int hermite_m_ = 0;
  std::shared_ptr<const std::vector<Complex>> samples_;
  double half_width_ = kDefaultGridHalfWidth;
  // canonical displacement record: value(x) = scale * e^{i 2 pi rho2 x} base(x - rho1)
  PhasePoint rho_{};
  Complex scale_{1.0, 0.0};
  double norm2_ = 1.0;
};

/// alpha-generalized displacement S_mu^{(alpha)} s =
/// e^{-i 2 pi (1/2 - alpha) zeta(mu,mu)} e^{i 2 pi mu2 x} s(x - mu1).
/// Isometric on every L^p.
Signal shift(const Signal& s, const PhasePoint& mu, const Polarization& pol);

/// Cross ambiguity A^{(alpha)}_{g gamma}(mu) = <g, S_mu^{(alpha)} gamma>.
/// Closed form when both signals are the standard Gaussian, else quadrature
/// with absolute tolerance tol.
Complex ambiguity(const Signal& g, const Signal& gamma, const PhasePoint& mu,
                  const Polarization& pol, double tol = 1e-10);

/// Closed form A^{(alpha)}_{gg}(nu) = e^{-(pi/2)|nu|^2} e^{+2 pi i alpha zeta(nu,nu)}
/// for the standard Gaussian pair.
Complex gaussian_ambiguity(const PhasePoint& nu, const Polarization& pol);

/// A phase-plane function with declared (compact) support.
struct PlaneFunction {
  std::function<Complex(double, double)> f;
  specfun::Rect support;
};

/// Symplectic Fourier transform (F_s F)(mu) = integral over the declared
/// support of e^{-i 2 pi eta(nu, mu)} F(nu) dnu. Involutive.
Complex symplectic_fourier(const PlaneFunction& F, const PhasePoint& mu, double tol);

}  // namespace tfchan::tfcore
