#pragma once

#include <functional>
#include <vector>

#include "tfchan/phase_space.hpp"
#include "tfchan/region.hpp"

namespace tfchan::channel {

class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One smooth piece of a spreading function: a complex function on an
/// axis-aligned box (constant for grid-model cells).
struct SpreadingPiece {
  specfun::Rect box;
  std::function<Complex(double, double)> f;
  bool constant = false;
  Complex value{0.0, 0.0};  // when constant
};

/// A bounded spreading function with compact support U, in a fixed
/// polarization. Either the piecewise-constant finite model
/// Sigma(nu) = sum_k c_k chi_{cell_k}(nu) or a bounded closed form on U.
class SpreadingFunction {
 public:
  /// Finite model: K^2 coefficients (row-major, c[k1*K + k2]) on cells of
  /// size u; support is the matching grid union.
  static SpreadingFunction grid_model(int K, double u, std::vector<Complex> coeff,
                                      tfcore::Polarization pol);
  static SpreadingFunction closed_form(SupportRegion support,
                                       std::function<Complex(double, double)> f,
                                       tfcore::Polarization pol);

  const SupportRegion& support() const { return support_; }
  tfcore::Polarization polarization() const { return pol_; }
  bool is_grid() const { return is_grid_; }
  int grid_order() const { return K_; }
  double cell_size() const { return u_; }
  const std::vector<Complex>& coefficients() const { return coeff_; }

  Complex eval(double x, double y) const;
  const std::vector<SpreadingPiece>& pieces() const { return pieces_; }

  /// Spreading function of the adjoint operator:
  /// Sigma_{H*}(mu) = conj(Sigma_H(-mu)) e^{-i 4 pi alpha zeta(mu,mu)}.
  SpreadingFunction adjoint() const;

  /// The same operator expressed in another polarization:
  /// Sigma^{(a)}(nu) = e^{i 2 pi (a0 - a) zeta(nu,nu)} Sigma^{(a0)}(nu).
  SpreadingFunction repolarized(tfcore::Polarization pol) const;

 private:
  SupportRegion support_ = SupportRegion::centered_square_of_measure(1.0);
  tfcore::Polarization pol_{};
  bool is_grid_ = false;
  int K_ = 0;
  double u_ = 0.0;
  std::vector<Complex> coeff_;
  std::vector<SpreadingPiece> pieces_;
};

/// L^q norm of the spreading function, q in [1, inf]. Exact for the grid
/// model (u^{2/q} ||c||_q, sup |c| at q = inf), quadrature otherwise.
double spreading_norm(const SpreadingFunction& S, double q);

}  // namespace tfchan::channel
