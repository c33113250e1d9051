#pragma once

#include <stdexcept>
#include <utility>

namespace tfchan::specfun {

inline constexpr int kMaxHermiteOrder = 128;

/// m-th L2-normalized Hermite function in the convention where
/// h_0(x) = 2^{1/4} e^{-pi x^2}. Orthonormal on the real line.
double hermite_fn(int m, double x, int max_order = kMaxHermiteOrder);

/// Laguerre function l_m(t) = e^{-t/2} L_m(t), t >= 0, with L_m the
/// (0th generalized) Laguerre polynomial via the three-term recurrence.
double laguerre_fn(int m, double t);

/// (erf(x), erfc(x)).
std::pair<double, double> erf_erfc(double x);

/// 2(1 - e^{-x/2})/x, the normalized Gaussian mass of a centered disc;
/// continuous extension 1 at x = 0.
double laguerre_disc_mass(double x);

/// 2 erf(sqrt(pi x / 8))^2 / x, the square counterpart; 1 at x = 0.
double laguerre_square_mass(double x);

class UnsupportedOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace tfchan::specfun
