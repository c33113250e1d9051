#include "tfchan/special.hpp"

#include <cmath>
#include <string>

namespace tfchan::specfun {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double hermite_fn(int m, double x, int max_order) {
  if (m < 0) throw std::invalid_argument("hermite_fn: order must be nonnegative");
  if (m > max_order)
    throw UnsupportedOrderError("hermite_fn: order " + std::to_string(m) +
                                " above the configured maximum " +
                                std::to_string(max_order));
  if (!std::isfinite(x)) throw std::invalid_argument("hermite_fn: x must be finite");

  // h_m(x) = (2 pi)^{1/4} phi_m(sqrt(2 pi) x) with phi_m the unit-L2
  // oscillator functions; the normalized recurrence stays O(1) throughout.
  const double t = std::sqrt(kTwoPi) * x;
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * t * t);
  for (int k = 0; k < m; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * t * cur -
                        std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return std::pow(kTwoPi, 0.25) * cur;
}

double laguerre_fn(int m, double t) {
  if (m < 0) throw std::invalid_argument("laguerre_fn: order must be nonnegative");
  if (!(t >= 0.0)) throw std::invalid_argument("laguerre_fn: requires t >= 0");
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < m; ++k) {
    const double next = ((2.0 * k + 1.0 - t) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return std::exp(-0.5 * t) * cur;
}

std::pair<double, double> erf_erfc(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("erf_erfc: x must be finite");
  return {std::erf(x), std::erfc(x)};
}

double laguerre_disc_mass(double x) {
  if (x < 1e-8) return 1.0 - 0.25 * x;  // series, avoids 0/0
  return 2.0 * (1.0 - std::exp(-0.5 * x)) / x;
}

double laguerre_square_mass(double x) {
  if (x < 1e-12) return 1.0;
  const double e = std::erf(std::sqrt(kPi * x / 8.0));
  return 2.0 * e * e / x;
}

}  // namespace tfchan::specfun
