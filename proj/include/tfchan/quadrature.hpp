#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace tfchan {

using Complex = std::complex<double>;

namespace specfun {

/// Result of a certified quadrature: value, absolute error estimate and
/// the number of integrand evaluations spent.
struct QuadratureResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Thrown when a requested tolerance cannot be met within the evaluation
/// cap. Carries the best value reached so the caller can still inspect it.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, Complex best, double estimate)
      : std::runtime_error(what), best_value(best), error_estimate(estimate) {}
  Complex best_value;
  double error_estimate;
};

struct Rect {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool empty() const { return x1 <= x0 || y1 <= y0; }
};

/// Intersection of two axis-aligned rectangles (may be empty).
Rect intersect(const Rect& a, const Rect& b);

inline constexpr long kDefaultEvalCap = 10'000'000;

/// Adaptive Simpson integration of a complex integrand over [a,b].
/// |value - integral| <= error_estimate <= tol for the smooth integrand
/// classes used in this project (Gaussians times oscillatory phases).
QuadratureResult integrate_1d(const std::function<Complex(double)>& f,
                              double a, double b, double tol,
                              long eval_cap = kDefaultEvalCap);

/// Iterated adaptive Simpson over an axis-aligned rectangle, with a
/// tol/2 budget per axis.
QuadratureResult integrate_2d(const std::function<Complex(double, double)>& f,
                              const Rect& rect, double tol,
                              long eval_cap = kDefaultEvalCap);

/// Fixed-order Gauss-Legendre rule on [a,b]. Exact to machine precision
/// for entire integrands that vary on a scale much longer than b-a
/// (Gaussian segments with complex center); not error-controlled.
Complex gauss_legendre(const std::function<Complex(double)>& f, double a,
                       double b);

}  // namespace specfun
}  // namespace tfchan
