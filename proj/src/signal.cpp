#include "tfchan/signal.hpp"

#include <algorithm>
#include <cmath>

#include "tfchan/special.hpp"

namespace tfchan::tfcore {

namespace {

constexpr double kQuarterRoot2 = 1.18920711500272106671749997056;  // 2^{1/4}

double simpson_grid(const std::vector<double>& v, double h) {
  // composite Simpson; v.size() odd
  double s = v.front() + v.back();
  for (size_t i = 1; i + 1 < v.size(); ++i) s += (i % 2 ? 4.0 : 2.0) * v[i];
  return s * h / 3.0;
}

}  // namespace

Signal Signal::gaussian() {
  Signal s;
  s.kind_ = Kind::kGaussian;
  return s;
}

Signal Signal::hermite(int m) {
  specfun::hermite_fn(m, 0.0);  // validates the order
  Signal s;
  s.kind_ = Kind::kHermite;
  s.hermite_m_ = m;
  return s;
}

Signal Signal::sampled_raw(double half_width, std::vector<Complex> values) {
  if (values.size() < 3 || values.size() % 2 == 0)
    throw std::invalid_argument("sampled signal needs an odd number (>= 3) of points");
  if (!(half_width > 0)) throw std::invalid_argument("sampled signal needs half_width > 0");
  Signal s;
  s.kind_ = Kind::kSampled;
  s.half_width_ = half_width;
  s.samples_ = std::make_shared<const std::vector<Complex>>(std::move(values));
  const auto& v = *s.samples_;
  std::vector<double> sq(v.size());
  for (size_t i = 0; i < v.size(); ++i) sq[i] = std::norm(v[i]);
  const double h = 2.0 * half_width / (v.size() - 1);
  s.norm2_ = std::sqrt(simpson_grid(sq, h));
  return s;
}

Signal Signal::sampled(double half_width, std::vector<Complex> values) {
  Signal s = sampled_raw(half_width, std::move(values));
  if (!(s.norm2_ > 0)) throw std::invalid_argument("cannot normalize the zero signal");
  std::vector<Complex> v = *s.samples_;
  for (auto& z : v) z /= s.norm2_;
  s.samples_ = std::make_shared<const std::vector<Complex>>(std::move(v));
  s.norm2_ = 1.0;
  return s;
}

bool Signal::is_standard_gaussian() const {
  return kind_ == Kind::kGaussian && rho_.mu1 == 0.0 && rho_.mu2 == 0.0 &&
         scale_ == Complex{1.0, 0.0};
}

double Signal::grid_half_width() const { return half_width_; }

int Signal::grid_points() const {
  return samples_ ? static_cast<int>(samples_->size()) : kDefaultGridPoints;
}

const std::vector<Complex>& Signal::grid_values() const {
  if (!samples_) throw std::logic_error("not a sampled signal");
  return *samples_;
}

namespace {

// 6-point Lagrange interpolation on the uniform grid; zero outside.
Complex interp(const std::vector<Complex>& v, double half_width, double x) {
  const size_t n = v.size();
  const double h = 2.0 * half_width / (n - 1);
  const double pos = (x + half_width) / h;
  if (pos < -0.5 || pos > n - 0.5) return {0.0, 0.0};
  long j = static_cast<long>(std::floor(pos)) - 2;
  j = std::clamp(j, 0L, static_cast<long>(n) - 6);
  Complex sum{0.0, 0.0};
  for (int a = 0; a < 6; ++a) {
    double w = 1.0;
    for (int b = 0; b < 6; ++b)
      if (b != a) w *= (pos - (j + b)) / static_cast<double>(a - b);
    sum += w * v[j + a];
  }
  return sum;
}

double base_value(Signal::Kind kind, int m, double x) {
  if (kind == Signal::Kind::kGaussian) return kQuarterRoot2 * std::exp(-kPi * x * x);
  return specfun::hermite_fn(m, x);
}

// radius beyond which |base| is negligible (< 1e-22)
double decay_radius(const Signal& s) {
  switch (s.kind()) {
    case Signal::Kind::kGaussian:
      return 7.0;
    case Signal::Kind::kHermite:
      return std::sqrt((2.0 * s.hermite_order() + 1.0) / kTwoPi) + 7.0;
    default:
      return s.grid_half_width();
  }
}

}  // namespace

Complex Signal::operator()(double x) const {
  const double t = x - rho_.mu1;
  Complex base;
  if (kind_ == Kind::kSampled)
    base = interp(*samples_, half_width_, t);
  else
    base = Complex{base_value(kind_, hermite_m_, t), 0.0};
  if (rho_.mu1 == 0.0 && rho_.mu2 == 0.0 && scale_ == Complex{1.0, 0.0}) return base;
  return scale_ * cis(kTwoPi * rho_.mu2 * x) * base;
}

double Signal::norm(double p) const {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::invalid_argument("norm: requires 1 <= p < inf");
  // displacements are isometric: the norm is that of the base signal
  switch (kind_) {
    case Kind::kGaussian:
      return kQuarterRoot2 * std::pow(p, -0.5 / p);
    case Kind::kHermite: {
      const double r = decay_radius(*this);
      auto f = [&](double x) {
        return Complex{std::pow(std::abs(specfun::hermite_fn(hermite_m_, x)), p), 0.0};
      };
      auto q = specfun::integrate_1d(f, -r, r, 1e-13);
      return std::pow(q.value.real(), 1.0 / p);
    }
    case Kind::kSampled: {
      const auto& v = *samples_;
      std::vector<double> a(v.size());
      for (size_t i = 0; i < v.size(); ++i) a[i] = std::pow(std::abs(v[i]), p);
      const double h = 2.0 * half_width_ / (v.size() - 1);
      return std::pow(simpson_grid(a, h), 1.0 / p);
    }
  }
  return 0.0;
}

double Signal::sup_norm() const {
  switch (kind_) {
    case Kind::kGaussian:
      return kQuarterRoot2;
    case Kind::kHermite: {
      const double r = decay_radius(*this);
      double best = 0.0, bx = 0.0;
      const int n = 4096;
      for (int i = 0; i <= n; ++i) {
        const double x = -r + 2.0 * r * i / n;
        const double a = std::abs(specfun::hermite_fn(hermite_m_, x));
        if (a > best) best = a, bx = x;
      }
      double step = 2.0 * r / n;
      while (step > 1e-12) {  // local refinement around the best sample
        for (double x : {bx - 0.5 * step, bx + 0.5 * step}) {
          const double a = std::abs(specfun::hermite_fn(hermite_m_, x));
          if (a > best) best = a, bx = x;
        }
        step *= 0.5;
      }
      return best;
    }
    case Kind::kSampled: {
      double best = 0.0;
      for (const auto& z : *samples_) best = std::max(best, std::abs(z));
      return best;
    }
  }
  return 0.0;
}

Signal shift(const Signal& s, const PhasePoint& mu, const Polarization& pol) {
  const Complex pol_phase = cis(-kTwoPi * (0.5 - pol.alpha) * zeta(mu, mu));
  if (s.kind_ != Signal::Kind::kSampled) {
    Signal out = s;
    out.scale_ = s.scale_ * pol_phase * cis(-kTwoPi * zeta(mu, s.rho_));
    out.rho_ = s.rho_ + mu;
    return out;
  }
  // sampled signals are resampled with the phases applied
  const auto& v = *s.samples_;
  const size_t n = v.size();
  const double X = s.half_width_;
  const double h = 2.0 * X / (n - 1);
  double sup = 0.0;
  for (const auto& z : v) sup = std::max(sup, std::abs(z));
  // mass moved past the grid edge must already be decayed
  double edge = 0.0;
  if (mu.mu1 > 0) {
    for (double x = X - mu.mu1; x <= X + 0.5 * h; x += h)
      edge = std::max(edge, std::abs(interp(v, X, x)));
  } else if (mu.mu1 < 0) {
    for (double x = -X; x <= -X - mu.mu1 + 0.5 * h; x += h)
      edge = std::max(edge, std::abs(interp(v, X, x)));
  }
  if (edge > 1e-10 * std::max(sup, 1e-300))
    throw GridOverflowError("shift: displacement pushes non-decayed samples off the grid");

  std::vector<Complex> out(n);
  for (size_t i = 0; i < n; ++i) {
    const double x = -X + h * i;
    out[i] = pol_phase * cis(kTwoPi * mu.mu2 * x) * interp(v, X, x - mu.mu1);
  }
  Signal r = Signal::sampled_raw(X, std::move(out));
  return r;
}

Complex gaussian_ambiguity(const PhasePoint& nu, const Polarization& pol) {
  return std::exp(-0.5 * kPi * nu.norm2()) * cis(kTwoPi * pol.alpha * zeta(nu, nu));
}

Complex ambiguity(const Signal& g, const Signal& gamma, const PhasePoint& mu,
                  const Polarization& pol, double tol) {
  if (g.is_standard_gaussian() && gamma.is_standard_gaussian())
    return gaussian_ambiguity(mu, pol);
  const Signal shifted = shift(gamma, mu, pol);
  return Signal::inner(g, shifted, tol);
}

Complex Signal::inner(const Signal& a, const Signal& b, double tol) {
  if (a.kind_ == Kind::kSampled && b.kind_ == Kind::kSampled &&
      a.half_width_ == b.half_width_ && a.samples_->size() == b.samples_->size()) {
    const auto& va = *a.samples_;
    const auto& vb = *b.samples_;
    const double h = 2.0 * a.half_width_ / (va.size() - 1);
    Complex s = std::conj(va.front()) * vb.front() + std::conj(va.back()) * vb.back();
    for (size_t i = 1; i + 1 < va.size(); ++i)
      s += (i % 2 ? 4.0 : 2.0) * std::conj(va[i]) * vb[i];
    return s * h / 3.0;
  }
  const double ra = decay_radius(a) + std::abs(a.rho_.mu1);
  const double rb = decay_radius(b) + std::abs(b.rho_.mu1);
  const double r = std::min(std::max(ra, rb), 64.0);
  auto f = [&](double x) { return std::conj(a(x)) * b(x); };
  return specfun::integrate_1d(f, -r, r, tol).value;
}

Complex symplectic_fourier(const PlaneFunction& F, const PhasePoint& mu, double tol) {
  if (!std::isfinite(F.support.x0) || !std::isfinite(F.support.x1) ||
      !std::isfinite(F.support.y0) || !std::isfinite(F.support.y1))
    throw std::invalid_argument("symplectic_fourier: support must be bounded");
  auto f = [&](double nu1, double nu2) {
    return cis(-kTwoPi * eta(PhasePoint{nu1, nu2}, mu)) * F.f(nu1, nu2);
  };
  return specfun::integrate_2d(f, F.support, tol).value;
}

}  // namespace tfchan::tfcore
