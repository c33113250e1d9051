#include "tfchan/region.hpp"

#include <algorithm>
#include <cmath>

namespace tfchan::channel {

namespace {
constexpr double kPi = 3.14159265358979323846;

double halton(long i, int base) {
  double f = 1.0, r = 0.0;
  for (long n = i; n > 0; n /= base) {
    f /= base;
    r += f * (n % base);
  }
  return r;
}
}  // namespace

SupportRegion SupportRegion::centered_rect(double tau_half, double nu_half) {
  if (!(tau_half > 0) || !(nu_half > 0))
    throw std::invalid_argument("centered_rect: half-widths must be positive");
  SupportRegion r;
  r.shape_ = Shape::kRect;
  r.measure_ = 4.0 * tau_half * nu_half;
  r.origin_symmetric_ = true;
  r.bounding_ = {-tau_half, tau_half, -nu_half, nu_half};
  return r;
}

SupportRegion SupportRegion::centered_square_of_measure(double measure) {
  if (!(measure > 0)) throw std::invalid_argument("square: measure must be positive");
  const double h = 0.5 * std::sqrt(measure);
  SupportRegion r = centered_rect(h, h);
  r.shape_ = Shape::kCenteredSquare;
  r.measure_ = measure;
  return r;
}

SupportRegion SupportRegion::disc_of_measure(double measure) {
  if (!(measure > 0)) throw std::invalid_argument("disc: measure must be positive");
  SupportRegion r;
  r.shape_ = Shape::kDisc;
  r.measure_ = measure;
  r.origin_symmetric_ = true;
  r.disc_radius_ = std::sqrt(measure / kPi);
  r.bounding_ = {-r.disc_radius_, r.disc_radius_, -r.disc_radius_, r.disc_radius_};
  return r;
}

SupportRegion SupportRegion::grid_union(int K, double u) {
  if (K < 1 || !(u > 0)) throw std::invalid_argument("grid_union: needs K >= 1, u > 0");
  SupportRegion r;
  r.shape_ = Shape::kGridUnion;
  r.grid_k_ = K;
  r.grid_u_ = u;
  r.measure_ = K * K * u * u;
  const double h = 0.5 * K * u;
  r.bounding_ = {-h, h, -h, h};
  // cell-wise symmetry test: the mirror of cell k is cell K-1-k
  r.origin_symmetric_ = true;
  for (int k1 = 0; k1 < K && r.origin_symmetric_; ++k1)
    for (int k2 = 0; k2 < K; ++k2) {
      const auto c = r.cell(k1, k2);
      const auto m = r.cell(K - 1 - k1, K - 1 - k2);
      if (std::abs(c.x0 + m.x1) > 1e-12 * u || std::abs(c.y0 + m.y1) > 1e-12 * u) {
        r.origin_symmetric_ = false;
        break;
      }
    }
  return r;
}

specfun::Rect SupportRegion::cell(int k1, int k2) const {
  // grid origin -u (K+1)/2 plus the unit-cell offset l = k + (1/2, 1/2):
  // the union tiles the centered square [-K u / 2, K u / 2]^2
  const double a1 = grid_u_ * (k1 - 0.5 * grid_k_);
  const double a2 = grid_u_ * (k2 - 0.5 * grid_k_);
  return {a1, a1 + grid_u_, a2, a2 + grid_u_};
}

bool SupportRegion::contains(double x, double y) const {
  switch (shape_) {
    case Shape::kRect:
    case Shape::kCenteredSquare:
    case Shape::kGridUnion:
      return x >= bounding_.x0 && x <= bounding_.x1 && y >= bounding_.y0 &&
             y <= bounding_.y1;
    case Shape::kDisc:
      return x * x + y * y <= disc_radius_ * disc_radius_;
  }
  return false;
}

std::vector<specfun::Rect> SupportRegion::rect_pieces() const {
  std::vector<specfun::Rect> out;
  switch (shape_) {
    case Shape::kRect:
    case Shape::kCenteredSquare:
      out.push_back(bounding_);
      break;
    case Shape::kGridUnion:
      for (int k1 = 0; k1 < grid_k_; ++k1)
        for (int k2 = 0; k2 < grid_k_; ++k2) out.push_back(cell(k1, k2));
      break;
    case Shape::kDisc:
      break;
  }
  return out;
}

specfun::QuadratureResult SupportRegion::integrate(
    const std::function<Complex(double, double)>& f, double tol) const {
  if (shape_ == Shape::kDisc) {
    const double R = disc_radius_;
    auto polar = [&](double theta, double r) {
      return r * f(r * std::cos(theta), r * std::sin(theta));
    };
    return specfun::integrate_2d(polar, {0.0, 2.0 * kPi, 0.0, R}, tol);
  }
  auto pieces = rect_pieces();
  specfun::QuadratureResult total;
  for (const auto& box : pieces) {
    auto r = specfun::integrate_2d(f, box, tol / pieces.size());
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
  }
  return total;
}

double SupportRegion::sup(const std::function<double(double, double)>& f) const {
  double best = -std::numeric_limits<double>::infinity();
  double bx = 0.0, by = 0.0;
  auto consider = [&](double x, double y) {
    if (!contains(x, y)) return;
    const double v = f(x, y);
    if (v > best) best = v, bx = x, by = y;
  };
  // Halton samples over the bounding box
  const long n = 1L << 14;
  for (long i = 1; i <= n; ++i) {
    const double x = bounding_.x0 + bounding_.width() * halton(i, 2);
    const double y = bounding_.y0 + bounding_.height() * halton(i, 3);
    consider(x, y);
  }
  // shape candidates: center, corners, boundary extremes
  consider(0.0, 0.0);
  consider(bounding_.x0, bounding_.y0);
  consider(bounding_.x0, bounding_.y1);
  consider(bounding_.x1, bounding_.y0);
  consider(bounding_.x1, bounding_.y1);
  if (shape_ == Shape::kDisc) {
    for (int i = 0; i < 256; ++i) {
      const double t = 2.0 * kPi * i / 256;
      consider(disc_radius_ * std::cos(t), disc_radius_ * std::sin(t));
    }
  }
  // local pattern refinement
  double step = 0.25 * std::max(bounding_.width(), bounding_.height());
  while (step > 1e-9 * std::max(bounding_.width(), bounding_.height())) {
    const double cx = bx, cy = by;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        consider(cx + step * dx, cy + step * dy);
    step *= 0.5;
  }
  return best;
}

}  // namespace tfchan::channel
