#pragma once

#include <functional>
#include <vector>

#include "tfchan/quadrature.hpp"

namespace tfchan::channel {

/// A measurable spreading-support set U of finite nonzero measure:
/// centered rectangle, centered square, centered disc, or the K x K
/// grid-cell union of the finite spreading model.
class SupportRegion {
 public:
  enum class Shape { kRect, kCenteredSquare, kDisc, kGridUnion };

  /// Rectangle [-tau_half, tau_half] x [-nu_half, nu_half].
  static SupportRegion centered_rect(double tau_half, double nu_half);
  static SupportRegion centered_square_of_measure(double measure);
  static SupportRegion disc_of_measure(double measure);
  /// Disjoint cells u*(k + (1/2,1/2)) + [0,u]^2 for k in {0..K-1}^2;
  /// a square of side K*u anchored at (u/2, u/2).
  static SupportRegion grid_union(int K, double u);

  Shape shape() const { return shape_; }
  double measure() const { return measure_; }
  bool origin_symmetric() const { return origin_symmetric_; }
  bool contains(double x, double y) const;
  specfun::Rect bounding() const { return bounding_; }
  int grid_order() const { return grid_k_; }
  double cell_size() const { return grid_u_; }
  specfun::Rect cell(int k1, int k2) const;

  /// Axis-aligned rectangle decomposition when one exists (rect, square,
  /// grid union); empty for the disc.
  std::vector<specfun::Rect> rect_pieces() const;

  /// Integral of f over the region within tol; polar parametrization for
  /// the disc, per-rectangle elsewhere.
  specfun::QuadratureResult integrate(const std::function<Complex(double, double)>& f,
                                      double tol) const;

  /// Essential supremum of a continuous function over the region: Halton
  /// sampling (2^14 points) plus shape corner/boundary candidates and
  /// local pattern refinement.
  double sup(const std::function<double(double, double)>& f) const;

 private:
  Shape shape_ = Shape::kCenteredSquare;
  double measure_ = 1.0;
  bool origin_symmetric_ = true;
  specfun::Rect bounding_;
  double disc_radius_ = 0.0;
  int grid_k_ = 0;
  double grid_u_ = 0.0;
};

}  // namespace tfchan::channel
