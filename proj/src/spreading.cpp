#include "tfchan/spreading.hpp"

#include <cmath>

namespace tfchan::channel {

using tfcore::cis;
using tfcore::kTwoPi;

SpreadingFunction SpreadingFunction::grid_model(int K, double u,
                                                std::vector<Complex> coeff,
                                                tfcore::Polarization pol) {
  if (static_cast<int>(coeff.size()) != K * K)
    throw std::invalid_argument("grid_model: needs K^2 coefficients");
  SpreadingFunction s;
  s.support_ = SupportRegion::grid_union(K, u);
  s.pol_ = pol;
  s.is_grid_ = true;
  s.K_ = K;
  s.u_ = u;
  s.coeff_ = std::move(coeff);
  for (int k1 = 0; k1 < K; ++k1)
    for (int k2 = 0; k2 < K; ++k2) {
      SpreadingPiece p;
      p.box = s.support_.cell(k1, k2);
      p.constant = true;
      p.value = s.coeff_[static_cast<size_t>(k1) * K + k2];
      p.f = [v = p.value](double, double) { return v; };
      s.pieces_.push_back(std::move(p));
    }
  return s;
}

SpreadingFunction SpreadingFunction::closed_form(SupportRegion support,
                                                 std::function<Complex(double, double)> f,
                                                 tfcore::Polarization pol) {
  SpreadingFunction s;
  s.support_ = support;
  s.pol_ = pol;
  SpreadingPiece p;
  p.box = support.bounding();
  if (support.shape() == SupportRegion::Shape::kDisc) {
    // indicator folded into the piece; adaptive quadrature absorbs the edge
    p.f = [support, f](double x, double y) {
      return support.contains(x, y) ? f(x, y) : Complex{0.0, 0.0};
    };
  } else {
    p.f = f;
  }
  s.pieces_.push_back(std::move(p));
  return s;
}

Complex SpreadingFunction::eval(double x, double y) const {
  if (!support_.contains(x, y)) return {0.0, 0.0};
  if (is_grid_) {
    const int k1 =
        std::clamp(static_cast<int>(std::floor(x / u_ + 0.5 * K_)), 0, K_ - 1);
    const int k2 =
        std::clamp(static_cast<int>(std::floor(y / u_ + 0.5 * K_)), 0, K_ - 1);
    return coeff_[static_cast<size_t>(k1) * K_ + k2];
  }
  return pieces_.front().f(x, y);
}

SpreadingFunction SpreadingFunction::adjoint() const {
  SpreadingFunction s;
  s.pol_ = pol_;
  const double alpha = pol_.alpha;
  s.support_ = support_;  // every supported shape is its own mirror
  for (const auto& p : pieces_) {
    SpreadingPiece q;
    q.box = {-p.box.x1, -p.box.x0, -p.box.y1, -p.box.y0};
    auto inner = p.f;
    q.f = [inner, alpha](double x, double y) {
      return std::conj(inner(-x, -y)) * cis(-2.0 * kTwoPi * alpha * x * y);
    };
    if (p.constant && alpha == 0.0) {
      q.constant = true;
      q.value = std::conj(p.value);
    }
    s.pieces_.push_back(std::move(q));
  }
  return s;
}

SpreadingFunction SpreadingFunction::repolarized(tfcore::Polarization pol) const {
  if (pol.alpha == pol_.alpha) return *this;
  SpreadingFunction s;
  s.support_ = support_;
  s.pol_ = pol;
  const double shift = pol_.alpha - pol.alpha;
  for (const auto& p : pieces_) {
    SpreadingPiece q;
    q.box = p.box;
    auto inner = p.f;
    q.f = [inner, shift](double x, double y) {
      return inner(x, y) * cis(kTwoPi * shift * x * y);
    };
    s.pieces_.push_back(std::move(q));
  }
  return s;
}

double spreading_norm(const SpreadingFunction& S, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("spreading_norm: requires q >= 1");
  if (S.is_grid()) {
    const auto& c = S.coefficients();
    if (std::isinf(q)) {
      double m = 0.0;
      for (const auto& z : c) m = std::max(m, std::abs(z));
      return m;
    }
    double s = 0.0;
    for (const auto& z : c) s += std::pow(std::abs(z), q);
    return std::pow(S.cell_size(), 2.0 / q) * std::pow(s, 1.0 / q);
  }
  if (std::isinf(q))
    return S.support().sup([&](double x, double y) { return std::abs(S.eval(x, y)); });
  auto f = [&](double x, double y) {
    return Complex{std::pow(std::abs(S.eval(x, y)), q), 0.0};
  };
  return std::pow(S.support().integrate(f, 1e-10).value.real(), 1.0 / q);
}

}  // namespace tfchan::channel
