#include "tfchan/bounds.hpp"

#include <cmath>

#include "tfchan/special.hpp"

namespace tfchan::bounds {

using channel::dual_index;
using channel::SpreadingPiece;
using tfcore::cis;
using tfcore::kPi;
using tfcore::kTwoPi;

namespace {

constexpr double kGaussSup = 1.18920711500272106671749997056;  // 2^{1/4}
constexpr double kE = 2.71828182845904523536;

bool standard_gaussian_pair(const BoundInputs& in) {
  return in.g.is_standard_gaussian() && in.gamma.is_standard_gaussian();
}

// A_k profile: A_1 = |A_{g gamma}|^2 (C1), A_2 = Re A_{g gamma} (C2)
double ak_value(const BoundInputs& in, double x, double y, double inner_tol) {
  const PhasePoint nu{x, y};
  Complex a;
  if (standard_gaussian_pair(in))
    a = tfcore::gaussian_ambiguity(nu, in.alpha);
  else
    a = tfcore::ambiguity(in.g, in.gamma, nu, in.alpha, inner_tol);
  return in.tag.kind == CaseTag::Kind::kOrthogonal ? std::norm(a) : a.real();
}

// squared residual profile R on U (without the indicator)
double residual_value(const BoundInputs& in, double x, double y, double inner_tol) {
  if (in.tag.kind != CaseTag::Kind::kCustom)
    return in.tag.k() * (1.0 - ak_value(in, x, y, inner_tol));
  const PhasePoint nu{x, y};
  const Complex a = standard_gaussian_pair(in)
                        ? tfcore::gaussian_ambiguity(nu, in.alpha)
                        : tfcore::ambiguity(in.g, in.gamma, nu, in.alpha, inner_tol);
  const Complex b = in.tag.custom_b(x, y);
  return 1.0 + std::norm(b) - 2.0 * (a * std::conj(b)).real();
}

bool closed_r1_available(const BoundInputs& in) {
  if (!standard_gaussian_pair(in)) return false;
  if (in.tag.kind == CaseTag::Kind::kOrthogonal) {
    // A_1 is alpha-independent
  } else if (in.tag.kind == CaseTag::Kind::kWeylSymbol) {
    if (in.alpha.alpha != 0.0) return false;
  } else {
    return false;
  }
  return in.U.shape() == SupportRegion::Shape::kDisc ||
         in.U.shape() == SupportRegion::Shape::kCenteredSquare;
}

double closed_r1(const BoundInputs& in) {
  const int k = in.tag.k();
  const double m = in.U.measure();
  const double l = in.U.shape() == SupportRegion::Shape::kDisc
                       ? specfun::laguerre_disc_mass(2.0 * m / k)
                       : specfun::laguerre_square_mass(2.0 * m / k);
  return k * m * (1.0 - l);
}

}  // namespace

double distortion_sup(const BoundInputs& in) {
  if (standard_gaussian_pair(in) && in.tag.kind != CaseTag::Kind::kCustom)
    return 2.0 * kGaussSup;  // 32^{1/4}
  double b_sup = 1.0;  // ||A_{g gamma}||_inf <= 1 covers C1; B = 1 for C2
  if (in.tag.kind == CaseTag::Kind::kCustom)
    b_sup = in.U.sup([&](double x, double y) { return std::abs(in.tag.custom_b(x, y)); });
  return in.gamma.sup_norm() + b_sup * in.g.sup_norm();
}

double residual_moment(const BoundInputs& in, double s, double tol) {
  if (!(s > 0)) throw std::invalid_argument("residual_moment: requires s > 0");
  const double inner_tol = 1e-11;
  if (std::isinf(s))
    return in.U.sup([&](double x, double y) { return residual_value(in, x, y, inner_tol); });
  if (s == 1.0 && closed_r1_available(in)) return closed_r1(in);
  auto f = [&](double x, double y) {
    return Complex{std::pow(std::max(residual_value(in, x, y, inner_tol), 0.0), s), 0.0};
  };
  return std::pow(in.U.integrate(f, tol).value.real(), 1.0 / s);
}

HolderConstant holder_constant(double p, double q, double r_inf, double u_measure, int k) {
  HolderConstant h;
  if (q <= 1.0) return h;  // q' infinite: the interpolation step is void
  const double qp = dual_index(q);
  h.applicable = true;
  if (p <= qp) {
    h.value = std::pow(r_inf, (qp - p) / (qp * p));
    h.uniform_cap = k;
  } else {
    h.value = std::pow(u_measure, (p - qp) / (qp * p));
    h.uniform_cap = std::max(u_measure, 1.0);
  }
  return h;
}

double bound_residual_moment(const BoundInputs& in, double tol) {
  if (in.p < 2.0 || std::isinf(in.p)) return kInapplicable;
  const double qp = dual_index(in.q);
  const double c = distortion_sup(in);
  const double s = std::isinf(qp) ? qp : qp / in.p;
  const double r = residual_moment(in, s, tol);
  return std::pow(c, (in.p - 2.0) / in.p) * std::pow(r, 1.0 / in.p);
}

double bound_ambiguity_deficit(const BoundInputs& in, double tol) {
  if (in.p < 2.0 || std::isinf(in.p) || in.q <= 1.0 || in.U.measure() > 1.0)
    return kInapplicable;
  if (in.tag.kind == CaseTag::Kind::kCustom) return kInapplicable;
  const int k = in.tag.k();
  const double qp = dual_index(in.q);
  const double c = distortion_sup(in);
  const double r1 = residual_moment(in, 1.0, tol);
  return std::pow(c, (in.p - 2.0) / in.p) * k * std::pow(r1, 1.0 / std::max(qp, in.p));
}

double gaussian_localization_level(const SupportRegion& U, int k) {
  switch (U.shape()) {
    case SupportRegion::Shape::kDisc:
      return specfun::laguerre_disc_mass(2.0 * U.measure() / k);
    case SupportRegion::Shape::kCenteredSquare:
      return specfun::laguerre_square_mass(2.0 * U.measure() / k);
    case SupportRegion::Shape::kRect: {
      // (1/|U|) integral over U of e^{-pi |nu|^2 / k}
      const auto box = U.bounding();
      return k * std::erf(std::sqrt(kPi / k) * box.x1) *
             std::erf(std::sqrt(kPi / k) * box.y1) / U.measure();
    }
    default:
      throw std::invalid_argument("localization level needs an origin-symmetric shape");
  }
}

double bound_gauss_laguerre(const BoundInputs& in, double L) {
  if (in.p < 2.0 || std::isinf(in.p) || in.q <= 1.0 || in.U.measure() > 1.0)
    return kInapplicable;
  if (!in.U.origin_symmetric() || in.tag.kind == CaseTag::Kind::kCustom)
    return kInapplicable;
  const int k = in.tag.k();
  const double qp = dual_index(in.q);
  return std::pow(32.0, (in.p - 2.0) / (4.0 * in.p)) * k *
         std::pow(k * in.U.measure() * (1.0 - L), 1.0 / std::max(qp, in.p));
}

double bound_uniform(const BoundInputs& in) {
  if (in.q <= 1.0) return kInapplicable;
  if (in.tag.kind == CaseTag::Kind::kCustom) return kInapplicable;
  const int k = in.tag.k();
  const double qp = dual_index(in.q);
  const double c = distortion_sup(in);
  return std::pow(c, (in.p - 2.0) / in.p) * std::pow(k, 2.0 / in.p) *
         std::pow(in.U.measure(), 1.0 / qp);
}

namespace {

specfun::Rect minkowski_hull(const SpreadingFunction& a, const SpreadingFunction& b) {
  specfun::Rect h{1e300, -1e300, 1e300, -1e300};
  for (const auto& pa : a.pieces())
    for (const auto& pb : b.pieces()) {
      h.x0 = std::min(h.x0, pa.box.x0 + pb.box.x0);
      h.x1 = std::max(h.x1, pa.box.x1 + pb.box.x1);
      h.y0 = std::min(h.y0, pa.box.y0 + pb.box.y0);
      h.y1 = std::max(h.y1, pa.box.y1 + pb.box.y1);
    }
  return h;
}

double omega_value(const tfcore::Signal& gamma, const PhasePoint& nu, double alpha,
                   double tol) {
  Complex a;
  if (gamma.is_standard_gaussian())
    a = tfcore::gaussian_ambiguity(nu, tfcore::Polarization{alpha});
  else
    a = tfcore::ambiguity(gamma, gamma, nu, tfcore::Polarization{alpha}, tol);
  return std::abs(a - Complex{1.0, 0.0});
}

}  // namespace

double bound_symbol_calculus(const SpreadingFunction& S, const Signal& gamma,
                             const PhasePoint& mu, double tol) {
  const double alpha = S.polarization().alpha;
  const auto adj = S.adjoint();
  const auto diff_hull = minkowski_hull(adj, S);
  const double area = std::max(diff_hull.area(), 1e-12);
  const double tw_tol = 0.1 * tol / area;

  const Complex lh = channel::weyl_symbol(S, mu, 0.05 * tol);
  auto twisted = [&](double r1, double r2) {
    return channel::twisted_convolution(adj, S, PhasePoint{r1, r2}, tw_tol);
  };

  // L_{H*H}(mu)
  auto f_symbol = [&](double r1, double r2) {
    return twisted(r1, r2) * cis(-kTwoPi * tfcore::eta(PhasePoint{r1, r2}, mu));
  };
  const Complex lhh = specfun::integrate_2d(f_symbol, diff_hull, 0.2 * tol).value;

  // ||Sigma_{H*H} Omega||_1
  auto f_omega = [&](double r1, double r2) {
    return Complex{std::abs(twisted(r1, r2)) *
                       omega_value(gamma, PhasePoint{r1, r2}, alpha, 1e-10),
                   0.0};
  };
  const double hh_omega = specfun::integrate_2d(f_omega, diff_hull, 0.2 * tol).value.real();

  // ||Sigma_H Omega||_1
  double h_omega = 0.0;
  for (const auto& piece : S.pieces()) {
    auto f = [&](double x, double y) {
      return Complex{std::abs(piece.f(x, y)) *
                         omega_value(gamma, PhasePoint{x, y}, alpha, 1e-10),
                     0.0};
    };
    h_omega +=
        specfun::integrate_2d(f, piece.box, 0.1 * tol / S.pieces().size()).value.real();
  }

  const double term1 = std::abs(lhh - Complex{std::norm(lh), 0.0});
  return std::sqrt(term1 + hh_omega + 2.0 * std::abs(lh) * h_omega);
}

double kozek_simplified(const SupportRegion& U) {
  if (U.measure() > 1.0 || !U.origin_symmetric()) return kInapplicable;
  if (U.shape() != SupportRegion::Shape::kRect &&
      U.shape() != SupportRegion::Shape::kCenteredSquare)
    return kInapplicable;
  const auto box = U.bounding();
  const double corner = box.x1 * box.x1 + box.y1 * box.y1;
  const double eps = 1.0 - std::exp(-0.5 * kPi * corner);
  return std::sqrt(2.0 * std::sin(0.25 * kPi * U.measure()) + 3.0 * eps);
}

KozekBound bound_kozek(const SpreadingFunction& S, const Signal& gamma,
                       const SupportRegion& U, double tol) {
  KozekBound kb;
  if (S.polarization().alpha != 0.0) return kb;
  if (U.measure() > 1.0 || !U.origin_symmetric()) return kb;
  if (U.shape() != SupportRegion::Shape::kRect &&
      U.shape() != SupportRegion::Shape::kCenteredSquare)
    return kb;
  kb.applicable = true;

  const double eps = U.sup(
      [&](double x, double y) { return omega_value(gamma, PhasePoint{x, y}, 0.0, 1e-10); });
  const double sin_term = 2.0 * std::sin(0.25 * kPi * U.measure());
  kb.simplified = std::sqrt(sin_term + 3.0 * eps);

  const double norm1 = spreading_norm(S, 1.0);
  const auto adj = S.adjoint();
  const auto diff_hull = minkowski_hull(adj, S);
  auto f = [&](double r1, double r2) {
    return Complex{
        std::abs(channel::twisted_convolution(adj, S, PhasePoint{r1, r2},
                                              0.2 * tol / std::max(diff_hull.area(), 1e-12))),
        0.0};
  };
  const double hh_norm1 = specfun::integrate_2d(f, diff_hull, 0.5 * tol).value.real();
  kb.full = std::sqrt(sin_term * norm1 * norm1 + eps * (hh_norm1 + 2.0 * norm1 * norm1));
  return kb;
}

SizeBand critical_size_band(double u_measure) {
  if (!(u_measure > 0))
    throw std::invalid_argument("critical_size_band: requires |U| > 0");
  const double n2 =
      u_measure <= kE ? std::exp(-u_measure / kE) : 1.0 / u_measure;
  return {std::sqrt(u_measure - u_measure * n2), std::sqrt(u_measure)};
}

double approx_product_defect(const SpreadingFunction& Sx, const SpreadingFunction& Sy,
                             double p, double tol) {
  if (!(p >= 1.0) || !(p <= 2.0))
    throw std::invalid_argument("approx_product_defect: requires 1 <= p <= 2");
  if (Sx.polarization().alpha != Sy.polarization().alpha)
    throw channel::ContractViolation("approx_product_defect: mismatched polarizations");
  const double alpha = Sx.polarization().alpha;

  auto big_f = [&](double r1, double r2) {
    const PhasePoint rho{r1, r2};
    double total = 0.0;
    for (const auto& px : Sx.pieces())
      for (const auto& py : Sy.pieces()) {
        const specfun::Rect shifted{r1 + py.box.x0, r1 + py.box.x1, r2 + py.box.y0,
                                    r2 + py.box.y1};
        const auto clip = specfun::intersect(px.box, shifted);
        if (clip.empty()) continue;
        auto f = [&](double m1, double m2) {
          const PhasePoint mu{m1, m2};
          return Complex{std::abs(px.f(m1, m2)) * std::abs(py.f(m1 - r1, m2 - r2)) *
                             std::abs(std::sin(kTwoPi * channel::twisted_phase(mu, rho, alpha))),
                         0.0};
        };
        total += specfun::integrate_2d(f, clip, 0.02 * tol).value.real();
      }
    return total;
  };

  // rho ranges over (supp X) - (supp Y)
  specfun::Rect dom{1e300, -1e300, 1e300, -1e300};
  for (const auto& px : Sx.pieces())
    for (const auto& py : Sy.pieces()) {
      dom.x0 = std::min(dom.x0, px.box.x0 - py.box.x1);
      dom.x1 = std::max(dom.x1, px.box.x1 - py.box.x0);
      dom.y0 = std::min(dom.y0, px.box.y0 - py.box.y1);
      dom.y1 = std::max(dom.y1, px.box.y1 - py.box.y0);
    }
  auto fp = [&](double r1, double r2) {
    return Complex{std::pow(big_f(r1, r2), p), 0.0};
  };
  const double norm_f = std::pow(specfun::integrate_2d(fp, dom, tol).value.real(), 1.0 / p);

  const double pp = dual_index(p);
  const double cp2 =
      std::pow(p, 1.0 / p) / (std::isinf(pp) ? 1.0 : std::pow(pp, 1.0 / pp));
  return 2.0 * cp2 * norm_f;
}

double interference_bound(double f_norm_pprime, double p, double q, double u_measure,
                          double c_q, double L) {
  const double qp = dual_index(q);
  const double af = f_norm_pprime * std::pow(32.0, (p - 2.0) / (4.0 * p));
  const double u_pow_q = std::isinf(q) ? 1.0 : std::pow(u_measure, 1.0 / q);
  return af * std::pow(u_measure * (1.0 - L * L), 1.0 / std::max(qp, p)) * u_pow_q * c_q;
}

BoundReport assemble_report(const BoundInputs& in, double tol) {
  BoundReport rep;
  auto push = [&](const std::string& name, double value, const std::string& note) {
    BoundRow row;
    row.name = name;
    row.value = value;
    row.applicable = std::isfinite(value);
    row.note = note;
    rep.push_back(std::move(row));
  };

  push("uniform", bound_uniform(in), in.q <= 1.0 ? "needs q > 1" : "");
  push("residual_moment", bound_residual_moment(in, tol),
       in.p < 2.0 ? "needs p >= 2" : "");
  {
    std::string note;
    if (in.U.measure() > 1.0) note = "needs |U| <= 1";
    push("ambiguity_deficit", bound_ambiguity_deficit(in, tol), note);
  }
  {
    double gl = kInapplicable;
    std::string note;
    if (!in.U.origin_symmetric()) {
      note = "needs origin-symmetric U";
    } else if (in.tag.kind != CaseTag::Kind::kCustom) {
      gl = bound_gauss_laguerre(in, gaussian_localization_level(in.U, in.tag.k()));
    }
    push("gauss_laguerre", gl, note);
  }
  {
    double kz = kInapplicable;
    std::string note;
    if (in.alpha.alpha != 0.0) {
      note = "stated for alpha = 0";
    } else {
      kz = kozek_simplified(in.U);
      if (!std::isfinite(kz))
        note = in.U.shape() == SupportRegion::Shape::kDisc ? "n/a (non-rect)"
                                                           : "n/a (needs |U| <= 1)";
    }
    push("kozek", kz, note);
  }
  push("symbol_calculus", kInapplicable, "n/a (needs a channel realization)");
  return rep;
}

}  // namespace tfchan::bounds
