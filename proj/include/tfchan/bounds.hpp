#pragma once

#include <limits>
#include <string>
#include <vector>

#include "tfchan/channel.hpp"

namespace tfchan::bounds {

using channel::CaseTag;
using channel::SpreadingFunction;
using channel::SupportRegion;
using tfcore::PhasePoint;
using tfcore::Polarization;
using tfcore::Signal;

inline constexpr double kInapplicable = std::numeric_limits<double>::infinity();

/// Everything the analytic bounds on E_p(mu)/||Sigma||_q depend on.
struct BoundInputs {
  Signal g = Signal::gaussian();
  Signal gamma = Signal::gaussian();
  CaseTag tag = CaseTag::c1();
  SupportRegion U = SupportRegion::disc_of_measure(0.01);
  double p = 2.0;
  double q = 2.0;
  Polarization alpha{};
};

/// sup_{x, nu in U} |(S_nu^{(alpha)} gamma)(x) - B(nu) g(x)|: the analytic
/// value 32^{1/4} for standard-Gaussian g = gamma, the worst-case estimate
/// ||gamma||_inf + ||B||_inf ||g||_inf otherwise.
double distortion_sup(const BoundInputs& in);

/// s-th moment R_s = ||R||_s of the pointwise squared-residual profile
/// R = (1 + |B|^2 - 2 Re(A_{g gamma} conj(B))) chi_U  (= k (1 - A_k) chi_U
/// for C1/C2). s = inf gives the essential sup. Closed forms are used for
/// standard-Gaussian signaling with disc/square support at s = 1.
double residual_moment(const BoundInputs& in, double s, double tol = 1e-9);

struct HolderConstant {
  double value = kInapplicable;
  double uniform_cap = kInapplicable;
  bool applicable = false;
};

/// The interpolation constant C_pq: R_inf^{(q'-p)/(q'p)} for p <= q', else
/// |U|^{(p-q')/(q'p)}; uniform caps k (q' >= p) and max(|U|,1) otherwise.
/// Inapplicable at q = 1.
HolderConstant holder_constant(double p, double q, double r_inf, double u_measure,
                               int k);

/// C^{(p-2)/p} * R_{q'/p}^{1/p}, 2 <= p < inf (the moment-form bound whose
/// minimum over B at p = 2 is attained by C1).
double bound_residual_moment(const BoundInputs& in, double tol = 1e-9);

/// C^{(p-2)/p} * k * (k(|U| - <A_k, chi_U>))^{1/max(q',p)} for |U| <= 1,
/// q > 1, 2 <= p < inf.
double bound_ambiguity_deficit(const BoundInputs& in, double tol = 1e-9);

/// 32^{(p-2)/(4p)} * k * (k |U| (1 - L))^{1/max(q',p)} for origin-symmetric
/// U, |U| <= 1, q > 1, 2 <= p < inf. L is the caller's localization level
/// (Laguerre eigenvalue bound or the disc/square closed form).
double bound_gauss_laguerre(const BoundInputs& in, double L);

/// Gaussian-signaling localization level (1/|U|) <chi_U, e^{-pi s_0 / k}>:
/// closed forms for disc, centered square and centered rectangle.
double gaussian_localization_level(const SupportRegion& U, int k);

/// ||V||_inf^{(p-2)/p} * k^{2/p} * |U|^{1/q'}, q > 1: the benchmark bound,
/// independent of pulse localization.
double bound_uniform(const BoundInputs& in);

/// Symbol-calculus route for g = gamma, p = 2:
/// sqrt(|L_{H*H}(mu) - |L_H(mu)|^2| + ||Sigma_{H*H} Omega||_1
///      + 2 |L_H(mu)| ||Sigma_H Omega||_1),  Omega = |A_{gamma gamma} - 1|.
double bound_symbol_calculus(const SpreadingFunction& S, const Signal& gamma,
                             const PhasePoint& mu, double tol);

struct KozekBound {
  double full = kInapplicable;        // bound on E_2(mu) itself
  double simplified = kInapplicable;  // bound on E_2(mu)/||Sigma||_1
  bool applicable = false;
};

/// Kozek's bound for a centered rectangle, alpha = 0, g = gamma, |U| <= 1:
/// full form (2 sin(pi|U|/4) ||Sigma||_1^2 + eps (||Sigma_{H*H}||_1 +
/// 2 ||Sigma||_1^2))^{1/2} and the ratio form (2 sin(pi|U|/4) + 3 eps)^{1/2},
/// eps = ||(A_{gamma gamma} - 1) chi_U||_inf.
KozekBound bound_kozek(const SpreadingFunction& S, const Signal& gamma,
                       const SupportRegion& U, double tol = 1e-7);

/// Ratio form alone from the support geometry (no channel realization
/// needed; Gaussian gamma).
double kozek_simplified(const SupportRegion& U);

struct SizeBand {
  double lower = 0.0;
  double upper = 0.0;
};

/// Bracket for the C1, p = q = 2 moment bound over all admissible pulses:
/// lower = sqrt(|U| - |U| N_2(|U|)) (saturating at sqrt(|U|-1) past |U| = e),
/// upper = sqrt(|U|).
SizeBand critical_size_band(double u_measure);

/// Approximate-product-rule defect bound 2 c_p^2 ||F||_p with
/// F(rho) = integral |Sigma_X(mu) Sigma_Y(mu - rho) sin(2 pi phi(mu, rho))| dmu
/// and c_p^2 = p^{1/p} / p'^{1/p'}, 1 <= p <= 2.
double approx_product_defect(const SpreadingFunction& Sx, const SpreadingFunction& Sy,
                             double p, double tol);

/// Interference estimate A_f(p) (|U|(1-L^2))^{1/max(q',p)} |U|^{1/q} c_q with
/// A_f(p) = f_norm_pprime * 32^{(p-2)/(4p)}, reproduced as printed (the L^2
/// exponent included).
double interference_bound(double f_norm_pprime, double p, double q,
                          double u_measure, double c_q, double L);

struct BoundRow {
  std::string name;
  double value = kInapplicable;
  bool applicable = false;
  std::string note;
};

using BoundReport = std::vector<BoundRow>;

/// One row per analytic bound with value/applicability for the given inputs.
BoundReport assemble_report(const BoundInputs& in, double tol = 1e-9);

}  // namespace tfchan::bounds
