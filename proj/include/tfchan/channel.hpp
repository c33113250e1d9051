#pragma once

#include "tfchan/signal.hpp"
#include "tfchan/spreading.hpp"

namespace tfchan::channel {

/// Choice of the multiplicative coefficient lambda = F_s(Sigma * B):
/// C1 takes B = A^{(alpha)}_{g gamma} (the orthogonal distortion, i.e. the
/// L2-minimizing lambda), C2 takes B = 1 (the plain Weyl symbol), and a
/// custom bounded B is allowed.
struct CaseTag {
  enum class Kind { kOrthogonal, kWeylSymbol, kCustom };
  Kind kind = Kind::kOrthogonal;
  std::function<Complex(double, double)> custom_b;  // for kCustom

  static CaseTag c1() { return {Kind::kOrthogonal, nullptr}; }
  static CaseTag c2() { return {Kind::kWeylSymbol, nullptr}; }
  static CaseTag general(std::function<Complex(double, double)> b) {
    return {Kind::kCustom, std::move(b)};
  }
  /// k = 1 for C1 and k = 2 for C2 in the bound expressions.
  int k() const;
  const char* name() const;
};

/// Channel output (H s)(x) = integral over U of Sigma(nu) (S_nu^{(alpha)} s)(x) dnu,
/// materialized on the default sampling grid with per-sample absolute
/// error <= accuracy.
tfcore::Signal apply(const SpreadingFunction& S, const tfcore::Signal& s,
                     double accuracy);

/// Weyl symbol L(mu) = (F_s Sigma)(mu).
Complex weyl_symbol(const SpreadingFunction& S, const tfcore::PhasePoint& mu,
                    double tol);

/// Twisted convolution (Sigma_X natural_phi Sigma_Y)(rho) =
/// integral Sigma_X(mu) Sigma_Y(rho - mu) e^{-i 2 pi phi(mu, rho)} dmu,
/// phi(mu,rho) = (alpha+1/2) zeta(mu,rho) + (alpha-1/2) zeta(rho,mu)
///               - 2 alpha zeta(mu,mu).
/// This is the spreading function of the operator product X Y.
Complex twisted_convolution(const SpreadingFunction& Sx, const SpreadingFunction& Sy,
                            const tfcore::PhasePoint& rho, double tol);

double twisted_phase(const tfcore::PhasePoint& mu, const tfcore::PhasePoint& rho,
                     double alpha);

/// lambda(mu) = F_s(Sigma * B)(mu) for the tag's B. For C1 this equals the
/// inner product <S_mu g, H S_mu gamma>.
Complex lambda_value(const SpreadingFunction& S, const CaseTag& tag,
                     const tfcore::Signal& g, const tfcore::Signal& gamma,
                     const tfcore::PhasePoint& mu, double tol);

struct EpResult {
  double value = 0.0;        // E_p(mu)
  double certificate = 0.0;  // absolute error bound on value
};

/// Approximate-eigenstructure error E_p(mu) = ||H S_mu gamma - lambda(mu) S_mu g||_p,
/// 1 <= p < inf. Standard-Gaussian signaling on the grid model routes through
/// the certified per-cell machinery (certificate <= delta_rel * ||Sigma||_q);
/// other signal kinds materialize H S_mu gamma on the sampling grid and carry
/// a two-grid Richardson certificate.
EpResult ep_error(const SpreadingFunction& S, const CaseTag& tag,
                  const tfcore::Signal& g, const tfcore::Signal& gamma,
                  const tfcore::PhasePoint& mu, double p, double q,
                  double delta_rel);

/// Dual index q' with q' = inf at q = 1 (and 1 at q = inf).
double dual_index(double q);

}  // namespace tfchan::channel
