#pragma once

#include <functional>
#include <vector>

#include "tfchan/region.hpp"

namespace tfchan::localization {

using channel::SupportRegion;

/// Hermite-basis truncation of the localization operator Q with spreading
/// chi_U/|U| in polarization 0:
/// entries(i,j) = (1/|U|) integral over U of A^{(0)}_{h_i h_j}(mu) dmu.
/// Hermitian whenever U is origin-symmetric.
struct QMatrix {
  int order = 0;
  std::vector<Complex> entries;  // row-major order x order
  SupportRegion U = SupportRegion::disc_of_measure(1.0);

  Complex at(int i, int j) const { return entries[static_cast<size_t>(i) * order + j]; }
};

/// Shared-node Gauss quadrature over U and over the line, with node
/// doubling until every entry settles within tol. exploit_symmetry
/// additionally symmetrizes the result for origin-symmetric U; pass false
/// to keep the raw computed entries.
QMatrix localization_matrix(const SupportRegion& U, int M, double tol,
                            bool exploit_symmetry = true);

/// Single entry by adaptive Simpson of the defining integrals; the slow
/// reference route (used as a cross-check oracle).
Complex localization_entry_adaptive(const SupportRegion& U, int i, int j, double tol);

/// Grow an existing matrix to a larger truncation, reusing computed entries.
QMatrix extend_matrix(const QMatrix& q, int M, double tol);

enum class EigWhich { kQ, kQstarQ };

struct EigResult {
  double value = 0.0;
  bool converged = false;
  int order_used = 0;
};

/// Largest eigenvalue of the truncated Q (origin-symmetric U only) or of
/// Q*Q, by a dense Jacobi eigensolve.
double top_eigenvalue(const QMatrix& q, EigWhich which);

/// Doubling-based convergence control over M in {16, 32, 64, 128}:
/// converged when one doubling moves the value by < 1e-6 relative.
EigResult lambda_max(const SupportRegion& U, EigWhich which, double entry_tol = 1e-8,
                     int m_start = 16, int m_max = 128);

/// Rayleigh-quotient lower bound ((1/|U|) integral over U of l_m(pi |mu|^2))^2
/// on lambda_max(Q*Q), for origin-symmetric U.
double laguerre_lower_bound(const SupportRegion& U, int m, double tol = 1e-10);

/// Best fidelity bound N_r for the flat weight chi_U/|U|:
/// e^{-r|U|/(2e)} for |U| <= 2e/r*, else (2/(r* |U|))^{r/r*}, r* = max(r,2).
double fidelity_bound(double u_measure, double r);

/// Same bound by direct minimization of (2/(rs))^{1/s} ||C||_{s'} over
/// s >= max(1, 2/r) (golden section in log s); norm_dual(s) must return
/// ||C||_{s'}.
double fidelity_bound_numeric(const std::function<double(double)>& norm_dual,
                              double r, double u_measure);
double fidelity_bound_numeric(double u_measure, double r);

/// Largest |U| compatible with a residual-sup level: inverts
/// R_inf >= k (1 - e^{-|U|/(k e)}), i.e. |U|_max = -k e ln(1 - threshold/k).
/// +inf when threshold >= k (no constraint).
double support_size_limit(double threshold, int k);

}  // namespace tfchan::localization
