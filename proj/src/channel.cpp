#include "tfchan/channel.hpp"

#include <cmath>

#include "tfchan/mc.hpp"

namespace tfchan::channel {

using tfcore::cis;
using tfcore::kTwoPi;
using tfcore::PhasePoint;
using tfcore::Signal;

int CaseTag::k() const {
  switch (kind) {
    case Kind::kOrthogonal:
      return 1;
    case Kind::kWeylSymbol:
      return 2;
    default:
      throw std::logic_error("k is defined only for the C1/C2 cases");
  }
}

const char* CaseTag::name() const {
  switch (kind) {
    case Kind::kOrthogonal:
      return "C1";
    case Kind::kWeylSymbol:
      return "C2";
    default:
      return "B";
  }
}

double dual_index(double q) {
  if (q == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(q)) return 1.0;
  return q / (q - 1.0);
}

namespace {

// integral of e^{i w t} over [a, b]
Complex segment_phase_integral(double a, double b, double w) {
  if (std::abs(w * (b - a)) < 1e-8) {
    // second-order expansion around the midpoint keeps full precision
    const double m = 0.5 * (a + b), h = b - a;
    return cis(w * m) * Complex{h * (1.0 - w * w * h * h / 24.0), 0.0};
  }
  return (cis(w * b) - cis(w * a)) / Complex{0.0, w};
}

}  // namespace

Signal apply(const SpreadingFunction& S, const Signal& s, double accuracy) {
  if (!(accuracy > 0)) throw std::invalid_argument("apply: accuracy must be positive");
  const double alpha = S.polarization().alpha;
  const auto& pieces = S.pieces();
  const double tol_piece = accuracy / std::max<size_t>(pieces.size(), 1);

  const int n = tfcore::kDefaultGridPoints;
  const double X = tfcore::kDefaultGridHalfWidth;
  const double h = 2.0 * X / (n - 1);
  std::vector<Complex> out(n, Complex{0.0, 0.0});

  for (const auto& piece : pieces) {
    const auto& box = piece.box;
    for (int i = 0; i < n; ++i) {
      const double x = -X + h * i;
      // cheap decay screen on the translated signal
      const double a0 = std::abs(s(x - box.x0)), a1 = std::abs(s(x - box.x1)),
                   am = std::abs(s(x - 0.5 * (box.x0 + box.x1)));
      if (std::max({a0, a1, am}) < 1e-18) continue;
      Complex val;
      if (piece.constant) {
        auto f1 = [&](double nu1) {
          const double w = kTwoPi * x - kTwoPi * (0.5 - alpha) * nu1;
          return s(x - nu1) * segment_phase_integral(box.y0, box.y1, w);
        };
        val = piece.value * specfun::integrate_1d(f1, box.x0, box.x1, tol_piece).value;
      } else {
        auto f2 = [&](double nu1, double nu2) {
          return piece.f(nu1, nu2) * cis(-kTwoPi * (0.5 - alpha) * nu1 * nu2) *
                 cis(kTwoPi * nu2 * x) * s(x - nu1);
        };
        val = specfun::integrate_2d(f2, box, tol_piece).value;
      }
      out[i] += val;
    }
  }
  return Signal::sampled_raw(X, std::move(out));
}

Complex weyl_symbol(const SpreadingFunction& S, const PhasePoint& mu, double tol) {
  const auto& pieces = S.pieces();
  Complex total{0.0, 0.0};
  for (const auto& piece : pieces) {
    auto f = [&](double x, double y) {
      return piece.f(x, y) * cis(-kTwoPi * tfcore::eta(PhasePoint{x, y}, mu));
    };
    total += specfun::integrate_2d(f, piece.box, tol / pieces.size()).value;
  }
  return total;
}

double twisted_phase(const PhasePoint& mu, const PhasePoint& rho, double alpha) {
  return (alpha + 0.5) * tfcore::zeta(mu, rho) + (alpha - 0.5) * tfcore::zeta(rho, mu) -
         2.0 * alpha * tfcore::zeta(mu, mu);
}

Complex twisted_convolution(const SpreadingFunction& Sx, const SpreadingFunction& Sy,
                            const PhasePoint& rho, double tol) {
  if (Sx.polarization().alpha != Sy.polarization().alpha)
    throw ContractViolation("twisted_convolution: mismatched polarizations");
  const double alpha = Sx.polarization().alpha;

  struct Job {
    specfun::Rect box;
    const SpreadingPiece* px;
    const SpreadingPiece* py;
  };
  std::vector<Job> jobs;
  for (const auto& px : Sx.pieces())
    for (const auto& py : Sy.pieces()) {
      const specfun::Rect shifted{rho.mu1 - py.box.x1, rho.mu1 - py.box.x0,
                                  rho.mu2 - py.box.y1, rho.mu2 - py.box.y0};
      const auto clip = specfun::intersect(px.box, shifted);
      if (!clip.empty()) jobs.push_back({clip, &px, &py});
    }
  if (jobs.empty()) return {0.0, 0.0};

  Complex total{0.0, 0.0};
  for (const auto& job : jobs) {
    auto f = [&](double m1, double m2) {
      const PhasePoint mu{m1, m2};
      return job.px->f(m1, m2) * job.py->f(rho.mu1 - m1, rho.mu2 - m2) *
             cis(-kTwoPi * twisted_phase(mu, rho, alpha));
    };
    total += specfun::integrate_2d(f, job.box, tol / jobs.size()).value;
  }
  return total;
}

Complex lambda_value(const SpreadingFunction& S, const CaseTag& tag, const Signal& g,
                     const Signal& gamma, const PhasePoint& mu, double tol) {
  const tfcore::Polarization pol = S.polarization();
  std::function<Complex(double, double)> B;
  switch (tag.kind) {
    case CaseTag::Kind::kWeylSymbol:
      return weyl_symbol(S, mu, tol);
    case CaseTag::Kind::kOrthogonal:
      if (g.is_standard_gaussian() && gamma.is_standard_gaussian()) {
        B = [pol](double x, double y) {
          return tfcore::gaussian_ambiguity(PhasePoint{x, y}, pol);
        };
      } else {
        const double inner_tol =
            0.5 * tol / std::max(spreading_norm(S, 1.0), 1e-12);
        B = [&g, &gamma, pol, inner_tol](double x, double y) {
          return tfcore::ambiguity(g, gamma, PhasePoint{x, y}, pol, inner_tol);
        };
      }
      break;
    case CaseTag::Kind::kCustom:
      B = tag.custom_b;
      break;
  }
  const auto& pieces = S.pieces();
  Complex total{0.0, 0.0};
  for (const auto& piece : pieces) {
    auto f = [&](double x, double y) {
      return piece.f(x, y) * B(x, y) * cis(-kTwoPi * tfcore::eta(PhasePoint{x, y}, mu));
    };
    total += specfun::integrate_2d(f, piece.box, 0.5 * tol / pieces.size()).value;
  }
  return total;
}

EpResult ep_error(const SpreadingFunction& S, const CaseTag& tag, const Signal& g,
                  const Signal& gamma, const PhasePoint& mu, double p, double q,
                  double delta_rel) {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::invalid_argument("ep_error: requires 1 <= p < inf");
  if (!(delta_rel > 0)) throw std::invalid_argument("ep_error: accuracy must be positive");

  const double norm_q = spreading_norm(S, q);
  if (norm_q == 0.0) return {0.0, 0.0};

  const bool certified_path = g.is_standard_gaussian() && gamma.is_standard_gaussian() &&
                              S.is_grid() && tag.kind != CaseTag::Kind::kCustom;
  if (certified_path) {
    auto r = mc::ep_certified(S.coefficients(), S.cell_size(), mu, p, q, tag,
                              S.polarization(), delta_rel);
    return {r.ratio * norm_q, r.certificate * norm_q};
  }

  // generic path: materialize H S_mu gamma on the grid; two-grid Richardson
  // certificate (heuristic, documented)
  const double acc = 0.25 * delta_rel * norm_q;
  const Signal gamma_mu = shift(gamma, mu, tfcore::Polarization{0.5});
  const Signal g_mu = shift(g, mu, tfcore::Polarization{0.5});
  const Signal out = apply(S, gamma_mu, acc);
  const Complex lam = lambda_value(S, tag, g, gamma, mu, acc);

  const int n = out.grid_points();
  const double X = out.grid_half_width();
  const double h = 2.0 * X / (n - 1);
  const auto& v = out.grid_values();
  std::vector<double> dp(n);
  for (int i = 0; i < n; ++i) {
    const double x = -X + h * i;
    dp[i] = std::pow(std::abs(v[i] - lam * g_mu(x)), p);
  }
  auto simpson = [&](int stride) {
    double s = dp.front() + dp.back();
    const int m = (n - 1) / stride;
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * dp[i * stride];
    return std::pow(s * stride * h / 3.0, 1.0 / p);
  };
  const double fine = simpson(1);
  const double coarse = simpson(2);
  const double cert = std::abs(fine - coarse) + 2.0 * acc * std::pow(2.0 * X, 1.0 / p) +
                      acc * g.norm(p);
  return {fine, cert};
}

}  // namespace tfchan::channel
