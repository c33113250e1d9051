#include "tfchan/localization.hpp"

#include <cmath>
#include <map>

#include "tfchan/phase_space.hpp"
#include "tfchan/special.hpp"

namespace tfchan::localization {

using tfcore::cis;
using tfcore::kPi;
using tfcore::kTwoPi;

namespace {

constexpr double kE = 2.71828182845904523536;

// ---- Gauss-Legendre nodes of arbitrary order (cached) ----

struct Rule {
  std::vector<double> x, w;  // on [-1, 1]
};

const Rule& legendre_rule(int n) {
  static std::map<int, Rule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

double hermite_turning_point(int m) { return std::sqrt((2.0 * m + 1.0) / kTwoPi); }

// normalized oscillator functions phi_k(sqrt(2 pi) x) for all k < M at once
void hermite_column(int M, double x, std::vector<double>& out) {
  const double t = std::sqrt(kTwoPi) * x;
  out.resize(M);
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * t * t);
  const double scale = std::pow(kTwoPi, 0.25);
  for (int k = 0; k < M; ++k) {
    out[k] = scale * cur;
    const double next = std::sqrt(2.0 / (k + 1)) * t * cur -
                        std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
}

// phase-plane quadrature nodes covering U
struct PlaneNodes {
  std::vector<double> x, y, w;
};

PlaneNodes plane_nodes(const SupportRegion& U, int n) {
  PlaneNodes out;
  switch (U.shape()) {
    case SupportRegion::Shape::kDisc: {
      // polar: Gauss-Legendre radially, trapezoid (spectral) in angle
      const double R = U.bounding().x1;
      const auto& r = legendre_rule(n);
      const int m = std::max(32, 4 * n);
      for (int i = 0; i < n; ++i) {
        const double rad = 0.5 * R * (r.x[i] + 1.0);
        const double wr = 0.5 * R * r.w[i] * rad * (kTwoPi / m);
        for (int j = 0; j < m; ++j) {
          const double th = kTwoPi * j / m;
          out.x.push_back(rad * std::cos(th));
          out.y.push_back(rad * std::sin(th));
          out.w.push_back(wr);
        }
      }
      break;
    }
    default: {
      const auto& r = legendre_rule(n);
      for (const auto& box : U.rect_pieces()) {
        const double cx = 0.5 * (box.x0 + box.x1), hx = 0.5 * box.width();
        const double cy = 0.5 * (box.y0 + box.y1), hy = 0.5 * box.height();
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            out.x.push_back(cx + hx * r.x[i]);
            out.y.push_back(cy + hy * r.x[j]);
            out.w.push_back(hx * hy * r.w[i] * r.w[j]);
          }
      }
    }
  }
  return out;
}

// One pass over shared nodes: entries(i,j) = (1/|U|) sum_nodes w e^{-i pi x y}
// integral of h_i(t) h_j(t - x) e^{i 2 pi y t} dt, the t-integral on shared
// Gauss-Legendre nodes as well (entire integrand).
std::vector<Complex> build_pass(const SupportRegion& U, int M, int plane_order,
                                int line_order) {
  const auto nodes = plane_nodes(U, plane_order);
  const auto& line = legendre_rule(line_order);
  std::vector<Complex> acc(static_cast<size_t>(M) * M, Complex{0, 0});
  std::vector<double> hi, hj;
  std::vector<Complex> bj(static_cast<size_t>(M) * line_order);
  std::vector<double> ai(static_cast<size_t>(M) * line_order);

  for (size_t nidx = 0; nidx < nodes.x.size(); ++nidx) {
    const double mu1 = nodes.x[nidx], mu2 = nodes.y[nidx];
    const Complex wphase = nodes.w[nidx] * cis(-kPi * mu1 * mu2);
    const double c = 0.5 * mu1;
    const double W = hermite_turning_point(M) + 2.5 + 0.5 * std::abs(mu1);
    for (int t = 0; t < line_order; ++t) {
      const double x = c + W * line.x[t];
      const double wx = W * line.w[t];
      hermite_column(M, x, hi);
      hermite_column(M, x - mu1, hj);
      const Complex mod = wx * cis(kTwoPi * mu2 * x);
      for (int k = 0; k < M; ++k) {
        ai[static_cast<size_t>(k) * line_order + t] = hi[k];
        bj[static_cast<size_t>(k) * line_order + t] = mod * hj[k];
      }
    }
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) {
        if (U.origin_symmetric() && (i + j) % 2 == 1) continue;
        Complex s{0, 0};
        const double* a = &ai[static_cast<size_t>(i) * line_order];
        const Complex* b = &bj[static_cast<size_t>(j) * line_order];
        for (int t = 0; t < line_order; ++t) s += a[t] * b[t];
        acc[static_cast<size_t>(i) * M + j] += wphase * s;
      }
  }
  for (auto& z : acc) z /= U.measure();
  return acc;
}

}  // namespace

Complex localization_entry_adaptive(const SupportRegion& U, int i, int j, double tol) {
  const double r =
      std::max(hermite_turning_point(i), hermite_turning_point(j)) + 7.0;
  auto f = [&](double m1, double m2) {
    auto g = [&](double x) {
      return specfun::hermite_fn(i, x) * specfun::hermite_fn(j, x - m1) *
             cis(kTwoPi * m2 * x);
    };
    return cis(-kPi * m1 * m2) *
           specfun::integrate_1d(g, -r - std::abs(m1), r + std::abs(m1), 0.5 * tol)
               .value;
  };
  return U.integrate(f, 0.5 * tol * U.measure()).value / U.measure();
}

QMatrix localization_matrix(const SupportRegion& U, int M, double tol,
                            bool exploit_symmetry) {
  if (M < 1) throw std::invalid_argument("localization_matrix: needs M >= 1");
  // shared-node Gauss rules; order doubling supplies the error control
  int plane_order = 16;
  int line_order = std::max(48, M + 32);
  // oscillation across the line window grows with the support extent
  const double ext = std::max(std::abs(U.bounding().y1), std::abs(U.bounding().y0));
  line_order += static_cast<int>(2.0 * ext * (hermite_turning_point(M) + 3.0));

  QMatrix q;
  q.order = M;
  q.U = U;
  std::vector<Complex> cur = build_pass(U, M, plane_order, line_order);
  for (int round = 0; round < 5; ++round) {
    const int p2 = plane_order + plane_order / 2;
    const int l2 = line_order + line_order / 2;
    std::vector<Complex> next = build_pass(U, M, p2, l2);
    double gap = 0.0;
    for (size_t idx = 0; idx < cur.size(); ++idx)
      gap = std::max(gap, std::abs(next[idx] - cur[idx]));
    cur = std::move(next);
    plane_order = p2;
    line_order = l2;
    if (gap <= tol) {
      q.entries = std::move(cur);
      if (exploit_symmetry && U.origin_symmetric()) {
        // enforce exact Hermitian symmetry on the computed entries
        for (int i = 0; i < M; ++i)
          for (int j = i + 1; j < M; ++j) {
            const Complex avg = 0.5 * (q.at(i, j) + std::conj(q.at(j, i)));
            q.entries[static_cast<size_t>(i) * M + j] = avg;
            q.entries[static_cast<size_t>(j) * M + i] = std::conj(avg);
          }
      }
      return q;
    }
  }
  throw specfun::AccuracyError("localization_matrix: node doubling did not settle",
                               cur.front(), tol);
}

QMatrix extend_matrix(const QMatrix& old, int M, double tol) {
  if (M <= old.order) return old;
  return localization_matrix(old.U, M, tol);
}

namespace {

// cyclic Jacobi on a real symmetric matrix; eigenvalues only
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
  auto at = [&](int r, int c) -> double& { return a[static_cast<size_t>(r) * n + c]; };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c) off += at(r, c) * at(r, c);
    if (off < 1e-30) break;
    for (int p = 0; p < n - 1; ++p)
      for (int c = p + 1; c < n; ++c) {
        const double apq = at(p, c);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = 0.5 * std::atan2(2.0 * apq, at(c, c) - at(p, p));
        const double cs = std::cos(theta), sn = std::sin(theta);
        for (int r = 0; r < n; ++r) {
          const double arp = at(r, p), arq = at(r, c);
          at(r, p) = cs * arp - sn * arq;
          at(r, c) = sn * arp + cs * arq;
        }
        for (int r = 0; r < n; ++r) {
          const double apr = at(p, r), aqr = at(c, r);
          at(p, r) = cs * apr - sn * aqr;
          at(c, r) = sn * apr + cs * aqr;
        }
      }
  }
  std::vector<double> ev(n);
  for (int r = 0; r < n; ++r) ev[r] = at(r, r);
  return ev;
}

// largest eigenvalue of a Hermitian matrix via the real embedding
// [[X, -Y], [Y, X]] (same spectrum, doubled multiplicities)
double hermitian_top_eigenvalue(const std::vector<Complex>& h, int n) {
  const int m = 2 * n;
  std::vector<double> a(static_cast<size_t>(m) * m, 0.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const Complex z = h[static_cast<size_t>(r) * n + c];
      a[static_cast<size_t>(r) * m + c] = z.real();
      a[static_cast<size_t>(r) * m + (n + c)] = -z.imag();
      a[static_cast<size_t>(n + r) * m + c] = z.imag();
      a[static_cast<size_t>(n + r) * m + (n + c)] = z.real();
    }
  const auto ev = jacobi_eigenvalues(std::move(a), m);
  double top = ev.front();
  for (double v : ev) top = std::max(top, v);
  return top;
}

}  // namespace

double top_eigenvalue(const QMatrix& q, EigWhich which) {
  const int n = q.order;
  if (which == EigWhich::kQ) {
    if (!q.U.origin_symmetric())
      throw std::invalid_argument("top_eigenvalue(Q): needs an origin-symmetric U");
    return hermitian_top_eigenvalue(q.entries, n);
  }
  std::vector<Complex> b(static_cast<size_t>(n) * n, Complex{0.0, 0.0});
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex s{0.0, 0.0};
      for (int t = 0; t < n; ++t) s += std::conj(q.at(t, r)) * q.at(t, c);
      b[static_cast<size_t>(r) * n + c] = s;
    }
  return hermitian_top_eigenvalue(b, n);
}

EigResult lambda_max(const SupportRegion& U, EigWhich which, double entry_tol,
                     int m_start, int m_max) {
  QMatrix q = localization_matrix(U, m_start, entry_tol);
  double prev = top_eigenvalue(q, which);
  for (int M = 2 * m_start; M <= m_max; M *= 2) {
    q = extend_matrix(q, M, entry_tol);
    const double cur = top_eigenvalue(q, which);
    if (std::abs(cur - prev) < 1e-6 * std::max(std::abs(cur), 1e-30))
      return {cur, true, M};
    prev = cur;
  }
  return {prev, false, q.order};
}

double laguerre_lower_bound(const SupportRegion& U, int m, double tol) {
  if (!U.origin_symmetric())
    throw std::domain_error("laguerre_lower_bound: needs an origin-symmetric U");
  double integral;
  if (U.shape() == SupportRegion::Shape::kDisc) {
    if (m == 0) {
      integral = specfun::laguerre_disc_mass(U.measure());
    } else {
      // radial reduction: (1/|U|) integral over [0, |U|] of l_m(t) dt
      auto f = [&](double t) { return Complex{specfun::laguerre_fn(m, t), 0.0}; };
      integral =
          specfun::integrate_1d(f, 0.0, U.measure(), tol).value.real() / U.measure();
    }
  } else if (m == 0 && U.shape() == SupportRegion::Shape::kCenteredSquare) {
    integral = specfun::laguerre_square_mass(U.measure());
  } else {
    auto f = [&](double x, double y) {
      return Complex{specfun::laguerre_fn(m, kPi * (x * x + y * y)), 0.0};
    };
    integral = U.integrate(f, tol * U.measure()).value.real() / U.measure();
  }
  return integral * integral;
}

double fidelity_bound(double u_measure, double r) {
  if (!(r > 0) || !(u_measure > 0))
    throw std::invalid_argument("fidelity_bound: needs r > 0 and |U| > 0");
  const double r_star = std::max(r, 2.0);
  if (u_measure <= 2.0 * kE / r_star) return std::exp(-r * u_measure / (2.0 * kE));
  return std::pow(2.0 / (r_star * u_measure), r / r_star);
}

double fidelity_bound_numeric(const std::function<double(double)>& norm_dual, double r,
                              double u_measure) {
  const double s_lo = std::max(1.0, 2.0 / r);
  const double s_hi = std::max(10.0, 4.0 * kE / (r * u_measure));
  auto value = [&](double t) {
    const double s = std::exp(t);
    return std::pow(2.0 / (r * s), 1.0 / s) * norm_dual(s);
  };
  double a = std::log(s_lo), b = std::log(s_hi);
  double best = std::min(value(a), value(b));
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 240; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = value(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = value(x2);
    }
  }
  return std::min({best, f1, f2});
}

double fidelity_bound_numeric(double u_measure, double r) {
  return fidelity_bound_numeric(
      [u_measure](double s) { return std::pow(u_measure, -1.0 / s); }, r, u_measure);
}

double support_size_limit(double threshold, int k) {
  if (k < 1 || !(threshold >= 0))
    throw std::invalid_argument("support_size_limit: needs k >= 1, threshold >= 0");
  if (threshold >= k) return std::numeric_limits<double>::infinity();
  return -k * kE * std::log1p(-threshold / k);
}

}  // namespace tfchan::localization
