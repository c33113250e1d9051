#include "tfchan/mc.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "tfchan/special.hpp"

namespace tfchan::mc {

using tfcore::cis;
using tfcore::kPi;
using tfcore::kTwoPi;

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t run_seed(uint64_t master_seed, long run_index) {
  uint64_t s = master_seed ^ (0xA0761D6478BD642FULL * (static_cast<uint64_t>(run_index) + 1));
  return splitmix64(s);
}

double Rng::uniform() {
  return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
  // Box-Muller; draws two uniforms per call for a fixed consumption pattern
  double u1 = uniform();
  const double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Complex Rng::circular_normal() {
  const double s = std::sqrt(0.5);
  const double re = s * normal();
  const double im = s * normal();
  return {re, im};
}

ChannelDraw sample_channel(int K, double u_size, Rng& rng) {
  if (K < 1 || !(u_size > 0))
    throw std::invalid_argument("sample_channel: needs K >= 1 and U_size > 0");
  ChannelDraw d;
  d.u = std::sqrt(u_size) / K;
  d.c.resize(static_cast<size_t>(K) * K);
  for (auto& z : d.c) z = rng.circular_normal();
  return d;
}

AccuracyBudget AccuracyBudget::make(double Delta, double p, double q,
                                    std::span<const Complex> c, double u) {
  if (!(Delta > 0)) throw std::invalid_argument("budget: Delta must be positive");
  AccuracyBudget b;
  double cq = 0.0;
  for (const auto& z : c) {
    b.c_norm1 += std::abs(z);
    cq += std::isinf(q) ? 0.0 : std::pow(std::abs(z), q);
  }
  double norm_q;
  if (std::isinf(q)) {
    norm_q = 0.0;
    for (const auto& z : c) norm_q = std::max(norm_q, std::abs(z));
  } else {
    norm_q = std::pow(u, 2.0 / q) * std::pow(cq, 1.0 / q);
  }
  const double gp = std::pow(2.0, 0.25) * std::pow(p, -0.5 / p);
  b.delta = Delta * norm_q / (1.0 + 2.0 * b.c_norm1 * gp);
  const int K = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.size()))));
  // largest time displacement in the centered model; the Gaussian tail
  // estimate is taken for the translate by it
  const double s = 0.5 * u * K;
  b.L = s + std::sqrt(std::max(std::log(2.0 * u * u / b.delta), 1.0) / kPi);
  return b;
}

namespace {

constexpr double kQuarterRoot2 = 1.18920711500272106671749997056;

double sinc_half(double z) {  // sin(z)/z
  if (std::abs(z) < 1e-4) return 1.0 - z * z / 6.0 * (1.0 - z * z / 20.0);
  return std::sin(z) / z;
}

// integral of e^{i w t} over [a, b] = h e^{i w (a+b)/2} sinc(w h / 2)
Complex phase_segment(double a, double b, double w) {
  const double h = b - a;
  return h * sinc_half(0.5 * w * h) * cis(0.5 * w * (a + b));
}

// integral over [a, b] of e^{-pi s2 t^2 + lin t} for complex lin; entire
// integrand, fixed Gauss-Legendre in the mild-phase regime
Complex gauss_segment(double a, double b, double s2, Complex lin) {
  auto f = [&](double t) {
    return std::exp(-kPi * s2 * t * t + lin.real() * t) * cis(lin.imag() * t);
  };
  const double h = b - a;
  if (std::abs(lin.imag()) * h < 24.0 && std::abs(lin.real()) * h < 24.0 &&
      kPi * s2 * h * h < 24.0)
    return specfun::gauss_legendre(f, a, b);
  return specfun::integrate_1d(f, a, b, 1e-14).value;
}

// Gauss-Legendre with a halved-interval check, falling back to adaptive
// Simpson when the cell-regime smoothness assumption fails.
Complex certified_segment(const std::function<Complex(double)>& f, double a, double b,
                          double tol) {
  const Complex whole = specfun::gauss_legendre(f, a, b);
  const double m = 0.5 * (a + b);
  const Complex halves =
      specfun::gauss_legendre(f, a, m) + specfun::gauss_legendre(f, m, b);
  if (std::abs(whole - halves) <= 0.25 * tol) return halves;
  return specfun::integrate_1d(f, a, b, tol).value;
}

// x-dependent term of F_k: integral over the cell of
// e^{-i 2 pi eta(nu, mu)} (S_nu^{(alpha)} g)(x) / g(x) dnu
Complex cell_shift_term(int K, int k1, int k2, const PhasePoint& mu, double x,
                        double u, double alpha, double delta) {
  const double a1 = u * (k1 - 0.5 * K), b1 = a1 + u;
  const double a2 = u * (k2 - 0.5 * K), b2 = a2 + u;
  if (alpha == 0.5) {
    // the nu2 phase decouples from nu1: exact separation
    return phase_segment(a2, b2, kTwoPi * (mu.mu1 + x)) *
           gauss_segment(a1, b1, 1.0, Complex{kTwoPi * x, -kTwoPi * mu.mu2});
  }
  auto f = [&](double nu1) {
    const double w = kTwoPi * (mu.mu1 + x) - kPi * (1.0 - 2.0 * alpha) * nu1;
    const Complex outer =
        std::exp(-kPi * nu1 * nu1 + kTwoPi * x * nu1) * cis(-kTwoPi * mu.mu2 * nu1);
    return outer * phase_segment(a2, b2, w);
  };
  return certified_segment(f, a1, b1, delta);
}

// x-independent term of F_k: integral over the cell of
// e^{-i 2 pi eta(nu, mu)} B(nu) dnu
Complex cell_b_term(int K, int k1, int k2, const PhasePoint& mu, double u,
                    double alpha, const CaseTag& tag, double delta) {
  const double a1 = u * (k1 - 0.5 * K), b1 = a1 + u;
  const double a2 = u * (k2 - 0.5 * K), b2 = a2 + u;
  switch (tag.kind) {
    case CaseTag::Kind::kWeylSymbol:
      return phase_segment(a1, b1, -kTwoPi * mu.mu2) *
             phase_segment(a2, b2, kTwoPi * mu.mu1);
    case CaseTag::Kind::kOrthogonal: {
      auto f = [&](double nu1) {
        const Complex inner = gauss_segment(
            a2, b2, 0.5, Complex{0.0, kTwoPi * mu.mu1 + kTwoPi * alpha * nu1});
        return std::exp(-0.5 * kPi * nu1 * nu1) * cis(-kTwoPi * mu.mu2 * nu1) * inner;
      };
      return certified_segment(f, a1, b1, delta);
    }
    case CaseTag::Kind::kCustom: {
      auto f = [&](double nu1, double nu2) {
        return tag.custom_b(nu1, nu2) * cis(-kTwoPi * (nu1 * mu.mu2 - mu.mu1 * nu2));
      };
      return specfun::integrate_2d(f, {a1, b1, a2, b2}, delta).value;
    }
  }
  return {};
}

}  // namespace

bool cell_integral_has_fast_path(const CaseTag& tag, const Polarization& pol) {
  return tag.kind == CaseTag::Kind::kWeylSymbol && pol.alpha == 0.5;
}

Complex cell_integral(int K, int k1, int k2, const PhasePoint& mu, double x, double u,
                      const Polarization& pol, const CaseTag& tag, double delta) {
  if (!(u > 0) || !(delta > 0) || K < 1)
    throw std::invalid_argument("cell_integral: needs K >= 1, u > 0 and delta > 0");
  return cell_shift_term(K, k1, k2, mu, x, u, pol.alpha, 0.5 * delta) -
         cell_b_term(K, k1, k2, mu, u, pol.alpha, tag, 0.5 * delta);
}

EpCertified ep_certified(std::span<const Complex> c, double u, const PhasePoint& mu,
                         double p, double q, const CaseTag& tag,
                         const Polarization& pol, double Delta) {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::invalid_argument("ep_certified: requires 1 <= p < inf");
  bool all_zero = true;
  for (const auto& z : c)
    if (z != Complex{0.0, 0.0}) all_zero = false;
  if (all_zero) return {0.0, 0.0};

  const auto budget = AccuracyBudget::make(Delta, p, q, c, u);
  const int K = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.size()))));
  double norm_q;
  {
    double s = 0.0, m = 0.0;
    for (const auto& z : c) {
      m = std::max(m, std::abs(z));
      if (!std::isinf(q)) s += std::pow(std::abs(z), q);
    }
    norm_q = std::isinf(q) ? m : std::pow(u, 2.0 / q) * std::pow(s, 1.0 / q);
  }

  // the B terms do not depend on x: compute them once per cell
  std::vector<Complex> b_terms(c.size());
  for (int k1 = 0; k1 < K; ++k1)
    for (int k2 = 0; k2 < K; ++k2)
      b_terms[static_cast<size_t>(k1) * K + k2] =
          cell_b_term(K, k1, k2, mu, u, pol.alpha, tag, 0.5 * budget.delta);

  auto weighted = [&](double x) {
    Complex sum{0.0, 0.0};
    for (int k1 = 0; k1 < K; ++k1)
      for (int k2 = 0; k2 < K; ++k2) {
        const size_t idx = static_cast<size_t>(k1) * K + k2;
        if (c[idx] == Complex{0.0, 0.0}) continue;
        const Complex fk =
            cell_shift_term(K, k1, k2, mu, x, u, pol.alpha, 0.5 * budget.delta) -
            b_terms[idx];
        sum += c[idx] * fk;
      }
    const double g = kQuarterRoot2 * std::exp(-kPi * x * x);
    return std::pow(std::abs(sum) * g, p);
  };

  // composite Simpson on [-L, L], doubling until the norm moves by <= delta
  const double L = budget.L;
  int level = 7;  // 129 points
  std::vector<double> vals;
  auto fill_level = [&](int lv) {
    const size_t n = (static_cast<size_t>(1) << lv) + 1;
    const double h = 2.0 * L / (n - 1);
    if (vals.empty()) {
      vals.resize(n);
      for (size_t i = 0; i < n; ++i) vals[i] = weighted(-L + h * i);
    } else {
      std::vector<double> next(n);
      for (size_t i = 0; i < vals.size(); ++i) next[2 * i] = vals[i];
      for (size_t i = 1; i < n; i += 2) next[i] = weighted(-L + h * i);
      vals = std::move(next);
    }
  };
  auto simpson_norm = [&]() {
    const size_t n = vals.size();
    const double h = 2.0 * L / (n - 1);
    double s = vals.front() + vals.back();
    for (size_t i = 1; i + 1 < n; ++i) s += (i % 2 ? 4.0 : 2.0) * vals[i];
    return std::pow(s * h / 3.0, 1.0 / p);
  };

  fill_level(level);
  double prev = simpson_norm();
  double cur = prev;
  for (;;) {
    ++level;
    if (level > 17)
      throw specfun::AccuracyError("ep_certified: x-integration did not settle",
                                   Complex{cur, 0.0}, std::abs(cur - prev));
    fill_level(level);
    cur = simpson_norm();
    if (std::abs(cur - prev) <= budget.delta) break;
    prev = cur;
  }

  const double gp = std::pow(2.0, 0.25) * std::pow(p, -0.5 / p);
  const double cert = (1.0 + 2.0 * budget.c_norm1 * gp) * budget.delta / norm_q;
  return {cur / norm_q, cert};
}

std::vector<McRecord> run_mc(const McConfig& cfg) {
  if (cfg.runs < 1 || cfg.grid_order < 1 || !(cfg.delta > 0))
    throw std::invalid_argument("run_mc: invalid configuration");
  if (!(cfg.q > 1.0))
    throw std::invalid_argument("run_mc: the benchmark bound needs q > 1");
  if (cfg.tag.kind == CaseTag::Kind::kCustom)
    throw std::invalid_argument("run_mc: campaigns support the C1/C2 cases");

  const int k = cfg.tag.k();
  const double qp = channel::dual_index(cfg.q);
  const double pref = std::pow(32.0, (cfg.p - 2.0) / (4.0 * cfg.p));
  const bool gl_valid = cfg.p >= 2.0 && (cfg.tag.kind == CaseTag::Kind::kOrthogonal ||
                                         cfg.alpha.alpha == 0.0);

  std::vector<McRecord> records(cfg.runs);
  std::atomic<long> next{0};
  auto worker = [&]() {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= cfg.runs) return;
      McRecord& r = records[i];
      r.run_id = i;
      r.seed = run_seed(cfg.master_seed, i);
      try {
        Rng rng(r.seed);
        r.u_size = rng.uniform(cfg.u_size_lo, cfg.u_size_hi);
        r.mu1 = rng.uniform(-cfg.mu_half_width, cfg.mu_half_width);
        r.mu2 = rng.uniform(-cfg.mu_half_width, cfg.mu_half_width);
        auto draw = sample_channel(cfg.grid_order, r.u_size, rng);
        r.u = draw.u;
        auto ep = ep_certified(draw.c, draw.u, {r.mu1, r.mu2}, cfg.p, cfg.q, cfg.tag,
                               cfg.alpha, cfg.delta);
        r.ratio = ep.ratio;
        r.certificate = ep.certificate;
        r.uniform_bound = pref * std::pow(k, 2.0 / cfg.p) * std::pow(r.u_size, 1.0 / qp);
        if (gl_valid && r.u_size <= 1.0) {
          const double L = specfun::laguerre_square_mass(2.0 * r.u_size / k);
          r.gl_bound = pref * k *
                       std::pow(k * r.u_size * (1.0 - L), 1.0 / std::max(qp, cfg.p));
        } else {
          r.gl_bound = std::numeric_limits<double>::quiet_NaN();
          r.notes += "gl:n/a;";
        }
        r.notes += "kozek:omitted";
      } catch (const std::exception& e) {
        r.failed = true;
        r.notes = std::string("failed: ") + e.what();
      }
    }
  };

  int threads = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = static_cast<int>(std::min<long>(threads, cfg.runs));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  long failed = 0;
  for (const auto& r : records)
    if (r.failed) ++failed;
  if (failed * 100 > cfg.runs)
    throw McAborted("run_mc: more than 1% of runs failed (" + std::to_string(failed) +
                    " of " + std::to_string(cfg.runs) + ")");
  return records;
}

}  // namespace tfchan::mc
