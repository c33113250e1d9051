// Acceptance suite: one pass/fail line per criterion, exit code = #failures.
// Runs the full N = 1000 campaigns by default; TFCHAN_ACCEPT_SMOKE=1 switches
// to the N = 100 variant with the same assertions.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "tfchan/bounds.hpp"
#include "tfchan/localization.hpp"
#include "tfchan/mc.hpp"
#include "tfchan/special.hpp"

using namespace tfchan;
using bounds::BoundInputs;
using channel::CaseTag;
using channel::SpreadingFunction;
using channel::SupportRegion;
using tfcore::cis;
using tfcore::kPi;
using tfcore::kTwoPi;
using tfcore::PhasePoint;
using tfcore::Polarization;
using tfcore::Signal;

namespace {

constexpr double kE = 2.71828182845904523536;

int g_failures = 0;

void report(int idx, bool ok, const char* what, const std::string& detail) {
  std::printf("[%s] %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, what,
              detail.empty() ? "" : "  -- ", detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof(b), "%.6g", v);
  return b;
}

struct CampaignStats {
  bool dominance = true;
  double max_ratio_gl = 0.0;
  double median_gl_uniform = 0.0;
  long failed = 0;
};

CampaignStats campaign(long runs, double p, double q, uint64_t seed) {
  mc::McConfig cfg;
  cfg.runs = runs;
  cfg.grid_order = 4;
  cfg.p = p;
  cfg.q = q;
  cfg.tag = CaseTag::c1();
  cfg.alpha = Polarization{0.0};
  cfg.delta = 1e-8;
  cfg.master_seed = seed;
  const auto records = mc::run_mc(cfg);

  CampaignStats st;
  std::vector<double> gu;
  for (const auto& r : records) {
    if (r.failed) {
      ++st.failed;
      st.dominance = false;
      continue;
    }
    if (r.ratio > r.uniform_bound + cfg.delta) st.dominance = false;
    if (!(r.ratio <= r.gl_bound + cfg.delta)) st.dominance = false;
    st.max_ratio_gl = std::max(st.max_ratio_gl, r.ratio / r.gl_bound);
    gu.push_back(r.gl_bound / r.uniform_bound);
  }
  std::sort(gu.begin(), gu.end());
  if (!gu.empty()) st.median_gl_uniform = gu[gu.size() / 2];
  return st;
}

void criterion_1_2(long runs) {
  {
    const auto st = campaign(runs, 2.0, 2.0, 20260810);
    const bool ok = st.dominance && st.failed == 0 &&
                    st.median_gl_uniform >= 0.05 && st.median_gl_uniform <= 0.2 &&
                    st.max_ratio_gl >= 0.3 && st.max_ratio_gl <= 0.8;
    report(1, ok, "MC reproduction C1 p=q=2: dominance + factor bands",
           "N=" + std::to_string(runs) + " dominance=" +
               (st.dominance ? "100%" : "violated") +
               " median(gl/uniform)=" + fmt(st.median_gl_uniform) +
               " max(ratio/gl)=" + fmt(st.max_ratio_gl));
  }
  {
    const auto st = campaign(runs, 3.0, 1.5, 20260810);
    const bool ok = st.dominance && st.failed == 0 && st.max_ratio_gl >= 0.03 &&
                    st.max_ratio_gl <= 0.3;
    report(2, ok, "MC reproduction C1 p=3 q=1.5: dominance + degraded factor",
           "N=" + std::to_string(runs) + " dominance=" +
               (st.dominance ? "100%" : "violated") +
               " max(ratio/gl)=" + fmt(st.max_ratio_gl));
  }
}

void criterion_3() {
  bool ok = true;
  std::string worst;
  for (int i = 0; i < 50; ++i) {
    const double m = 0.004 * std::pow(1.0 / 0.004, i / 49.0);  // up to |U| = 1
    const double aspect = std::pow(2.0, (i % 5) - 2);
    const double th = 0.5 * std::sqrt(m * aspect), nh = 0.5 * std::sqrt(m / aspect);
    BoundInputs in;
    in.U = SupportRegion::centered_rect(th, nh);
    in.tag = CaseTag::c2();
    in.p = 2.0;
    in.q = 1.0;
    in.alpha = Polarization{0.0};
    const double direct = bounds::bound_residual_moment(in, 1e-10);
    const double kz = bounds::kozek_simplified(in.U);
    if (!(direct <= kz + 1e-12) || (m >= 0.1 && !(direct < kz))) {
      ok = false;
      worst = "|U|=" + fmt(m) + " direct=" + fmt(direct) + " kozek=" + fmt(kz);
    }
  }
  report(3, ok, "direct C2 bound improves the Kozek bound on 50 rectangles", worst);
}

void criterion_4() {
  bool ok = true;
  double worst = 0.0;
  for (double r : {1.0, 2.0, 3.0})
    for (double m : {0.01, 0.1, 1.0, kE, 4.0}) {
      const double gap = std::abs(localization::fidelity_bound(m, r) -
                                  localization::fidelity_bound_numeric(m, r));
      worst = std::max(worst, gap);
      if (gap > 1e-10) ok = false;
    }
  report(4, ok, "N_r closed form equals the numeric minimization (1e-10)",
         "max gap=" + fmt(worst));
}

void criterion_5() {
  bool ok = true;
  std::string detail;
  for (int shape = 0; shape < 2; ++shape)
    for (double m : {0.01, 0.1, 1.0}) {
      auto U = shape ? SupportRegion::centered_square_of_measure(m)
                     : SupportRegion::disc_of_measure(m);
      const double lower = localization::laguerre_lower_bound(U, 0);
      const auto top =
          localization::lambda_max(U, localization::EigWhich::kQstarQ, 1e-8, 16, 128);
      const double n2 = localization::fidelity_bound(m, 2.0);
      const bool here =
          top.converged && lower <= top.value + 2e-6 && top.value <= n2 + 2e-6;
      if (!here) {
        ok = false;
        detail = std::string(shape ? "square" : "disc") + " |U|=" + fmt(m) +
                 " lower=" + fmt(lower) + " lambda=" + fmt(top.value) +
                 " N2=" + fmt(n2) + (top.converged ? "" : " (not converged)");
      }
    }
  report(5, ok, "localization chain lower <= lambda_max(Q*Q) <= N_2, converged",
         detail);
}

void criterion_6() {
  bool ok = true;
  std::string detail;
  for (int shape = 0; shape < 2; ++shape)
    for (double m : {0.01, 0.1, 1.0, kE, 4.0}) {
      BoundInputs in;
      in.U = shape ? SupportRegion::centered_square_of_measure(m)
                   : SupportRegion::disc_of_measure(m);
      in.tag = CaseTag::c1();
      in.p = in.q = 2.0;
      const double v = bounds::bound_residual_moment(in, 1e-10);
      const auto band = bounds::critical_size_band(m);
      if (!(v >= band.lower - 1e-9 && v <= band.upper + 1e-9)) {
        ok = false;
        detail = std::string(shape ? "square" : "disc") + " |U|=" + fmt(m) +
                 " value=" + fmt(v) + " band=[" + fmt(band.lower) + "," +
                 fmt(band.upper) + "]";
      }
    }
  report(6, ok, "moment bound sits inside the critical-size band", detail);
}

void criterion_7() {
  bool ok = true;
  std::vector<std::string> fails;
  auto sub = [&](bool cond, const char* name) {
    if (!cond) {
      ok = false;
      fails.push_back(name);
    }
  };
  mc::Rng rng(7777);
  const Signal g = Signal::gaussian();

  {  // shift isometry (1e-9)
    bool pass = true;
    for (int t = 0; t < 4; ++t) {
      const PhasePoint mu{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      for (double alpha : {0.0, 0.5})
        for (double p : {1.0, 2.0, 3.0, 4.0}) {
          const Signal s = shift(Signal::hermite(t), mu, Polarization{alpha});
          if (std::abs(s.norm(p) - Signal::hermite(t).norm(p)) > 1e-9) pass = false;
        }
    }
    sub(pass, "shift isometry");
  }
  {  // Weyl commutation (1e-9)
    bool pass = true;
    for (int t = 0; t < 3; ++t) {
      const PhasePoint mu{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      const PhasePoint nu{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      const Polarization a{rng.uniform(-0.5, 0.5)}, b{rng.uniform(-0.5, 0.5)};
      const Signal lhs = shift(shift(g, nu, b), mu, a);
      const Signal rhs = shift(shift(g, mu, a), nu, b);
      const Complex phase = tfcore::commutation_phase(mu, nu);
      for (int i = 0; i < 50; ++i) {
        const double x = -5.0 + 10.0 * i / 49.0;
        if (std::abs(lhs(x) - phase * rhs(x)) > 1e-9) pass = false;
      }
    }
    sub(pass, "Weyl commutation");
  }
  {  // symplectic involution, smoothed (2e-6)
    const double w = 0.1, T = 200.0, R = 3.5 * T;
    auto E = [&](double t) {
      if (std::abs(t) < 1e-12) return Complex{w, 0.0};
      return (cis(kTwoPi * w * t) - Complex{1.0, 0.0}) / Complex{0.0, kTwoPi * t};
    };
    auto factor = [&](double target, int sign) {
      auto f = [&](double nu) {
        return cis(sign * kTwoPi * nu * target) * E(-sign * nu) *
               std::exp(-kPi * nu * nu / (T * T));
      };
      return specfun::integrate_1d(f, -R, R, 5e-7).value;
    };
    bool pass = true;
    for (int t = 0; t < 20; ++t) {
      const double m1 = rng.uniform(0.015, 0.085), m2 = rng.uniform(0.015, 0.085);
      if (std::abs(factor(m2, -1) * factor(m1, +1) - Complex{1.0, 0.0}) > 2e-6)
        pass = false;
    }
    sub(pass, "symplectic involution");
  }
  {  // Gaussian ambiguity closed form vs quadrature (1e-8)
    bool pass = true;
    const Signal h0 = Signal::hermite(0);
    for (double alpha : {-0.5, 0.0, 0.5})
      for (int t = 0; t < 6; ++t) {
        const PhasePoint mu{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const Complex closed = tfcore::gaussian_ambiguity(mu, Polarization{alpha});
        const Complex quad = tfcore::ambiguity(h0, h0, mu, Polarization{alpha}, 1e-10);
        if (std::abs(closed - quad) > 1e-8) pass = false;
      }
    sub(pass, "Gaussian ambiguity closed form");
  }
  {  // Hermite diagonal ambiguity equals the Laguerre function (1e-8)
    bool pass = true;
    for (int m = 0; m <= 8; m += 2) {
      const Signal hm = Signal::hermite(m);
      for (int t = 0; t < 2; ++t) {
        const PhasePoint mu{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const Complex a = tfcore::ambiguity(hm, hm, mu, Polarization{0.0}, 1e-10);
        if (std::abs(a - Complex{specfun::laguerre_fn(m, kPi * mu.norm2()), 0.0}) >
            1e-8)
          pass = false;
      }
    }
    sub(pass, "Hermite-diagonal Laguerre identity");
  }
  std::vector<Complex> coeff(4);
  for (auto& z : coeff) z = rng.circular_normal();
  auto S = SpreadingFunction::grid_model(2, 0.05, coeff, Polarization{0.0});
  {  // twisted convolution vs grid composition, 3x3 matrix elements (1e-5)
    const auto adj = S.adjoint();
    specfun::Rect D{1e300, -1e300, 1e300, -1e300};
    for (const auto& pa : adj.pieces())
      for (const auto& pb : S.pieces()) {
        D.x0 = std::min(D.x0, pa.box.x0 + pb.box.x0);
        D.x1 = std::max(D.x1, pa.box.x1 + pb.box.x1);
        D.y0 = std::min(D.y0, pa.box.y0 + pb.box.y0);
        D.y1 = std::max(D.y1, pa.box.y1 + pb.box.y1);
      }
    std::vector<Signal> h, Hh;
    for (int m = 0; m < 3; ++m) {
      h.push_back(Signal::hermite(m));
      Hh.push_back(channel::apply(S, h.back(), 1e-8));
    }
    bool pass = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Complex grid_route = Signal::inner(Hh[i], Hh[j]);
        auto f = [&](double x, double y) {
          return channel::twisted_convolution(adj, S, {x, y}, 1e-9) *
                 tfcore::ambiguity(h[i], h[j], {x, y}, Polarization{0.0}, 1e-9);
        };
        const Complex spread_route = specfun::integrate_2d(f, D, 1e-7).value;
        if (std::abs(grid_route - spread_route) > 1e-5) pass = false;
      }
    sub(pass, "twisted convolution vs composition");
  }
  {  // C1 lambda equals the brute-force inner product (1e-6)
    bool pass = true;
    for (int t = 0; t < 3; ++t) {
      const PhasePoint mu{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      const Complex lam = channel::lambda_value(S, CaseTag::c1(), g, g, mu, 1e-8);
      const Signal gm = shift(g, mu, Polarization{0.5});
      const Complex brute = Signal::inner(gm, channel::apply(S, gm, 1e-8));
      if (std::abs(lam - brute) > 1e-6) pass = false;
    }
    sub(pass, "C1 lambda identity");
  }
  {  // E_2 Pythagoras at the minimizer and Delta/10 stability
    const double Delta = 1e-7;
    const PhasePoint mu{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const auto r = mc::ep_certified(coeff, 0.05, mu, 2.0, 2.0, CaseTag::c1(),
                                    Polarization{0.0}, Delta);
    const double nq = channel::spreading_norm(S, 2.0);
    const Signal gm = shift(g, mu, Polarization{0.5});
    const Signal out = channel::apply(S, gm, 1e-9);
    const Complex lam = channel::lambda_value(S, CaseTag::c1(), g, g, mu, 1e-10);
    const double n2 = out.norm(2.0);
    const double lhs = r.ratio * r.ratio + std::norm(lam) / (nq * nq);
    const double rhs = n2 * n2 / (nq * nq);
    sub(std::abs(lhs - rhs) <= 4e-5, "E_2 Pythagoras identity");

    const auto r10 = mc::ep_certified(coeff, 0.05, mu, 2.0, 2.0, CaseTag::c1(),
                                      Polarization{0.0}, Delta / 10.0);
    sub(std::abs(r.ratio - r10.ratio) <= Delta, "certified-accuracy self-consistency");
  }

  std::string detail;
  for (const auto& f : fails) detail += f + "; ";
  report(7, ok, "core analysis property suite", detail);
}

}  // namespace

int main() {
  const bool smoke = std::getenv("TFCHAN_ACCEPT_SMOKE") != nullptr;
  const long runs = smoke ? 100 : 1000;
  std::printf("acceptance suite (%s campaigns, N = %ld)\n", smoke ? "smoke" : "full",
              runs);
  criterion_1_2(runs);
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  std::printf("%d criteria failed\n", g_failures);
  return g_failures;
}
