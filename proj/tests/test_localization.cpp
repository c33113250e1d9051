#include <cmath>

#include "doctest.h"
#include "tfchan/bounds.hpp"
#include "tfchan/localization.hpp"
#include "tfchan/special.hpp"

using namespace tfchan;
using namespace tfchan::localization;
using channel::SupportRegion;

namespace {
constexpr double kE = 2.71828182845904523536;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

TEST_CASE("localization matrix entries on the disc") {
  auto U = SupportRegion::disc_of_measure(0.5);
  auto q = localization_matrix(U, 4, 1e-8);
  CHECK(q.at(0, 0).real() ==
        doctest::Approx(specfun::laguerre_disc_mass(0.5)).epsilon(1e-7));
  CHECK(std::abs(q.at(0, 0).imag()) <= 1e-7);
  // rotational symmetry kills the even off-diagonal couplings too
  CHECK(std::abs(q.at(0, 2)) <= 1e-6);

  auto tiny = localization_matrix(SupportRegion::disc_of_measure(1e-4), 3, 1e-9);
  CHECK(tiny.at(0, 0).real() >= 0.999);
  CHECK(std::abs(tiny.at(0, 1)) <= 1e-6);
}

TEST_CASE("shared-node entries agree with the adaptive reference") {
  auto U = SupportRegion::centered_square_of_measure(0.6);
  auto q = localization_matrix(U, 5, 1e-9);
  for (auto [i, j] : {std::pair{0, 0}, {1, 3}, {2, 4}}) {
    const Complex ref = localization_entry_adaptive(U, i, j, 3e-8);
    CHECK(std::abs(q.at(i, j) - ref) <= 1e-7);
  }
}

TEST_CASE("diagonal entries equal the Laguerre integrals") {
  const double tol = 1e-7;
  for (int shape = 0; shape < 2; ++shape) {
    auto U = shape ? SupportRegion::centered_square_of_measure(0.8)
                   : SupportRegion::disc_of_measure(0.8);
    auto q = localization_matrix(U, 9, tol);
    for (int m = 0; m <= 8; ++m) {
      auto f = [&](double x, double y) {
        return Complex{specfun::laguerre_fn(m, kPi * (x * x + y * y)), 0.0};
      };
      const double lag = U.integrate(f, 1e-9).value.real() / U.measure();
      CHECK(std::abs(q.at(m, m).real() - lag) <= 10 * tol);
      CHECK(std::abs(q.at(m, m).imag()) <= 10 * tol);
    }
  }
}

TEST_CASE("Hermitian symmetry for symmetric supports") {
  auto U = SupportRegion::centered_square_of_measure(0.8);
  const double tol = 1e-7;
  auto q = localization_matrix(U, 6, tol, /*exploit_symmetry=*/false);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(std::abs(q.at(i, j) - std::conj(q.at(j, i))) <= 10 * tol);
}

TEST_CASE("top eigenvalues on the disc") {
  auto U = SupportRegion::disc_of_measure(0.01);
  auto q = localization_matrix(U, 8, 1e-9);
  const double lq = top_eigenvalue(q, EigWhich::kQ);
  CHECK(lq >= specfun::laguerre_disc_mass(0.01) - 1e-7);
  CHECK(lq <= 1.0 + 1e-9);
  const double lqq = top_eigenvalue(q, EigWhich::kQstarQ);
  CHECK(lqq == doctest::Approx(lq * lq).epsilon(1e-7));
}

TEST_CASE("eigenvalue convergence control") {
  auto r = lambda_max(SupportRegion::disc_of_measure(0.1), EigWhich::kQstarQ, 1e-7, 8, 32);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::pow(specfun::laguerre_disc_mass(0.1), 2))
                       .epsilon(1e-5));
}

TEST_CASE("ordering chain: Laguerre lower bound <= lambda_max(Q*Q) <= N_2") {
  for (int shape = 0; shape < 2; ++shape)
    for (double m : {0.1, 1.0}) {
      auto U = shape ? SupportRegion::centered_square_of_measure(m)
                     : SupportRegion::disc_of_measure(m);
      const double lower = laguerre_lower_bound(U, 0);
      const auto top = lambda_max(U, EigWhich::kQstarQ, 1e-8, 8, 32);
      const double n2 = fidelity_bound(m, 2.0);
      const double n1 = fidelity_bound(m, 1.0);
      CHECK(lower <= top.value + 1e-6);
      CHECK(top.value <= n2 + 1e-6);
      CHECK(std::sqrt(top.value) <= n1 + 1e-6);
    }
}

TEST_CASE("Gaussian localization level stays below the fidelity bound") {
  // the Gaussian <A_1, C> value can exceed lambda_max(Q*Q) (it optimizes a
  // different pairing) but never the N_2 cap
  for (double m : {0.01, 0.5, 1.0, 2.0}) {
    const double gauss = bounds::gaussian_localization_level(
        SupportRegion::disc_of_measure(m), 1);
    CHECK(gauss <= fidelity_bound(m, 2.0) + 1e-12);
  }
}

TEST_CASE("Laguerre lower bound values") {
  CHECK(laguerre_lower_bound(SupportRegion::disc_of_measure(2.0), 0) ==
        doctest::Approx(std::pow(1.0 - std::exp(-1.0), 2)).epsilon(1e-12));
  CHECK(laguerre_lower_bound(SupportRegion::disc_of_measure(2.0), 0) ==
        doctest::Approx(0.399576).epsilon(1e-5));

  const double e = std::erf(std::sqrt(kPi * 0.01 / 8.0));
  const double l = 2.0 * e * e / 0.01;
  CHECK(laguerre_lower_bound(SupportRegion::centered_square_of_measure(0.01), 0) ==
        doctest::Approx(l * l).epsilon(1e-10));

  for (int m : {0, 1, 2, 3})
    CHECK(laguerre_lower_bound(SupportRegion::disc_of_measure(1e-6), m) ==
          doctest::Approx(1.0).epsilon(1e-4));

  // the centered grid union is origin-symmetric; its bound is well-defined
  CHECK(laguerre_lower_bound(SupportRegion::grid_union(2, 0.1), 0) > 0.9);

  // disc closed form against the 2-d quadrature route for m = 2
  auto U = SupportRegion::disc_of_measure(0.7);
  auto f = [&](double x, double y) {
    return Complex{specfun::laguerre_fn(2, kPi * (x * x + y * y)), 0.0};
  };
  const double direct = U.integrate(f, 1e-10).value.real() / U.measure();
  CHECK(laguerre_lower_bound(U, 2) == doctest::Approx(direct * direct).epsilon(1e-7));
}

TEST_CASE("fidelity bound closed form") {
  CHECK(fidelity_bound(0.01, 2.0) == doctest::Approx(std::exp(-0.01 / kE)).epsilon(1e-14));
  CHECK(fidelity_bound(0.01, 2.0) == doctest::Approx(0.996327).epsilon(1e-6));
  CHECK(fidelity_bound(4.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  // branch continuity at |U| = e
  CHECK(fidelity_bound(kE, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(std::abs(fidelity_bound(kE * (1 - 1e-12), 2.0) -
                 fidelity_bound(kE * (1 + 1e-12), 2.0)) <= 1e-11);
}

TEST_CASE("fidelity bound: closed form equals the numeric minimization") {
  for (double r : {1.0, 2.0, 3.0})
    for (double m : {0.01, 0.1, 1.0, kE, 4.0})
      CHECK(std::abs(fidelity_bound(m, r) - fidelity_bound_numeric(m, r)) <= 1e-10);
}

TEST_CASE("fidelity bound monotone in |U| and r") {
  double prev = 2.0;
  for (double m : {0.01, 0.1, 0.5, 1.0, 3.0, 8.0}) {
    const double v = fidelity_bound(m, 2.0);
    CHECK(v < prev);
    prev = v;
  }
  prev = 2.0;
  for (double r : {0.5, 1.0, 2.0, 3.0, 6.0}) {
    const double v = fidelity_bound(1.0, r);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("support size limit from the residual sup") {
  CHECK(support_size_limit(1.0, 2) ==
        doctest::Approx(2.0 * kE * std::log(2.0)).epsilon(1e-12));
  CHECK(support_size_limit(1.0, 2) == doctest::Approx(3.7684).epsilon(1e-4));
  CHECK(std::isinf(support_size_limit(1.0, 1)));
  CHECK(support_size_limit(0.0, 1) == 0.0);
  double prev = 0.0;
  for (double t : {0.5, 0.9, 0.99, 0.999}) {
    const double v = support_size_limit(t, 1);
    CHECK(v > prev);
    prev = v;
  }
}
