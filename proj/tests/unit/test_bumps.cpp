#include <cmath>
#include <random>

#include "doctest.h"
#include "sympext/bumps/beta.hpp"
#include "sympext/bumps/profile.hpp"
#include "sympext/bumps/smoothstep.hpp"
#include "sympext/error.hpp"
#include "sympext/numkit/quadrature.hpp"

using namespace sympext;
using namespace sympext::bumps;

namespace {

double deriv_fd_error(const BumpProfile& p) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(p.support().lo - 0.1, p.support().hi + 0.1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const double fd = (p.eval(x + 1e-6) - p.eval(x - 1e-6)) / 2e-6;
    worst = std::max(worst, std::abs(fd - p.deriv(x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("smoothstep identities") {
  for (double u : {0.01, 0.2, 0.5, 0.77, 0.99}) {
    CHECK(smoothstep(u) + smoothstep(1.0 - u) == doctest::Approx(1.0).epsilon(1e-15));
    const double quad = numkit::integrate_1d([](double v) { return smoothstep(v); }, 0.0, u, 1e-14);
    CHECK(std::abs(smoothstep_integral(u) - quad) < 1e-14);
  }
  CHECK(smoothstep(0.0) == 0.0);
  CHECK(smoothstep(1.0) == 1.0);
  CHECK(smoothstep_integral(1.0) == 0.5);
  CHECK(smoothstep_deriv(0.5) == doctest::Approx(2.0));
  numkit::D1 u(0.3, 1.0);
  CHECK(smoothstep(u).d == doctest::Approx(smoothstep_deriv(0.3)));
  CHECK(smoothstep_integral(u).d == doctest::Approx(smoothstep(0.3)));
}

TEST_CASE("normalized mollifier") {
  BumpProfile chi = normalized_mollifier();
  CHECK(chi.eval(0.0) == 1.0);
  CHECK(std::abs(chi.integral() - 1.0) < 1e-12);
  CHECK(chi.support().lo == -0.625);
  CHECK(chi.support().hi == 0.625);
  CHECK(chi.eval(0.625) == 0.0);
  CHECK(chi.eval(-0.7) == 0.0);
  CHECK(chi.deriv(0.2) == 0.0);
  CHECK(deriv_fd_error(chi) < 1e-6);
  CHECK(std::abs(chi.cumulative(10.0) - 1.0) < 1e-14);
}

TEST_CASE("cutoff") {
  const double eps = 0.4;
  BumpProfile rho = cutoff(eps);
  CHECK(rho.eval(0.0) == 1.0);
  CHECK(rho.eval(eps) == 0.0);
  CHECK(rho.eval(0.5 * eps) == 1.0);
  for (double x : {0.05, 0.21, 0.29, 0.33, 0.39}) CHECK(rho.eval(-x) == rho.eval(x));
  double prev = 1.0;
  for (int i = 0; i <= 200; ++i) {
    const double v = rho.eval(eps * i / 200.0);
    CHECK(v <= prev);
    prev = v;
  }
  CHECK(deriv_fd_error(rho) < 1e-6);
  CHECK_THROWS_AS(cutoff(0.0), Error);
}

TEST_CASE("balanced blend") {
  BumpProfile w = balanced_blend(0.05, 0.5, 0.5);
  CHECK(w.eval(0.0) == 1.0);
  CHECK(std::abs(w.integral()) < 1e-10);
  const auto br = w.breakpoints();
  const double right = numkit::integrate([&](double x) { return w.eval(x); }, 0.0, w.support().hi,
                                         1e-13, br);
  CHECK(std::abs(right) < 1e-12);
  double lowest = 0.0;
  for (int i = 0; i <= 10000; ++i) lowest = std::min(lowest, w.eval(w.support().lo + (w.support().hi - w.support().lo) * i / 10000.0));
  CHECK(lowest >= -0.5);
  CHECK(lowest == doctest::Approx(-0.2));
  CHECK(std::abs(w.cumulative(0.0)) < 1e-14);
  CHECK(std::abs(w.cumulative(w.support().hi)) < 1e-14);
  CHECK(deriv_fd_error(w) < 1e-6);
  try {
    balanced_blend(0.05, 0.1, 0.5);
    FAIL("expected InfeasibleBalance");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InfeasibleBalance);
  }
}

TEST_CASE("beta reference mass") { CHECK(std::abs(beta_reference_mass() - 0.625) < 1e-12); }

TEST_CASE("beta2 examples") {
  BetaProfile one = beta2(1, 1);
  for (int i = -10; i <= 20; ++i) CHECK(one.eval(i / 10.0) == 1.0);
  BetaProfile p = beta2(2, 3);
  CHECK(p.eval(0.0) == 2.0);
  CHECK(p.eval(1.0) == 3.0);
  const double m = numkit::integrate_1d([&](double x) { return p.eval(x); }, 0.0, 1.0, 1e-13);
  CHECK(std::abs(m - 1.0) < 1e-10);
  CHECK(std::abs(p.cumulative(1.0) - 1.0) < 1e-12);
  BetaProfile q = beta2(0.2, 5);
  double lo = 1e300;
  for (int i = 0; i <= 10000; ++i) lo = std::min(lo, q.eval(i / 10000.0));
  CHECK(lo > 0.0);
  CHECK_THROWS_AS(beta2(0.0, 1.0), Error);
}

TEST_CASE("beta2 grid properties") {
  const double grid[] = {0.2, 0.5, 1.0, 2.0, 5.0};
  for (double a : grid)
    for (double b : grid) {
      BetaProfile p = beta2(a, b);
      CHECK(p.eval(0.0) == a);
      CHECK(p.eval(1.0) == b);
      CHECK(p.eval(-0.5 * p.f_ab() * 0.99) == a);
      CHECK(p.eval(0.3 * p.f_ab()) == a);
      CHECK(p.eval(1.0 - 0.3 * p.f_ab()) == b);
      CHECK(p.f_ab() < 0.5);
      const double m = numkit::integrate([&](double x) { return p.eval(x); }, 0.0, 1.0, 1e-13);
      CHECK(std::abs(m - 1.0) < 1e-10);
      double lo = 1e300;
      for (int i = 0; i <= 2000; ++i) lo = std::min(lo, p.eval(i / 2000.0));
      CHECK(lo > 0.0);
      // cumulative is an antiderivative of eval
      for (double x : {0.1, 0.45, 0.8}) {
        numkit::D1 xd(x, 1.0);
        CHECK(p.cumulative(xd).d == doctest::Approx(p.eval(x)).epsilon(1e-12));
      }
    }
}

TEST_CASE("beta parameter smoothness") {
  for (double a : {0.5, 2.0})
    for (double b : {0.2, 5.0}) {
      BetaProfile p = beta2(a, b), q = beta2(a + 1e-6, b);
      double worst = 0;
      for (int i = 0; i <= 500; ++i) worst = std::max(worst, std::abs(p.eval(i / 500.0) - q.eval(i / 500.0)));
      CHECK(worst <= 1e-4);
    }
  BetaProfile r = beta3(2, 3, 4), s = beta3(2, 3, 4 + 1e-6);
  double worst = 0;
  for (int i = -500; i <= 500; ++i) worst = std::max(worst, std::abs(r.eval(i / 500.0) - s.eval(i / 500.0)));
  CHECK(worst <= 1e-4);
}

TEST_CASE("beta3 examples") {
  BetaProfile one = beta3(1, 1, 1);
  for (int i = -20; i <= 20; ++i) CHECK(one.eval(i / 10.0) == 1.0);
  BetaProfile p = beta3(2, 3, 4);
  CHECK(p.eval(-1.0) == 4.0);
  CHECK(p.eval(0.0) == 2.0);
  CHECK(p.eval(1.0) == 3.0);
  const double neg = numkit::integrate_1d([&](double x) { return p.eval(x); }, -1.0, 0.0, 1e-13);
  const double pos = numkit::integrate_1d([&](double x) { return p.eval(x); }, 0.0, 1.0, 1e-13);
  CHECK(std::abs(neg - 1.0) < 1e-10);
  CHECK(std::abs(pos - 1.0) < 1e-10);
  CHECK(std::abs(p.cumulative(-1.0) + 1.0) < 1e-12);
}
