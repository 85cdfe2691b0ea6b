#include <cmath>

#include "doctest.h"
#include "sympext/error.hpp"
#include "sympext/numkit/dual.hpp"
#include "sympext/numkit/hamiltonian.hpp"
#include "sympext/numkit/maps.hpp"
#include "sympext/numkit/ode.hpp"
#include "sympext/numkit/quadrature.hpp"
#include "sympext/numkit/roots.hpp"

using namespace sympext;
using namespace sympext::numkit;

TEST_CASE("dual arithmetic follows product and chain rules") {
  D1 x(2.0, 1.0);
  D1 f = x * x * sin(x);
  CHECK(f.v == doctest::Approx(4.0 * std::sin(2.0)));
  CHECK(f.d == doctest::Approx(4.0 * std::sin(2.0) + 4.0 * std::cos(2.0)));
  CHECK(D1(3.0).d == 0.0);

  D2 y(D1(0.7, 1.0), D1(1.0, 0.0));
  D2 g = exp(y) * y;
  CHECK(g.d.d == doctest::Approx(std::exp(0.7) * (0.7 + 2.0)));
  D1 r = atan2(D1(1.0, 1.0), D1(1.0, 0.0));
  CHECK(r.d == doctest::Approx(0.5));
}

TEST_CASE("integrate_1d examples") {
  CHECK(std::abs(integrate_1d([](double) { return 1.0; }, 0, 1, 1e-12) - 1.0) < 1e-12);
  CHECK(std::abs(integrate_1d([](double x) { return std::sin(2 * kPi * x); }, 0, 1, 1e-12)) < 1e-12);
  CHECK(std::abs(integrate_1d([](double x) { return std::exp(x); }, 0, 1, 1e-12) -
                 1.718281828459045) < 1e-12);
}

TEST_CASE("integrate_1d is additive") {
  auto f = [](double x) { return std::exp(-x * x) * std::cos(3 * x); };
  const double tol = 1e-11;
  const double ab = integrate_1d(f, -1.0, 0.3, tol);
  const double bc = integrate_1d(f, 0.3, 2.0, tol);
  const double ac = integrate_1d(f, -1.0, 2.0, tol);
  CHECK(std::abs(ab + bc - ac) <= 2 * tol);
}

TEST_CASE("integrate differentiates under the integral sign") {
  D1 s(1.5, 1.0);
  auto val = integrate([&](double t) { return sin(s * t); }, 0.0, 1.0, 1e-13);
  const double exact = (1 - std::cos(1.5)) / 1.5;
  const double dexact = std::sin(1.5) / 1.5 - (1 - std::cos(1.5)) / (1.5 * 1.5);
  CHECK(std::abs(val.v - exact) < 1e-12);
  CHECK(std::abs(val.d - dexact) < 1e-12);
}

TEST_CASE("integrate reports NonConvergence on a singular integrand") {
  bool thrown = false;
  try {
    integrate([](double x) { return x == 0.0 ? 0.0 : std::sin(1.0 / x) / x; }, -1.0, 1.0, 1e-14);
  } catch (const Error& e) {
    thrown = e.kind() == ErrorKind::NonConvergence;
  }
  CHECK(thrown);
}

TEST_CASE("solve_monotone examples") {
  auto id = [](double y) { return ValueSlope{y, 1.0}; };
  CHECK(solve_monotone(id, 0.5, 0, 1, 1e-14) == doctest::Approx(0.5));
  auto cube = [](double y) { return ValueSlope{y * y * y, 3 * y * y}; };
  CHECK(std::abs(solve_monotone(cube, 8, 0, 3, 1e-13) - 2.0) < 1e-13);
  auto wav = [](double y) {
    return ValueSlope{y + 0.1 * std::sin(2 * kPi * y), 1 + 0.2 * kPi * std::cos(2 * kPi * y)};
  };
  const double r = solve_monotone(wav, 0.25, 0, 1, 1e-14);
  CHECK(std::abs(r + 0.1 * std::sin(2 * kPi * r) - 0.25) <= 1e-14);
}

TEST_CASE("solve_monotone errors") {
  auto id = [](double y) { return ValueSlope{y, 1.0}; };
  CHECK_THROWS_AS(solve_monotone(id, 5.0, 0, 1, 1e-12), Error);
  try {
    solve_monotone(id, 5.0, 0, 1, 1e-12);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoBracket);
  }
  // Straddles the target but turns around inside the bracket.
  auto bump = [](double y) { return ValueSlope{std::sin(3 * y), 3 * std::cos(3 * y)}; };
  try {
    solve_monotone(bump, 0.1, 0.0, 2.8, 1e-14, 1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonMonotone);
  }
}

TEST_CASE("flow_ode examples") {
  Box box{2, {-10, -10, 0}, {10, 10, 0}};
  auto zero = make_time_field(box, [](double, const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return Pt<T>{T(0.0), T(0.0), T(0.0)};
  });
  Point p = flow_ode(*zero, Point{1, 2, 0}, 1e-12);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 2.0);
  auto unit = make_time_field(box, [](double, const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return Pt<T>{T(1.0), T(0.0), T(0.0)};
  });
  Point q = flow_ode(*unit, Point{0, 0, 0}, 1e-12);
  CHECK(std::abs(q[0] - 1.0) < 1e-14);
}

TEST_CASE("flow_ode leaves the box") {
  Box box{1, {-1, 0, 0}, {1, 0, 0}};
  auto push = make_time_field(box, [](double, const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return Pt<T>{T(3.0), T(0.0), T(0.0)};
  });
  try {
    flow_ode(*push, Point{0, 0, 0}, 1e-10);
    FAIL("expected DomainEscape");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainEscape);
  }
}

TEST_CASE("hamiltonian rotation flow") {
  auto h = make_scalar_fn(2, [](const auto& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); });
  auto field = hamiltonian_field(h);
  Pt<double> v = field->eval(0.0, Point{1.0, 0.0, 0.0});
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(-1.0));

  Point end = flow_ode(*field, Point{1.0, 0.0, 0.0}, 1e-12);
  CHECK(std::hypot(end[0] - std::cos(1.0), end[1] + std::sin(1.0)) <= 1e-9);

  FlowMap flow(field, 1e-12);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      Point x{-1.0 + 2.0 * i / 9.0, -1.0 + 2.0 * j / 9.0, 0.0};
      worst = std::max(worst, std::abs(flow.det(x) - 1.0));
    }
  CHECK(worst <= 1e-8);
}

TEST_CASE("hamiltonian_field trivial cases") {
  auto c = make_scalar_fn(2, [](const auto& x) { return 0.0 * x[0] + 3.0; });
  auto lin = make_scalar_fn(2, [](const auto& x) { return x[0]; });
  Point p{0.3, -0.2, 0};
  auto fc = hamiltonian_field(c)->eval(0.0, p);
  CHECK(fc[0] == 0.0);
  CHECK(fc[1] == 0.0);
  auto fl = hamiltonian_field(lin)->eval(0.0, p);
  CHECK(fl[0] == 0.0);
  CHECK(fl[1] == -1.0);
}
