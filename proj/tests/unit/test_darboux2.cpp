#include <chrono>
#include <cmath>

#include "doctest.h"
#include "sympext/darboux2/darboux.hpp"
#include "sympext/error.hpp"
#include "sympext/fndsl/field.hpp"

using namespace sympext;
using namespace sympext::darboux2;

namespace {

ScalarFnPtr field(const char* text) { return fndsl::parse_field(text, 2); }

ErrorKind kind_of(auto fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Usage;
}

}  // namespace

TEST_CASE("implicit_h") {
  ImplicitH id(field("x"), Point{0, 0, 0}, 0.5);
  CHECK(id(Point{0.3, -0.2, 0}) == doctest::Approx(0.3).epsilon(1e-14));
  ImplicitH half(field("2*x"), Point{0, 0, 0}, 0.5);
  CHECK(std::abs(half(Point{0.3, 0.1, 0}) - 0.15) < 1e-14);
  CHECK(std::abs(half.slope(Point{0.3, 0.1, 0}) - 0.5) < 1e-14);

  auto p = field("2*x + 0.3*sin(x + y)");
  ImplicitH h(p, Point{0, 0, 0}, 0.5);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const Point q{-0.5 + i / 19.0, -0.5 + j / 19.0, 0};
      const double s = h(q);
      worst = std::max(worst, std::abs((*p)(Point{s, q[1], 0}) - q[0]));
    }
  CHECK(worst <= 1e-10);

  // Derivatives by implicit differentiation.
  const Point q{0.2, -0.3, 0};
  const double s = h(q);
  const double px = 2 + 0.3 * std::cos(s + q[1]), py = 0.3 * std::cos(s + q[1]);
  CHECK(std::abs(numkit::partial_at(h, 0, q) - 1 / px) < 1e-12);
  CHECK(std::abs(numkit::partial_at(h, 1, q) + py / px) < 1e-12);

  CHECK(kind_of([] { ImplicitH(field("x*x - 0.01"), Point{0, 0, 0}, 0.5); }) == ErrorKind::DerivativeSignViolation);
  ImplicitH bounded(field("atan(x)"), Point{0, 0, 0}, 0.5);
  CHECK(kind_of([&] { bounded(Point{2.0, 0, 0}); }) == ErrorKind::BracketExpansionFailed);
}

TEST_CASE("darboux_field") {
  auto zero = std::make_shared<ImplicitH>(field("x"), Point{0, 0, 0}, 0.5);
  DarbouxField still(zero, 0.0, square_box(Point{0, 0, 0}, 1.0));
  CHECK(still.eval(0.4, Point{0.2, 0.3, 0}) == Point{0, 0, 0});

  auto lin = std::make_shared<ImplicitH>(field("2*x"), Point{0, 0, 0}, 0.5);
  DarbouxField f(lin, 0.1, square_box(Point{0, 0, 0}, 1.0));
  for (double t : {0.0, 0.5, 1.0}) {
    const double y = 0.45;
    const auto v = f.eval(t, Point{0.2, y, 0});
    CHECK(v[0] == 0.0);
    CHECK(std::abs(v[1] - (y - 0.1) / (2 * (1 - t / 2))) < 1e-12);
  }
}

TEST_CASE("darboux_normalize") {
  auto id = darboux_normalize(field("x"), Point{0, 0, 0});
  CHECK(id.box_halfwidth == 0.5);
  const Point q{0.2, -0.1, 0};
  CHECK(std::abs(id.f->eval(q)[0] - q[0]) < 1e-12);
  CHECK(std::abs(id.f->eval(q)[1] - q[1]) < 1e-12);

  auto lin = darboux_normalize(field("2*x"), Point{0, 0, 0});
  CHECK(lin.max_value_residual <= 1e-8);
  CHECK(lin.max_det_residual <= 1e-8);

  const auto t0 = std::chrono::steady_clock::now();
  auto p = field("2*x + 0.3*sin(x + y)");
  auto chart = darboux_normalize(p, Point{0, 0, 0});
  MESSAGE("box " << chart.box_halfwidth << ", residuals " << chart.max_value_residual << ", "
                 << chart.max_det_residual << " in "
                 << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s");
  CHECK(chart.box_halfwidth >= 0.05);
  CHECK(chart.max_value_residual <= 1e-6);
  CHECK(chart.max_det_residual <= 1e-6);
  // The chart sends its center to the given point.
  const Point c = chart.f->eval(chart.chart_center);
  CHECK(std::abs(c[0]) < 1e-10);
  CHECK(std::abs(c[1]) < 1e-10);

  CHECK(kind_of([] { darboux_normalize(field("-x"), Point{0, 0, 0}); }) == ErrorKind::DerivativeSignViolation);
  CHECK(kind_of([] { darboux_normalize(field("x + 5000*x^2"), Point{0, 0, 0}); }) ==
        ErrorKind::ShrinkExhausted);
}

TEST_CASE("gradient_precondition") {
  auto same = gradient_precondition(field("3*x + y*y"), Point{0, 0, 0});
  CHECK(same.angle == 0.0);
  CHECK(same.rotation[0][0] == 1.0);

  auto up = gradient_precondition(field("y"), Point{0.5, 0.2, 0});
  CHECK(std::abs(up.angle - numkit::kPi / 2) < 1e-15);
  CHECK(numkit::partial_at(*up.p_rotated, 0, up.center) == doctest::Approx(1.0));
  CHECK(std::abs(up.rotation[0][0] * up.rotation[1][1] - up.rotation[0][1] * up.rotation[1][0] - 1.0) < 1e-15);

  auto back = gradient_precondition(field("-x"), Point{0, 0, 0});
  CHECK(std::abs(std::abs(back.angle) - numkit::kPi) < 1e-15);
  CHECK(numkit::partial_at(*back.p_rotated, 0, back.center) == doctest::Approx(1.0));

  // Rotated values agree with p at the mapped point.
  auto p = field("sin(x) + 2*y");
  auto pre = gradient_precondition(p, Point{0.3, 0.4, 0});
  CHECK(std::abs((*pre.p_rotated)(pre.center) - (*p)(Point{0.3, 0.4, 0})) < 1e-14);

  CHECK(kind_of([] { gradient_precondition(field("x*x + y*y"), Point{0, 0, 0}); }) == ErrorKind::ZeroGradient);
}
