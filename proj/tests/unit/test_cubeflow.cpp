#include <cmath>
#include <random>

#include "doctest.h"
#include "sympext/cubeflow/knothe.hpp"
#include "sympext/cubeflow/normalize.hpp"
#include "sympext/cubeflow/partition.hpp"
#include "sympext/cubeflow/square.hpp"
#include "sympext/cubeflow/transport.hpp"
#include "sympext/bumps/profile.hpp"
#include "sympext/error.hpp"
#include "sympext/fndsl/field.hpp"
#include "partition_fixture.hpp"

using namespace sympext;
using namespace sympext::cubeflow;
using numkit::kPi;

namespace {

ScalarFnPtr field(const char* text, std::size_t arity) { return fndsl::parse_field(text, arity); }

const char* kSeparable = "(1 + 0.4*sin(2*pi*x))*(1 + 0.4*cos(2*pi*y))";

double sep_v1(double x) { return x + 0.4 * (1 - std::cos(2 * kPi * x)) / (2 * kPi); }
double sep_v2(double y) { return y + 0.4 * std::sin(2 * kPi * y) / (2 * kPi); }
double one_d(double x) { return x + (1 - std::cos(2 * kPi * x)) / (4 * kPi); }

}  // namespace

TEST_CASE("knothe_factor examples") {
  auto id = knothe_factor(field("1", 2), unit_cube(2));
  Point p{0.3, 0.8, 0};
  auto q = id->eval(p);
  CHECK(std::abs(q[0] - 0.3) < 1e-12);
  CHECK(std::abs(q[1] - 0.8) < 1e-12);

  auto sep = knothe_factor(field(kSeparable, 2), unit_cube(2));
  for (double x : {0.0, 0.13, 0.5, 0.77, 1.0})
    for (double y : {0.0, 0.31, 0.9}) {
      auto v = sep->eval(Point{x, y, 0});
      CHECK(std::abs(v[0] - sep_v1(x)) < 1e-10);
      CHECK(std::abs(v[1] - sep_v2(y)) < 1e-10);
    }

  auto line = knothe_factor(field("1 + 0.5*sin(2*pi*x)", 1), unit_cube(1));
  for (double x : {0.0, 0.3, 0.65, 1.0}) CHECK(std::abs(line->eval(Point{x, 0, 0})[0] - one_d(x)) < 1e-12);

  CHECK_THROWS_AS(knothe_factor(field("x - 0.5", 1), unit_cube(1)), Error);
}

TEST_CASE("knothe_factor determinant and boundary values") {
  auto h = field("exp(0.3*sin(2*x + y)) + 0.2*x*y", 2);
  auto v = knothe_factor(h, unit_cube(2));
  for (double x : {0.1, 0.5, 0.9})
    for (double y : {0.2, 0.7}) {
      CHECK(std::abs(v->det(Point{x, y, 0}) - (*h)(Point{x, y, 0})) < 1e-9);
      CHECK(std::abs(v->eval(Point{x, 1.0, 0})[1] - 1.0) < 1e-9);
      CHECK(std::abs(v->eval(Point{x, 0.0, 0})[1]) < 1e-12);
    }
  CHECK(std::abs(v->eval(Point{1.0, 0.4, 0})[0] - v->mass()) < 1e-10);

  auto h3 = field("1 + 0.2*x*y*z", 3);
  auto v3 = knothe_factor(h3, unit_cube(3));
  Point p{0.4, 0.6, 0.3};
  CHECK(std::abs(v3->det(p) - (*h3)(p)) < 1e-9);
  CHECK(std::abs(v3->eval(Point{0.4, 0.6, 1.0})[2] - 1.0) < 1e-9);
}

TEST_CASE("invert_triangular") {
  auto id = knothe_factor(field("1", 2), unit_cube(2));
  Point y{0.25, 0.6, 0};
  auto x = invert_triangular(*id, y);
  CHECK(std::abs(x[0] - 0.25) < 1e-12);
  CHECK(std::abs(x[1] - 0.6) < 1e-12);

  auto line = knothe_factor(field("1 + 0.5*sin(2*pi*x)", 1), unit_cube(1));
  CHECK(std::abs(invert_triangular(*line, Point{one_d(0.3), 0, 0})[0] - 0.3) < 1e-10);

  auto sep = knothe_factor(field(kSeparable, 2), unit_cube(2));
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Point p{u(rng), u(rng), 0};
    Point back = invert_triangular(*sep, sep->eval(p));
    worst = std::max({worst, std::abs(back[0] - p[0]), std::abs(back[1] - p[1])});
  }
  CHECK(worst <= 1e-9);

  auto inv = InverseMap<KnotheMap>(sep);
  Point q{0.4, 0.7, 0};
  CHECK(std::abs(inv.det(sep->eval(q)) * sep->det(q) - 1.0) < 1e-9);
  CHECK_THROWS_AS(invert_triangular(*line, Point{5.0, 0, 0}), Error);
}

TEST_CASE("knothe_transport pushes h to g") {
  auto h = field(kSeparable, 2);
  auto u = knothe_transport(h, field("1", 2), unit_cube(2));
  for (double x : {0.1, 0.45, 0.8})
    for (double y : {0.15, 0.6}) {
      auto p = u->eval(Point{x, y, 0});
      CHECK(std::abs(p[0] - sep_v1(x)) < 1e-8);
      CHECK(std::abs(p[1] - sep_v2(y)) < 1e-8);
      CHECK(std::abs(u->det(Point{x, y, 0}) - (*h)(Point{x, y, 0})) < 1e-7);
    }
}

namespace {

/// Points on the faces of the domain, plus the interface of a double cube.
std::vector<Point> face_points(const CubeDomain& dom, int per_face) {
  std::vector<Point> pts;
  std::vector<double> levels0 = dom.doubled ? std::vector<double>{-1, 0, 1} : std::vector<double>{0, 1};
  for (int s = 0; s < per_face; ++s) {
    const double t = (s + 0.5) / per_face;
    for (double e : levels0) pts.push_back(Point{e, t, 0});
    for (double e : {0.0, 1.0}) pts.push_back(Point{dom.lo(0) + (1 - dom.lo(0)) * t, e, 0});
  }
  return pts;
}

double face_defect(const SpaceMap& v, const ScalarFn& f, const std::vector<Point>& pts, double* moved) {
  double worst = 0.0;
  *moved = 0.0;
  for (const auto& p : pts) {
    const Point q = v.eval(p);
    *moved = std::max({*moved, std::abs(q[0] - p[0]), std::abs(q[1] - p[1])});
    worst = std::max(worst, std::abs(v.det(p) * f(q) - 1.0));
  }
  return worst;
}

}  // namespace

TEST_CASE("separation_normalize") {
  auto id = separation_normalize(field("1", 2), 2);
  Point p{0.37, 0.81, 0};
  CHECK(id->eval(p) == p);

  double moved = 0.0;
  auto edge_one = field("1 + 4*x*(1-x)*y*(1-y)", 2);
  auto v1 = separation_normalize(edge_one, 2);
  CHECK(face_defect(*v1, *edge_one, face_points(unit_cube(2), 50), &moved) < 1e-7);
  CHECK(moved < 1e-9);

  auto bumpy = field("exp(sin(pi*x)*sin(pi*y))", 2);
  auto v2 = separation_normalize(bumpy, 2);
  CHECK(face_defect(*v2, *bumpy, face_points(unit_cube(2), 50), &moved) < 1e-7);
  CHECK(moved < 1e-9);

  auto f = field("1 + 0.3*sin(pi*x)*(1 + y) + 0.2*sin(pi*y)*x", 2);
  auto v = separation_normalize(f, 2);
  CHECK(face_defect(*v, *f, face_points(unit_cube(2), 50), &moved) < 1e-7);
  CHECK(moved < 1e-9);
  CHECK(std::abs(v->eval(Point{0.5, 0.5, 0})[0] - 0.5) > 1e-4);
  double min_det = 1e9;
  for (int i = -12; i <= 32; ++i)
    for (int j = -12; j <= 32; ++j) min_det = std::min(min_det, v->det(Point{i / 20.0, j / 20.0, 0}));
  CHECK(min_det > 0.0);
  const double m = v->margin();
  for (Point far : {Point{-m - 0.01, 0.3, 0}, Point{0.4, 1 + m + 0.2, 0}, Point{1 + m, -m, 0}})
    CHECK(v->eval(far) == far);

  CHECK_THROWS_AS(separation_normalize(field("2", 2), 2), Error);
  try {
    separation_normalize(field("1 + x*y", 2), 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CornerMismatch);
  }

  auto line = separation_normalize(field("1 + 0.5*x", 1), 1);
  CHECK(std::abs(line->det(Point{0.0, 0, 0}) - 1.0) < 1e-12);
  CHECK(std::abs(line->det(Point{1.0, 0, 0}) * 1.5 - 1.0) < 1e-12);
  CHECK(std::abs(line->eval(Point{1.0, 0, 0})[0] - 1.0) < 1e-14);
}

TEST_CASE("grid_normalize") {
  auto id = grid_normalize(field("1", 2), 2);
  Point p{-0.37, 0.81, 0};
  CHECK(id->eval(p) == p);

  double moved = 0.0;
  auto trivial = field("1 + sin(pi*x)^2*sin(pi*y)^2", 2);
  auto v0 = grid_normalize(trivial, 2);
  CHECK(face_defect(*v0, *trivial, face_points(double_cube(2), 50), &moved) < 1e-7);

  // Only face values enter, so f = 1 on the faces gives the identity.
  for (Point q : {Point{-0.95, 0.05, 0}, Point{0.97, 0.5, 0}, Point{0.02, 0.96, 0}}) CHECK(v0->eval(q) == q);

  auto f = field("1 + 0.3*sin(pi*x)*(1 + y) + 0.2*sin(pi*y)*cos(pi*x/2)", 2);
  auto v = grid_normalize(f, 2);
  CHECK(face_defect(*v, *f, face_points(double_cube(2), 50), &moved) < 1e-7);
  CHECK(moved < 1e-9);
  double min_det = 1e9;
  for (int i = -30; i <= 30; ++i)
    for (int j = -5; j <= 25; ++j) min_det = std::min(min_det, v->det(Point{i / 20.0, j / 20.0, 0}));
  CHECK(min_det > 0.0);

  try {
    grid_normalize(field("1 + x*x*y", 2), 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CornerMismatch);
  }
}

namespace {

struct TransportDefects {
  double pushforward = 0.0;  // |g(u) det Du - h|
  double boundary = 0.0;     // |u - x| on faces (and the interface)
};

TransportDefects transport_defects(const SpaceMap& u, const ScalarFn& h, const ScalarFn& g,
                                   const CubeDomain& dom, int grid) {
  TransportDefects d;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < (dom.dim == 1 ? 1 : grid); ++j) {
      Point p{dom.lo(0) + (1 - dom.lo(0)) * (i + 0.5) / grid, (j + 0.5) / grid, 0};
      if (dom.dim == 1) p[1] = 0;
      d.pushforward = std::max(d.pushforward, std::abs(g(u.eval(p)) * u.det(p) - h(p)));
    }
  if (dom.dim == 1) {
    for (double e : {dom.lo(0), 0.0, 1.0}) d.boundary = std::max(d.boundary, std::abs(u.eval(Point{e, 0, 0})[0] - e));
    return d;
  }
  for (const auto& p : face_points(dom, 40)) {
    const Point q = u.eval(p);
    d.boundary = std::max({d.boundary, std::abs(q[0] - p[0]), std::abs(q[1] - p[1])});
  }
  return d;
}

}  // namespace

TEST_CASE("mose_transport") {
  auto h = field("1 + 0.4*sin(2*pi*x)*sin(pi*y)", 2);
  auto same = mose_transport(h, h, 2);
  Point p{0.3, 0.7, 0};
  Point q = same->eval(p);
  CHECK(std::abs(q[0] - 0.3) < 1e-9);
  CHECK(std::abs(q[1] - 0.7) < 1e-9);

  auto line = mose_transport(field("1 + 0.5*sin(2*pi*x)", 1), field("1", 1), 1);
  for (double x : {0.0, 0.2, 0.5, 0.9, 1.0}) CHECK(std::abs(line->eval(Point{x, 0, 0})[0] - one_d(x)) < 1e-9);

  auto g = field("1 + 0.3*sin(pi*x)*sin(2*pi*y)", 2);
  auto u = mose_transport(h, g, 2);
  auto d = transport_defects(*u, *h, *g, unit_cube(2), 32);
  MESSAGE("mose 2-D pushforward " << d.pushforward << ", boundary " << d.boundary);
  CHECK(d.pushforward <= 1e-7);
  CHECK(d.boundary <= 1e-8);
  CHECK(u->eval(Point{1.2, 0.5, 0}) == Point{1.2, 0.5, 0});

  // Staged Jacobian against plain seeded differentiation.
  for (Point x : {Point{0.3, 0.7, 0}, Point{0.05, 0.9, 0}, Point{1.0, 0.4, 0}}) {
    const auto [v1, j1] = u->jet(x);
    const auto [v2, j2] = u->SpaceMap::jet(x);
    for (std::size_t r = 0; r < 2; ++r) {
      CHECK(std::abs(v1[r] - v2[r]) < 1e-13);
      for (std::size_t c = 0; c < 2; ++c) CHECK(std::abs(j1[r][c] - j2[r][c]) < 1e-10);
    }
  }
  const auto [lv, lj] = line->jet(Point{0.4, 0, 0});
  CHECK(std::abs(lj[0][0] - line->SpaceMap::jet(Point{0.4, 0, 0}).second[0][0]) < 1e-10);
  CHECK(std::abs(lv[0] - one_d(0.4)) < 1e-9);

  // The plain triangular transport moves the bottom edge for this pair.
  auto k = knothe_transport(h, g, unit_cube(2));
  CHECK(std::abs(k->eval(Point{0.3, 0.0, 0})[0] - 0.3) > 1e-3);

  auto expect_kind = [](auto fn, ErrorKind kind) {
    try {
      fn();
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == kind);
    }
  };
  expect_kind([] { mose_transport(field("1 + 0.2*x", 2), field("1.1", 2), 2); }, ErrorKind::BoundaryMismatch);
  expect_kind([] { mose_transport(field("1 + 0.2*sin(pi*x)*sin(pi*y)", 2), field("1", 2), 2); },
              ErrorKind::MassMismatch);
  expect_kind([] { mose2_transport(field("1 + 0.2*sin(pi*x)*sin(pi*y)", 2), field("1", 2), 2); },
              ErrorKind::HalfMassMismatch);
  expect_kind([] { mose_transport(field("1", 3), field("1", 3), 3); }, ErrorKind::Unsupported);
}

TEST_CASE("mose2_transport") {
  auto line = mose2_transport(field("1 + 0.3*sin(2*pi*x)", 1), field("1", 1), 1);
  for (double x : {-1.0, -0.4, 0.0, 0.35, 1.0}) {
    const double expect = x + 0.3 * (1 - std::cos(2 * kPi * x)) / (2 * kPi);
    CHECK(std::abs(line->eval(Point{x, 0, 0})[0] - expect) < 1e-9);
  }

  auto h = field("1 + 0.3*sin(pi*y)*(1 - x*x)*(1 - 5*x*x) + 0.2*sin(2*pi*x)*sin(pi*y)", 2);
  auto g = field("1", 2);
  auto u = mose2_transport(h, g, 2);
  auto d = transport_defects(*u, *h, *g, double_cube(2), 24);
  MESSAGE("mose2 2-D pushforward " << d.pushforward << ", boundary " << d.boundary);
  CHECK(d.pushforward <= 1e-7);
  CHECK(d.boundary <= 1e-8);
  for (double y : {0.1, 0.5, 0.8}) CHECK(std::abs(u->eval(Point{0.0, y, 0})[0]) < 1e-9);
}

TEST_CASE("doublesquare_transport") {
  auto g = field("1 + 0.2*y + 0.1*x*x", 2);
  auto same = doublesquare_transport(g, g, 2);
  CHECK(same.lambda == doctest::Approx(1.0));
  Point p{-0.3, 0.6, 0};
  Point q = same.map->eval(p);
  CHECK(std::abs(q[0] - p[0]) < 1e-8);
  CHECK(std::abs(q[1] - p[1]) < 1e-8);

  auto twice = doublesquare_transport(field("2*(1 + 0.2*y + 0.1*x*x)", 2), g, 2);
  CHECK(twice.lambda == doctest::Approx(2.0));
  q = twice.map->eval(p);
  CHECK(std::abs(q[0] - p[0]) < 1e-8);
  CHECK(std::abs(q[1] - p[1]) < 1e-8);

  // f = g on the boundary with lambda != 1 cannot be met by a map fixing the corners.
  try {
    doublesquare_transport(field("1 + 0.2*sin(pi*x)^2*sin(pi*y)^2", 2), field("1", 2), 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundaryMismatch);
  }

  auto gy = field("1 + 0.2*y", 2);
  auto f = field("(1 + 0.2*y)*(1 + 0.2*sin(pi*y)^2*sin(2*pi*x))", 2);
  auto r = doublesquare_transport(f, gy, 2);
  CHECK(std::abs(r.lambda - 1.0) < 1e-10);
  double worst = 0.0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 8; ++j) {
      Point x{-1 + 2 * (i + 0.5) / 16, (j + 0.5) / 8, 0};
      worst = std::max(worst, std::abs(r.map->det(x) * (*f)(r.map->eval(x)) - r.lambda * (*gy)(x)));
    }
  MESSAGE("doublesquare defect " << worst);
  CHECK(worst <= 1e-6);
  double moved = 0.0;
  for (const auto& b : face_points(double_cube(2), 30)) {
    const Point m = r.map->eval(b);
    moved = std::max({moved, std::abs(m[0] - b[0]), std::abs(m[1] - b[1])});
  }
  CHECK(moved <= 1e-8);

  try {
    doublesquare_transport(field("1 + 0.2*x", 2), g, 2, {false});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RatioMismatch);
  }
}

namespace {

struct SquareDefects {
  double det = 0.0;       // |det Dpsi - 1| on the grid
  double boundary = 0.0;  // |psi - phi1| on the square
};

SquareDefects square_defects(const SquareExtension& ext, int grid, int per_edge) {
  SquareDefects d;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const Point p{(i + 0.5) / grid, (j + 0.5) / grid, 0};
      d.det = std::max(d.det, std::abs(ext.psi->det(p) - 1.0));
    }
  for (int s = 0; s <= per_edge; ++s) {
    const double t = static_cast<double>(s) / per_edge;
    for (Point p : {Point{t, 0, 0}, Point{t, 1, 0}, Point{0, t, 0}, Point{1, t, 0}}) {
      const Point a = ext.psi->eval(p), b = ext.phi1->eval(p);
      d.boundary = std::max({d.boundary, std::abs(a[0] - b[0]), std::abs(a[1] - b[1])});
    }
  }
  return d;
}

}  // namespace

TEST_CASE("square_extension") {
  auto id = square_extension(fndsl::parse_map({"x", "y"}));
  Point p{0.3, 0.6, 0};
  Point q = id.psi->eval(p);
  CHECK(std::abs(q[0] - 0.3) < 1e-9);
  CHECK(std::abs(q[1] - 0.6) < 1e-9);

  auto shear = square_extension(fndsl::parse_map({"x + 0.2*sin(pi*x)^2", "y"}));
  auto d = square_defects(shear, 8, 32);
  MESSAGE("square pipeline: det " << d.det << ", boundary " << d.boundary);
  CHECK(d.det <= 1e-6);
  CHECK(d.boundary <= 1e-7);

  auto bulge = square_extension(fndsl::parse_map({"x", "y + 1.5*x*(1-x)*y*(1-y)"}));
  auto e = square_defects(bulge, 6, 16);
  CHECK(e.det <= 1e-6);
  CHECK(e.boundary <= 1e-7);
  Point a = bulge.psi->eval(Point{0.3, 0.3, 0}), b = bulge.phi1->eval(Point{0.3, 0.3, 0});
  CHECK(std::hypot(a[0] - b[0], a[1] - b[1]) > 1e-4);

  auto kind = [](std::vector<std::string> c) {
    try {
      square_extension(fndsl::parse_map(c));
    } catch (const Error& err) {
      return err.kind();
    }
    return ErrorKind::Usage;
  };
  CHECK(kind({"x + 0.1", "y"}) == ErrorKind::NotBoundaryPreserving);
  CHECK(kind({"1 - x", "y"}) == ErrorKind::OrientationReversed);
  CHECK(kind({"x + 0.1*sin(pi*x)", "y"}) == ErrorKind::CornerDerivativeMismatch);
}

TEST_CASE("balanced_partition") {
  const auto problem = fixtures::three_cover_problem();
  const auto res = balanced_partition(problem);
  const auto& rep = res.report;
  REQUIRE(res.pieces.size() == 3);
  CHECK(rep.parent == std::vector<int>{-1, 0, 1});

  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Point p{4.0 * (i + 0.5) / 10000, 0, 0};
    double sum = 0.0;
    for (const auto& g : res.pieces) sum += (*g)(p);
    worst = std::max(worst, std::abs(sum - (*problem.g)(p)));
  }
  MESSAGE("reconstruction " << worst << ", measured c " << rep.measured_c << ", bound " << rep.bound);
  CHECK(worst <= 1e-12);
  for (const auto& [on_u, on_b] : rep.piece_integrals) {
    CHECK(std::abs(on_u) <= 1e-7);
    CHECK(std::abs(on_b) <= 1e-7);
  }
  // Supports: every piece vanishes outside its cover.
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& c = problem.covers[j];
    for (double x : {c.lo[0] - 0.3, c.lo[0] - 1e-9, c.lo[0], c.hi[0], c.hi[0] + 1e-9, c.hi[0] + 0.3})
      if (x > 0.0 && x < 4.0) CHECK((*res.pieces[j])(Point{x, 0, 0}) == 0.0);
  }
  CHECK(rep.measured_c > 0.0);
  CHECK(rep.measured_c <= rep.bound);

  // Non-constant weight: g / tau stays balanced.
  auto weighted = problem;
  weighted.tau = field("1 + 0.3*sin(x)", 1);
  weighted.g = numkit::make_scalar_fn(1, [g = problem.g, tau = weighted.tau](const auto& x) {
    return g->eval(x) / tau->eval(x);
  });
  const auto wres = balanced_partition(weighted);
  for (const auto& [on_u, on_b] : wres.report.piece_integrals) {
    CHECK(std::abs(on_u) <= 1e-7);
    CHECK(std::abs(on_b) <= 1e-7);
  }

  SUBCASE("trivial cases") {
    auto zero = problem;
    zero.g = field("0", 1);
    for (const auto& g : balanced_partition(zero).pieces)
      for (double x : {0.3, 1.0, 2.2, 3.9}) CHECK((*g)(Point{x, 0, 0}) == 0.0);
    auto single = problem;
    single.covers = {fixtures::interval(-0.5, 4.5)};
    const auto one = balanced_partition(single);
    REQUIRE(one.pieces.size() == 1);
    for (double x : {0.3, 1.0, 1.4, 2.2}) CHECK((*one.pieces[0])(Point{x, 0, 0}) == doctest::Approx((*problem.g)(Point{x, 0, 0})).epsilon(1e-14));
  }
  SUBCASE("errors") {
    auto expect_kind = [](const PartitionProblem& p, ErrorKind kind) {
      try {
        balanced_partition(p);
        CHECK(false);
      } catch (const Error& e) {
        CHECK(e.kind() == kind);
      }
    };
    auto unbalanced = problem;
    unbalanced.g = field("sin(x)", 1);
    expect_kind(unbalanced, ErrorKind::NotBalanced);
    auto misses = problem;
    misses.covers.push_back(fixtures::interval(1.5, 2.5));
    expect_kind(misses, ErrorKind::BadCoverOrder);
    auto order = problem;
    order.covers = {fixtures::interval(0.0, 1.5), fixtures::interval(2.5, 4.0), fixtures::interval(0.5, 3.5)};
    expect_kind(order, ErrorKind::BadCoverOrder);
  }
}

TEST_CASE("balanced_partition in the plane") {
  auto box = [](double x0, double x1, double y0, double y1) {
    Box b;
    b.dim = 2;
    b.lo = {x0, y0, 0};
    b.hi = {x1, y1, 0};
    return b;
  };
  PartitionProblem p;
  p.dim = 2;
  p.U = box(0, 3, 0, 3);
  p.B = box(1, 2, 1, 2);
  p.covers = {box(0, 1.6, 0, 3), box(1.4, 3, 0, 3)};
  p.tau = field("1 + 0.1*x*y", 2);
  const bumps::PlateauBump b{1.5, 0.2, 0.9};
  p.g = numkit::make_scalar_fn(2, [b, tau = p.tau](const auto& x) {
    auto inside = [&](const auto& t) { return t > b.left() && t < b.right(); };
    if (!inside(x[0]) || !inside(x[1])) return 0.0 * x[0];
    return b.deriv(x[0]) * b.eval(x[1]) / tau->eval(x);
  });
  const auto res = balanced_partition(p);
  CHECK(res.report.parent == std::vector<int>{-1, 0});
  CHECK(std::abs(res.report.lambda_u[1]) > 1e-3);
  for (const auto& [on_u, on_b] : res.report.piece_integrals) {
    CHECK(std::abs(on_u) <= 1e-7);
    CHECK(std::abs(on_b) <= 1e-7);
  }
  for (Point q : {Point{0.7, 1.2, 0}, Point{1.5, 1.9, 0}, Point{2.2, 0.8, 0}})
    CHECK(std::abs((*res.pieces[0])(q) + (*res.pieces[1])(q) - (*p.g)(q)) <= 1e-12);
  CHECK((*res.pieces[0])(Point{1.7, 1.5, 0}) == 0.0);
  CHECK((*res.pieces[1])(Point{1.3, 1.5, 0}) == 0.0);
}
