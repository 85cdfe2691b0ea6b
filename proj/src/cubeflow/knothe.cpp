#include "sympext/cubeflow/knothe.hpp"

#include <cmath>
#include <sstream>

#include "sympext/error.hpp"
#include "sympext/numkit/roots.hpp"

namespace sympext::cubeflow {

Box CubeDomain::box() const {
  Box b;
  b.dim = dim;
  for (std::size_t i = 0; i < dim; ++i) {
    b.lo[i] = lo(i);
    b.hi[i] = hi(i);
  }
  return b;
}

void require_positive(const ScalarFn& f, const CubeDomain& dom, const char* what) {
  const int k = dom.dim == 1 ? 257 : dom.dim == 2 ? 33 : 9;
  const std::size_t total = static_cast<std::size_t>(std::pow(k, dom.dim));
  for (std::size_t idx = 0; idx < total; ++idx) {
    Point p{};
    std::size_t r = idx;
    for (std::size_t i = 0; i < dom.dim; ++i) {
      p[i] = dom.lo(i) + (dom.hi(i) - dom.lo(i)) * static_cast<double>(r % k) / (k - 1);
      r /= k;
    }
    const double v = f(p);
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << what << " = " << v << " at (" << p[0] << ", " << p[1] << ", " << p[2] << ")";
      throw Error(ErrorKind::NonPositiveDensity, os.str());
    }
  }
}

namespace {

double solve_coordinate(const auto& component, Point x, std::size_t i, double target, double lo,
                        double hi) {
  auto f = [&](double s) {
    Pt<D1> p{};
    for (std::size_t j = 0; j < numkit::kMaxDim; ++j) p[j] = D1(x[j], 0.0);
    p[i] = D1(s, 1.0);
    const D1 v = component(p);
    return numkit::ValueSlope{v.v, v.d};
  };
  return numkit::solve_monotone(f, target, lo, hi, 1e-15, x[i]);
}

}  // namespace

std::pair<Point, numkit::Matrix> CumulativeMap::jet(const Point& x) const {
  Point v = x;
  numkit::Matrix j{};
  bool valued = false;
  for (std::size_t c = 0; c < dim_; ++c) {
    j[c][c] = 1.0;
    if (c == axis_) continue;
    const D1 out = apply(numkit::seed(x, c))[axis_];
    j[axis_][c] = out.d;
    v[axis_] = out.v;
    valued = true;
  }
  if (!valued) v = apply(x);
  j[axis_][axis_] = rho_->eval(x);
  return {v, j};
}

Point CumulativeMap::solve_point(const Point& y, double lo, double hi) const {
  // Newton from y, updating the cumulative integral by the increment over
  // each step; falls back to a bracketed solve if that leaves [lo, hi].
  Point x = y;
  const double target = y[axis_];
  if (target >= lo && target <= hi) {
    auto along = [&](double t) {
      Point p = x;
      p[axis_] = t;
      return rho_->eval(p);
    };
    double s = target;
    double value = apply(x)[axis_];
    for (int iter = 0; iter < 60; ++iter) {
      x[axis_] = s;
      const double step = (target - value) / rho_->eval(x);
      const double next = s + step;
      if (!(next >= lo && next <= hi)) break;
      value += numkit::integrate(along, s, next, tol_);
      s = next;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(s))) {
        x[axis_] = s;
        return x;
      }
    }
    x = y;
  }
  auto f = [&](double t) {
    x[axis_] = t;
    return numkit::ValueSlope{apply(x)[axis_], rho_->eval(x)};
  };
  x[axis_] = numkit::solve_monotone(f, target, lo, hi, 1e-15, target);
  return x;
}

KnotheMap::KnotheMap(ScalarFnPtr h, CubeDomain dom, double tol) : h_(std::move(h)), dom_(dom), tol_(tol) {
  auto m1 = [this](double x) {
    Point p{x, 0.0, 0.0};
    if (dom_.dim == 1) return h_->eval(p);
    return numkit::integrate(
        [&](double t) {
          Point q = p;
          q[1] = t;
          return marginal(2, q);
        },
        0.0, 1.0, tol_);
  };
  const double br[] = {0.0};
  m1_ = numkit::ChebTable(m1, dom_.lo(0), dom_.hi(0), tol_, br);
  zero_ = m1_.cumulative(0.0);
}

Point KnotheMap::solve_point(const Point& y) const {
  Point x = y;
  for (std::size_t i = 0; i < dom_.dim; ++i) {
    const double slack = 0.05 * (dom_.hi(i) - dom_.lo(i));
    x[i] = solve_coordinate([&](const Pt<D1>& p) { return component(i, p); }, x, i, y[i],
                            dom_.lo(i) - slack, dom_.hi(i) + slack);
  }
  return x;
}

std::shared_ptr<const KnotheMap> knothe_factor(ScalarFnPtr h, CubeDomain dom) {
  if (dom.dim < 1 || dom.dim > 3) throw Error(ErrorKind::Unsupported, "dimension must be 1, 2 or 3");
  require_positive(*h, dom, "density");
  return std::make_shared<KnotheMap>(std::move(h), dom, 1e-12);
}

Point invert_triangular(const KnotheMap& map, const Point& y) { return map.inverse(y); }

SpaceMapPtr knothe_transport(ScalarFnPtr h, ScalarFnPtr g, CubeDomain dom) {
  auto v = knothe_factor(std::move(h), dom);
  auto w = knothe_factor(std::move(g), dom);
  return numkit::compose({std::make_shared<InverseMap<KnotheMap>>(w), v});
}

}  // namespace sympext::cubeflow
