#include "sympext/cubeflow/transport.hpp"

#include <cmath>
#include <sstream>

#include "sympext/cubeflow/normalize.hpp"
#include "sympext/error.hpp"

namespace sympext::cubeflow {

namespace {

/// Integral of h(x_0.., t) over t in [0, 1], as a function of x_0.
numkit::ChebTable column_marginal(const ScalarFnPtr& h, const CubeDomain& dom, double tol) {
  auto m = [&](double x) {
    return numkit::integrate([&](double t) { return (*h)(Point{x, t, 0.0}); }, 0.0, 1.0, tol);
  };
  const double br[] = {0.0};
  return numkit::ChebTable(m, dom.lo(0), dom.hi(0), tol, br);
}

double box_integral(const ScalarFn& h, const numkit::Box& box, double tol) {
  std::function<double(Point, std::size_t)> rec = [&](Point p, std::size_t i) -> double {
    if (i == box.dim) return h(p);
    return numkit::integrate(
        [&](double t) {
          Point q = p;
          q[i] = t;
          return rec(q, i + 1);
        },
        box.lo[i], box.hi[i], tol);
  };
  return rec(Point{}, 0);
}

std::string where(const Point& p, std::size_t n) {
  std::ostringstream os;
  os << "(" << p[0];
  for (std::size_t i = 1; i < n; ++i) os << ", " << p[i];
  os << ")";
  return os.str();
}

void require_equal_on_boundary(const ScalarFn& h, const ScalarFn& g, const CubeDomain& dom) {
  constexpr int kPerFace = 256;
  const int k = dom.dim == 3 ? 16 : kPerFace;
  for (std::size_t i = 0; i < dom.dim; ++i)
    for (double e : {dom.lo(i), dom.hi(i)})
      for (int s = 0; s < (dom.dim >= 2 ? k : 1); ++s)
        for (int r = 0; r < (dom.dim == 3 ? k : 1); ++r) {
          Point p{};
          std::size_t other = 0;
          for (std::size_t j = 0; j < dom.dim; ++j) {
            if (j == i) continue;
            const double t = ((other++ == 0 ? s : r) + 0.5) / k;
            p[j] = dom.lo(j) + (dom.hi(j) - dom.lo(j)) * t;
          }
          p[i] = e;
          const double d = h(p) - g(p);
          if (std::abs(d) > 1e-8) {
            std::ostringstream os;
            os << "h - g = " << d << " at " << where(p, dom.dim);
            throw Error(ErrorKind::BoundaryMismatch, os.str());
          }
        }
}

std::shared_ptr<const MoseMap> build(ScalarFnPtr h, ScalarFnPtr g, CubeDomain dom,
                                     const TransportOptions& o) {
  if (dom.dim != 1 && dom.dim != 2)
    throw Error(ErrorKind::Unsupported, "boundary-fixing transport is implemented for n = 1, 2");
  require_positive(*h, dom, "h");
  require_positive(*g, dom, "g");
  if (o.check_boundary) require_equal_on_boundary(*h, *g, dom);
  const auto [hq, hu] = domain_masses(h, dom, o.tol);
  const auto [gq, gu] = domain_masses(g, dom, o.tol);
  if (std::abs(hq - gq) > 1e-8) {
    std::ostringstream os;
    os << "integrals differ: " << hq << " vs " << gq;
    throw Error(ErrorKind::MassMismatch, os.str());
  }
  if (dom.doubled && std::abs(hu - gu) > 1e-8) {
    std::ostringstream os;
    os << "integrals over [0,1]^n differ: " << hu << " vs " << gu;
    throw Error(ErrorKind::HalfMassMismatch, os.str());
  }
  return std::make_shared<MoseMap>(std::move(h), std::move(g), dom, o.tol);
}

}  // namespace

std::pair<double, double> domain_masses(const ScalarFnPtr& h, const CubeDomain& dom, double tol) {
  const double whole = box_integral(*h, dom.box(), tol);
  if (!dom.doubled) return {whole, whole};
  numkit::Box unit = dom.box();
  unit.lo[0] = 0.0;
  return {whole, box_integral(*h, unit, tol)};
}

BridgeDensity::BridgeDensity(ScalarFnPtr h, ScalarFnPtr g, CubeDomain dom, double tol)
    : h_(std::move(h)), g_(std::move(g)), mh_(column_marginal(h_, dom, tol)), mg_(column_marginal(g_, dom, tol)) {
  d0_ = mh_.value(0.0) - mg_.value(0.0);
}

MoseMap::MoseMap(ScalarFnPtr h, ScalarFnPtr g, CubeDomain dom, double tol) : dom_(dom) {
  if (dom_.dim == 1) {
    kx_ = std::make_shared<CumulativeMap>(h, 1, 0, tol);
    gx_ = std::make_shared<CumulativeMap>(g, 1, 0, tol);
    return;
  }
  bridge_ = std::make_shared<BridgeDensity>(h, g, dom_, tol);
  require_positive(*bridge_, dom_, "bridge density");
  hy_ = std::make_shared<CumulativeMap>(h, 2, 1, tol);
  ky_ = std::make_shared<CumulativeMap>(bridge_, 2, 1, tol);
  kx_ = std::make_shared<CumulativeMap>(bridge_, 2, 0, tol);
  gx_ = std::make_shared<CumulativeMap>(g, 2, 0, tol);
}

std::pair<Point, numkit::Matrix> MoseMap::jet(const Point& x) const {
  const std::size_t n = dom_.dim;
  if (!dom_.contains(x)) return SpaceMap::jet(x);
  constexpr double slack = 0.05;
  auto step = [n](const std::pair<Point, numkit::Matrix>& stage, const numkit::Matrix& acc) {
    return numkit::multiply(stage.second, acc, n);
  };
  auto back = [n](const std::pair<Point, numkit::Matrix>& stage, const numkit::Matrix& acc) {
    return numkit::multiply(numkit::invert(stage.second, n), acc, n);
  };
  if (n == 1) {
    const auto k = kx_->jet(x);
    const Point u = gx_->solve_point(k.first, dom_.lo(0) - slack, dom_.hi(0) + slack);
    return {u, back(gx_->jet(u), k.second)};
  }
  const auto h = hy_->jet(x);
  const Point p2 = ky_->solve_point(h.first, -slack, 1.0 + slack);
  numkit::Matrix j = back(ky_->jet(p2), h.second);
  const auto k = kx_->jet(p2);
  j = step(k, j);
  const Point u = gx_->solve_point(k.first, dom_.lo(0) - slack, dom_.hi(0) + slack);
  return {u, back(gx_->jet(u), j)};
}

std::shared_ptr<const MoseMap> mose_transport(ScalarFnPtr h, ScalarFnPtr g, std::size_t n,
                                              const TransportOptions& options) {
  return build(std::move(h), std::move(g), unit_cube(n), options);
}

std::shared_ptr<const MoseMap> mose2_transport(ScalarFnPtr h, ScalarFnPtr g, std::size_t n,
                                               const TransportOptions& options) {
  return build(std::move(h), std::move(g), double_cube(n), options);
}

DoubleSquareResult doublesquare_transport(ScalarFnPtr f, ScalarFnPtr g, std::size_t n,
                                          const TransportOptions& options) {
  const CubeDomain dom = double_cube(n);
  require_positive(*f, dom, "f");
  require_positive(*g, dom, "g");
  const auto [fq, fu] = domain_masses(f, dom, options.tol);
  const auto [gq, gu] = domain_masses(g, dom, options.tol);
  const double lambda = fq / gq;
  if (std::abs(lambda - fu / gu) > 1e-7) {
    std::ostringstream os;
    os << "mass ratios differ: " << lambda << " on Q vs " << fu / gu << " on [0,1]^n";
    throw Error(ErrorKind::RatioMismatch, os.str());
  }
  auto target = numkit::make_scalar_fn(n, [g, lambda](const auto& x) { return lambda * g->eval(x); });
  // u fixes the boundary only if det Du = 1 at the vertices, i.e. f = lambda g there.
  if (options.check_boundary) require_equal_on_boundary(*f, *target, dom);

  auto ratio = numkit::make_scalar_fn(n, [f, target](const auto& x) { return f->eval(x) / target->eval(x); });
  DoubleSquareResult out;
  out.lambda = lambda;
  auto v = grid_normalize(ratio, n);
  out.normalizer = v;
  auto pulled = std::make_shared<NormalizedDensity>(v, f);
  auto scaled = numkit::make_scalar_fn(n, [pulled, lambda](const auto& x) { return pulled->eval(x) / lambda; });
  // w pushes g to the corrected f, so that w^* v^* f = lambda g.
  out.transport = mose2_transport(g, scaled, n, options);
  out.map = numkit::compose({out.normalizer, out.transport});
  return out;
}

}  // namespace sympext::cubeflow
