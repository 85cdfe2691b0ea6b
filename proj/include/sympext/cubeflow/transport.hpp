#pragma once

#include <memory>

#include "sympext/cubeflow/knothe.hpp"

namespace sympext::cubeflow {

struct TransportOptions {
  /// Require h = g on the boundary (BoundaryMismatch otherwise). With the
  /// check off the map still transports h to g but may move the boundary.
  bool check_boundary = true;
  double tol = 1e-12;
};

/// g + chi(x)(h - g)(0, y) + (D(x) - chi(x) D(0)) psi(y) with D the difference
/// of the x-marginals of h and g. Its x-marginal is that of h, its row
/// integrals over [lo,0] and [0,1] are those of g, and it equals g on the
/// outer boundary and h on the line x = 0.
class BridgeDensity final : public numkit::ScalarFnBase<BridgeDensity> {
 public:
  BridgeDensity(ScalarFnPtr h, ScalarFnPtr g, CubeDomain dom, double tol);
  std::size_t arity() const override { return 2; }
  const numkit::ChebTable& marginal_h() const { return mh_; }
  const numkit::ChebTable& marginal_g() const { return mg_; }

  template <class T>
  T apply(const Pt<T>& p) const {
    const T& x = p[0];
    const T& y = p[1];
    const T chi = (1.0 - x * x) * (1.0 - 5.0 * x * x);
    const T psi = 6.0 * y * (1.0 - y);
    const Pt<T> axis{T(0.0), y, T(0.0)};
    const T d = mh_.value(x) - mg_.value(x);
    return g_->eval(p) + chi * (h_->eval(axis) - g_->eval(axis)) + (d - chi * d0_) * psi;
  }

 private:
  ScalarFnPtr h_, g_;
  numkit::ChebTable mh_, mg_;
  double d0_ = 0.0;
};

/// u with g(u(x)) det Du(x) = h(x) on the domain and u = Id outside it.
/// In 1-D u = G^-1 o H with H, G the cumulative integrals from 0. In 2-D
/// u = Gx^-1 o Kx o Ky^-1 o Hy, two conditional transports through the
/// bridge density k: first along y (h to k, columns keep their mass), then
/// along x (k to g, rows keep their mass). Every stage fixes the boundary
/// when h = g there.
class MoseMap final : public numkit::SpaceMapBase<MoseMap> {
 public:
  MoseMap(ScalarFnPtr h, ScalarFnPtr g, CubeDomain dom, double tol);
  std::size_t dim() const override { return dom_.dim; }
  const CubeDomain& domain() const { return dom_; }
  /// Null in 1-D.
  std::shared_ptr<const BridgeDensity> bridge() const { return bridge_; }

  template <class T>
  Pt<T> apply(const Pt<T>& x) const {
    if (!dom_.contains(numkit::values_of(x))) return x;
    const double slack = 0.05;
    if (dom_.dim == 1) return gx_->inverse(kx_->apply(x), dom_.lo(0) - slack, dom_.hi(0) + slack);
    Pt<T> p = hy_->apply(x);
    p = ky_->inverse(p, -slack, 1.0 + slack);
    p = kx_->apply(p);
    return gx_->inverse(p, dom_.lo(0) - slack, dom_.hi(0) + slack);
  }

  /// Chain rule through the stages, one double pass plus one seeded
  /// quadrature per stage.
  std::pair<Point, numkit::Matrix> jet(const Point& x) const override;

 private:
  CubeDomain dom_;
  std::shared_ptr<const BridgeDensity> bridge_;
  std::shared_ptr<const CumulativeMap> hy_, ky_, kx_, gx_;
};

/// Unit cube, n in {1, 2}. BoundaryMismatch, MassMismatch, NonPositiveDensity.
std::shared_ptr<const MoseMap> mose_transport(ScalarFnPtr h, ScalarFnPtr g, std::size_t n,
                                              const TransportOptions& options = {});

/// Double cube [-1,1] x [0,1]^(n-1); additionally HalfMassMismatch. The
/// interface {0} x [0,1]^(n-1) is fixed.
std::shared_ptr<const MoseMap> mose2_transport(ScalarFnPtr h, ScalarFnPtr g, std::size_t n,
                                               const TransportOptions& options = {});

struct DoubleSquareResult {
  SpaceMapPtr map;
  double lambda = 1.0;
  SpaceMapPtr normalizer;
  std::shared_ptr<const MoseMap> transport;
};

/// u with det(Du) f o u = lambda g on the double cube, lambda the common mass
/// ratio. u = v o w with v = grid_normalize(f / (lambda g)) and w the mose2
/// transport of g to lambda^-1 det(Dv) f o v. RatioMismatch if the two ratios
/// differ; BoundaryMismatch unless f = lambda g on the boundary, which a map
/// fixing the boundary needs (det Du = 1 at the vertices).
DoubleSquareResult doublesquare_transport(ScalarFnPtr f, ScalarFnPtr g, std::size_t n,
                                          const TransportOptions& options = {});

/// Integral of h over the domain and over [0,1]^n.
std::pair<double, double> domain_masses(const ScalarFnPtr& h, const CubeDomain& dom, double tol = 1e-12);

}  // namespace sympext::cubeflow
