#pragma once

#include <cstddef>
#include <memory>

#include "sympext/numkit/chebtable.hpp"
#include "sympext/numkit/implicit.hpp"
#include "sympext/numkit/maps.hpp"
#include "sympext/numkit/quadrature.hpp"

namespace sympext::cubeflow {

using numkit::Box;
using numkit::D1;
using numkit::D2;
using numkit::D3;
using numkit::Point;
using numkit::Pt;
using numkit::ScalarFn;
using numkit::ScalarFnPtr;
using numkit::SpaceMap;
using numkit::SpaceMapPtr;

/// [0,1]^n, or the double cube [-1,1] x [0,1]^(n-1).
struct CubeDomain {
  std::size_t dim = 2;
  bool doubled = false;

  double lo(std::size_t i) const { return doubled && i == 0 ? -1.0 : 0.0; }
  double hi(std::size_t) const { return 1.0; }
  Box box() const;
  bool contains(const Point& x) const { return box().contains(x); }
};

inline CubeDomain unit_cube(std::size_t n) { return {n, false}; }
inline CubeDomain double_cube(std::size_t n) { return {n, true}; }

/// Throws NonPositiveDensity unless f > 0 on a sampled grid of the domain.
void require_positive(const ScalarFn& f, const CubeDomain& dom, const char* what);

/// x * integral_0^1 f(s x) ds, i.e. the integral of f from 0 to x.
template <class T, class F>
T integral_from_zero(const F& f, const T& x, double tol) {
  return x * numkit::integrate([&](double s) { return f(s * x); }, 0.0, 1.0, tol);
}

/// Replaces coordinate `axis` by the integral from 0 of rho along that axis.
class CumulativeMap final : public numkit::SpaceMapBase<CumulativeMap> {
 public:
  CumulativeMap(ScalarFnPtr rho, std::size_t dim, std::size_t axis, double tol = 1e-12)
      : rho_(std::move(rho)), dim_(dim), axis_(axis), tol_(tol) {}
  std::size_t dim() const override { return dim_; }
  std::size_t axis() const { return axis_; }

  template <class T>
  Pt<T> apply(const Pt<T>& x) const {
    Pt<T> out = x;
    out[axis_] = integral_from_zero(
        [&](const T& t) {
          Pt<T> p = x;
          p[axis_] = t;
          return rho_->eval(p);
        },
        x[axis_], tol_);
    return out;
  }

  /// Identity except the axis row: rho on the diagonal, and the integral of
  /// the other partials of rho elsewhere.
  std::pair<Point, numkit::Matrix> jet(const Point& x) const override;

  /// Point mapped to y, searching the axis coordinate in [lo, hi]. The axis
  /// tangent follows from d(out_axis) = rho dx_axis + (other partials) dx.
  template <class T>
  Pt<T> inverse(const Pt<T>& y, double lo, double hi) const {
    if constexpr (std::is_same_v<T, double>) {
      return solve_point(y, lo, hi);
    } else {
      using U = decltype(y[0].v);
      Pt<U> yv{};
      for (std::size_t i = 0; i < numkit::kMaxDim; ++i) yv[i] = y[i].v;
      const Pt<U> x = inverse(yv, lo, hi);
      Pt<T> out{};
      for (std::size_t i = 0; i < numkit::kMaxDim; ++i) out[i] = T(x[i], i == axis_ ? U(0.0) : y[i].d);
      const T moved = apply(out)[axis_];
      out[axis_].d = (y[axis_].d - moved.d) / rho_->eval(x);
      return out;
    }
  }

 private:
  ScalarFnPtr rho_;
  std::size_t dim_, axis_;
  double tol_;

  Point solve_point(const Point& y, double lo, double hi) const;
  friend class MoseMap;
};

/// Triangular map with det = h: v_1 integrates the full marginal of h from 0,
/// and v_i for i > 1 integrates the conditional density of x_i given x_1..x_(i-1),
/// normalized to unit mass over [0, 1].
class KnotheMap final : public numkit::SpaceMapBase<KnotheMap> {
 public:
  KnotheMap(ScalarFnPtr h, CubeDomain dom, double tol = 1e-12);
  std::size_t dim() const override { return dom_.dim; }
  const CubeDomain& domain() const { return dom_; }
  /// Integral of h over the domain.
  double mass() const { return m1_.total(); }

  /// Marginal of h over x_(i+1)..x_n, as a function of x_1..x_i (1-based i).
  template <class T>
  T marginal(std::size_t i, const Pt<T>& x) const {
    if (i == dom_.dim) return h_->eval(x);
    if (i == 1) return m1_.value(x[0]);
    return numkit::integrate(
        [&](double t) {
          Pt<T> p = x;
          p[i] = T(t);
          return marginal(i + 1, p);
        },
        0.0, 1.0, tol_);
  }

  /// Component i (0-based); depends on x_0..x_i only.
  template <class T>
  T component(std::size_t i, const Pt<T>& x) const {
    if (i == 0) return m1_.cumulative(x[0]) - zero_;
    const T num = integral_from_zero(
        [&](const T& t) {
          Pt<T> p = x;
          p[i] = t;
          return marginal(i + 1, p);
        },
        x[i], tol_);
    return num / marginal(i, x);
  }

  template <class T>
  Pt<T> apply(const Pt<T>& x) const {
    Pt<T> out = x;
    for (std::size_t i = 0; i < dom_.dim; ++i) out[i] = component(i, x);
    return out;
  }

  /// Sequential per-coordinate inversion; throws NoBracket outside the image.
  template <class T>
  Pt<T> inverse(const Pt<T>& y) const {
    auto fwd = [this](const auto& p) { return apply(p); };
    auto solve = [this](const Point& q) { return solve_point(q); };
    return numkit::implicit_inverse(fwd, solve, y, dom_.dim);
  }

 private:
  ScalarFnPtr h_;
  CubeDomain dom_;
  double tol_;
  numkit::ChebTable m1_;
  double zero_ = 0.0;

  Point solve_point(const Point& y) const;
};

/// SpaceMap view of the inverse of a map exposing `inverse(y)`.
template <class M>
class InverseMap final : public numkit::SpaceMapBase<InverseMap<M>> {
 public:
  explicit InverseMap(std::shared_ptr<const M> map) : map_(std::move(map)) {}
  std::size_t dim() const override { return map_->dim(); }
  template <class T>
  Pt<T> apply(const Pt<T>& y) const { return map_->inverse(y); }

 private:
  std::shared_ptr<const M> map_;
};

/// Triangular factor with det = h. NonPositiveDensity if h <= 0 somewhere.
std::shared_ptr<const KnotheMap> knothe_factor(ScalarFnPtr h, CubeDomain dom);

/// Preimage of y under a triangular factor.
Point invert_triangular(const KnotheMap& map, const Point& y);

/// w^-1 o v with v, w the triangular factors of h and g. Pushes h forward to g
/// when the masses agree; fixes the boundary only when the marginals agree.
SpaceMapPtr knothe_transport(ScalarFnPtr h, ScalarFnPtr g, CubeDomain dom);

}  // namespace sympext::cubeflow
