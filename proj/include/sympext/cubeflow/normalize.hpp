#pragma once

#include "sympext/bumps/beta.hpp"
#include "sympext/bumps/profile.hpp"
#include "sympext/cubeflow/knothe.hpp"

namespace sympext::cubeflow {

/// v = v_1 o ... o v_n where v_i replaces x_i by u_i(x), the integral from 0
/// of a beta profile whose end values are the running density G_i on the two
/// (or three) faces x_i = const. G_1 = 1/f and G_(i+1) = G_i / du_i/dx_i, so
/// det(Dv) f o v = 1 on the faces while v fixes them.
///
/// Outside the cube each profile relaxes to slope 1 through a balanced blend
/// and the face values are tapered to 1, so v is exactly the identity beyond
/// a margin of the cube.
class CubeNormalizer final : public numkit::SpaceMapBase<CubeNormalizer> {
 public:
  static constexpr double kTaper = 0.25;

  CubeNormalizer(ScalarFnPtr f, CubeDomain dom);
  std::size_t dim() const override { return dom_.dim; }
  const CubeDomain& domain() const { return dom_; }
  /// v is the identity outside the cube enlarged by this much.
  double margin() const { return std::max(kTaper, blend_.support().hi); }

  /// Running density G_i (0-based i; G_0 = 1/f).
  template <class T>
  T density(std::size_t i, const Pt<T>& x) const {
    if (i == 0) return 1.0 / f_->eval(x);
    return density(i - 1, x) / slope(i - 1, x);
  }

  /// du_i/dx_i.
  template <class T>
  T slope(std::size_t i, const Pt<T>& x) const {
    const auto p = params(i, x);
    const T& t = x[i];
    const double lo = dom_.lo(i), hi = dom_.hi(i);
    if (t < lo) return 1.0 + (p.lo_end - 1.0) * blend_.eval(t - lo);
    if (t > hi) return 1.0 + (p.b - 1.0) * blend_.eval(t - hi);
    if (dom_.doubled && i == 0) return bumps::beta3_eval(p.a, p.b, p.lo_end, t);
    return bumps::beta2_eval(p.a, p.b, t);
  }

  /// u_i(x).
  template <class T>
  T coordinate(std::size_t i, const Pt<T>& x) const {
    const T& t = x[i];
    const double lo = dom_.lo(i), hi = dom_.hi(i), m = blend_.support().hi;
    if (t <= lo - m || t >= hi + m || outside_taper(i, x)) return t;
    const auto p = params(i, x);
    auto inside = [&](const T& s) {
      if (dom_.doubled && i == 0) return bumps::beta3_cumulative(p.a, p.b, p.lo_end, s);
      return bumps::beta2_cumulative(p.a, p.b, s);
    };
    const double c0 = blend_.cumulative(0.0);
    if (t < lo) return inside(T(lo)) + (t - lo) + (p.lo_end - 1.0) * (blend_.cumulative(t - lo) - c0);
    if (t > hi) return inside(T(hi)) + (t - hi) + (p.b - 1.0) * (blend_.cumulative(t - hi) - c0);
    return inside(t);
  }

  template <class T>
  Pt<T> apply(const Pt<T>& x) const {
    Pt<T> y = x;
    for (std::size_t i = dom_.dim; i-- > 0;) y[i] = coordinate(i, y);
    return y;
  }

  /// det Dv(x) as the product of the step slopes, without differentiating v.
  template <class T>
  T jacobian_det(const Pt<T>& x) const {
    T d(1.0);
    Pt<T> y = x;
    for (std::size_t i = dom_.dim; i-- > 0;) {
      d = d * slope(i, y);
      y[i] = coordinate(i, y);
    }
    return d;
  }

 private:
  ScalarFnPtr f_;
  CubeDomain dom_;
  bumps::BumpProfile blend_;

  template <class T>
  struct Params {
    T a, b, lo_end;
  };

  template <class T>
  T taper(std::size_t i, const Pt<T>& x) const {
    T w(1.0);
    for (std::size_t j = 0; j < dom_.dim; ++j) {
      if (j == i) continue;
      const T& t = x[j];
      if (t < dom_.lo(j)) w = w * bumps::smoothstep(1.0 + (t - dom_.lo(j)) * (1.0 / kTaper));
      else if (t > dom_.hi(j)) w = w * bumps::smoothstep(1.0 - (t - dom_.hi(j)) * (1.0 / kTaper));
    }
    return w;
  }

  template <class T>
  bool outside_taper(std::size_t i, const Pt<T>& x) const {
    for (std::size_t j = 0; j < dom_.dim; ++j)
      if (j != i && (x[j] <= dom_.lo(j) - kTaper || x[j] >= dom_.hi(j) + kTaper)) return true;
    return false;
  }

  /// Face values of G_i, tapered to 1 away from the cube.
  template <class T>
  Params<T> params(std::size_t i, const Pt<T>& x) const {
    const T w = taper(i, x);
    auto face = [&](double at) {
      Pt<T> q = x;
      q[i] = T(at);
      return 1.0 + (density(i, q) - 1.0) * w;
    };
    Params<T> p{face(0.0), face(1.0), T(1.0)};
    p.lo_end = dom_.doubled && i == 0 ? face(-1.0) : p.a;
    return p;
  }
};

/// det(Dv) f o v for a normalizer v.
class NormalizedDensity final : public numkit::ScalarFnBase<NormalizedDensity> {
 public:
  NormalizedDensity(std::shared_ptr<const CubeNormalizer> v, ScalarFnPtr f) : v_(std::move(v)), f_(std::move(f)) {}
  std::size_t arity() const override { return v_->dim(); }
  template <class T>
  T apply(const Pt<T>& x) const { return v_->jacobian_det(x) * f_->eval(v_->eval(x)); }

 private:
  std::shared_ptr<const CubeNormalizer> v_;
  ScalarFnPtr f_;
};

/// Unit cube. Throws CornerMismatch unless f = 1 on the codimension-two faces.
std::shared_ptr<const CubeNormalizer> separation_normalize(ScalarFnPtr f, std::size_t n);

/// Double cube [-1,1] x [0,1]^(n-1): also fixes the interface {0} x [0,1]^(n-1).
std::shared_ptr<const CubeNormalizer> grid_normalize(ScalarFnPtr f, std::size_t n);

}  // namespace sympext::cubeflow
