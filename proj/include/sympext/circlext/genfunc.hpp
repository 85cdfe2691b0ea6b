#pragma once

#include <array>

#include "sympext/bumps/profile.hpp"
#include "sympext/circlext/cylinder.hpp"
#include "sympext/circlext/lift.hpp"
#include "sympext/numkit/quadrature.hpp"

namespace sympext::circlext {

using numkit::QVec;

/// Q(x, y) = y * integral chi(t) [G(x - t y) - G(-t y)] dt with G = F - id,
/// together with Q_x and Q_y. Only a and chi' enter the derivatives.
class GenQ {
 public:
  GenQ(CircleLift lift, bumps::BumpProfile chi, double tol);

  const CircleLift& lift() const { return lift_; }
  const bumps::BumpProfile& chi() const { return chi_; }
  double tol() const { return tol_; }

  template <class T>
  T G(const T& u) const { return lift_.F(u) - u; }

  /// Integrals over supp chi of the integrand bundle `fn(t)`.
  template <class Fn>
  auto integrate(const Fn& fn) const {
    return numkit::integrate(fn, chi_.support().lo, chi_.support().hi, tol_, breaks_);
  }

  /// (Q, Q_x, Q_y) at (x, y).
  template <class T>
  std::array<T, 3> eval(const T& x, const T& y) const {
    auto parts = integrate([&](double t) {
      const T dg = G(x - t * y) - G(T(-t * y));
      QVec<T, 3> q;
      q[0] = chi_.eval(t) * dg;
      q[1] = chi_.eval(t) * lift_.a(x - t * y);
      q[2] = -t * chi_.deriv(t) * dg;
      return q;
    });
    return {y * parts[0], y * parts[1], parts[2]};
  }

 private:
  CircleLift lift_;
  bumps::BumpProfile chi_;
  double tol_;
  std::vector<double> breaks_;
};

/// S(x, y) = x y + rho(y) Q(x, y) with rho the cutoff of radius eps.
class GeneratingFunction {
 public:
  GeneratingFunction(const CircleLift& normalized_lift, double eps, double tol = 1e-11);

  double eps() const { return eps_; }
  const CircleLift& lift() const { return q_.lift(); }
  const GenQ& q() const { return q_; }
  const bumps::BumpProfile& rho() const { return rho_; }
  /// Smallest S_xy seen on the sampled strip |y| <= eps.
  double min_sxy() const { return min_sxy_; }

  template <class T>
  T S(const T& x, const T& y) const {
    if (outside(y)) return x * y;
    return x * y + rho_.eval(y) * q_.eval(x, y)[0];
  }
  template <class T>
  T S_x(const T& x, const T& y) const {
    if (outside(y)) return y;
    return y + rho_.eval(y) * y * inner(x, y)[0];
  }
  template <class T>
  T S_y(const T& x, const T& y) const {
    if (outside(y)) return x;
    const auto q = q_.eval(x, y);
    return x + rho_.deriv(y) * q[0] + rho_.eval(y) * q[2];
  }
  /// (S_x, S_xx, S_xy) sharing one quadrature.
  template <class T>
  std::array<T, 3> first_row(const T& x, const T& y) const {
    if (outside(y)) return {y, T(0.0), T(1.0)};
    const auto in = inner(x, y);
    const T r = rho_.eval(y);
    return {y + r * y * in[0], r * in[2], 1.0 + rho_.deriv(y) * y * in[0] + r * in[1]};
  }

 private:
  GenQ q_;
  double eps_;
  bumps::BumpProfile rho_;
  double min_sxy_ = 1.0;

  template <class T>
  bool outside(const T& y) const { return y >= eps_ || y <= -eps_; }

  /// (integral chi a, -integral t chi' a, integral chi' a), all at x - t y.
  template <class T>
  std::array<T, 3> inner(const T& x, const T& y) const {
    auto v = q_.integrate([&](double t) {
      const T a = q_.lift().a(x - t * y);
      QVec<T, 3> q;
      q[0] = q_.chi().eval(t) * a;
      q[1] = -t * q_.chi().deriv(t) * a;
      q[2] = q_.chi().deriv(t) * a;
      return q;
    });
    return {v[0], v[1], v[2]};
  }
};

/// Throws NonMonotone when the sampled minimum of S_xy is at most 0.05.
GeneratingFunction build_generating_function(const CircleLift& normalized_lift, double eps);

/// Cylinder map (s, theta) -> (y, S_y(theta, y)) where S_x(theta, y) = s.
class GenMap final : public CylinderMap {
 public:
  explicit GenMap(GeneratingFunction gf, double newton_tol = 1e-14);
  bumps::Interval band() const override { return {-gf_.eps(), gf_.eps()}; }
  const GeneratingFunction& generating_function() const { return gf_; }

  Pt<double> eval(const Pt<double>& x) const override { return apply(x); }
  Pt<D1> eval(const Pt<D1>& x) const override { return apply(x); }
  Pt<D2> eval(const Pt<D2>& x) const override { return apply(x); }
  Pt<D3> eval(const Pt<D3>& x) const override { return apply(x); }

  /// y with S_x(x, y) = eta; derivatives by implicit differentiation.
  template <class T>
  T solve_y(const T& x, const T& eta) const {
    if constexpr (std::is_same_v<T, double>) {
      return solve_y_value(x, eta);
    } else {
      using U = decltype(x.v);
      const U y = solve_y(x.v, eta.v);
      const auto row = gf_.first_row(x.v, y);
      return T(y, (eta.d - row[1] * x.d) / row[2]);
    }
  }

  template <class T>
  Pt<T> apply(const Pt<T>& p) const {
    const T& eta = p[0];
    const T& x = p[1];
    if (eta >= gf_.eps() || eta <= -gf_.eps()) return p;
    const T y = solve_y(x, eta);
    return {y, gf_.S_y(x, y), T(0.0)};
  }

 private:
  GeneratingFunction gf_;
  double tol_;

  double solve_y_value(double x, double eta) const;
};

/// Single-piece generating-function extension of a lift (normalized internally).
CylinderExtension gen_extension(const CircleLift& lift, double eps = 0.5);

/// sup over a grid of |S - xy| and its first and second partials.
double c2_deviation(const GeneratingFunction& gf, int nx = 16, int ny = 17);

}  // namespace sympext::circlext
