#pragma once

#include "sympext/bumps/profile.hpp"
#include "sympext/circlext/cylinder.hpp"
#include "sympext/circlext/lift.hpp"
#include "sympext/numkit/ode.hpp"

namespace sympext::circlext {

/// h(s, theta) = theta + w(s) (F(theta) - theta): equals F on the circle s = 0
/// and the identity outside the support of w.
class MoserBlend {
 public:
  MoserBlend(CircleLift lift, bumps::BumpProfile w);

  const CircleLift& lift() const { return lift_; }
  const bumps::BumpProfile& profile() const { return w_; }

  template <class T>
  T h(const T& s, const T& theta) const {
    return theta + w_.eval(s) * (lift_.F(theta) - theta);
  }
  /// dh/dtheta = 1 + w(s) a(theta).
  template <class T>
  T h_theta(const T& s, const T& theta) const {
    return 1.0 + w_.eval(s) * lift_.a(theta);
  }
  /// W(s) = integral of w from 0 to s; zero outside the support of w.
  template <class T>
  T W(const T& s) const {
    if (s <= w_.support().lo || s >= w_.support().hi) return T(0.0);
    return w_.cumulative(s) - w0_;
  }

 private:
  CircleLift lift_;
  bumps::BumpProfile w_;
  double w0_;
};

/// Default blend: plateau 0.05, lobes 0.25, depth cap min(0.95, 0.9 / sup|a|).
/// Throws BlendInfeasible when the lobe depth exceeds the cap.
MoserBlend moser_blend(const CircleLift& lift);
MoserBlend moser_blend(const CircleLift& lift, const bumps::BumpProfile& w);

/// v^s = -a(theta) W(s) / (1 - t + t h_theta), v^theta = 0.
class MoserField final : public numkit::TimeFieldBase<MoserField> {
 public:
  explicit MoserField(MoserBlend blend) : blend_(std::move(blend)) {}
  std::size_t dim() const override { return 2; }
  numkit::Box domain() const override;
  const MoserBlend& blend() const { return blend_; }

  template <class T>
  Pt<T> apply(double t, const Pt<T>& x) const {
    const T& s = x[0];
    const T& theta = x[1];
    const auto sup = blend_.profile().support();
    if (s <= sup.lo || s >= sup.hi) return {T(0.0), T(0.0), T(0.0)};
    const T a = blend_.lift().a(theta);
    const T denom = 1.0 + t * blend_.profile().eval(s) * a;
    return {-a * blend_.W(s) / denom, T(0.0), T(0.0)};
  }

 private:
  MoserBlend blend_;
};

numkit::TimeFieldPtr moser_field(const MoserBlend& blend);

/// g o rho_1 with g(s, theta) = (s, h(s, theta)) and rho_1 the time-1 flow.
class MoserMap final : public CylinderMap {
 public:
  MoserMap(MoserBlend blend, double tol);
  bumps::Interval band() const override { return field_->blend().profile().support(); }
  const MoserBlend& blend() const { return field_->blend(); }

  Pt<double> eval(const Pt<double>& x) const override { return apply(x); }
  Pt<D1> eval(const Pt<D1>& x) const override { return apply(x); }
  Pt<D2> eval(const Pt<D2>& x) const override { return apply(x); }
  Pt<D3> eval(const Pt<D3>& x) const override { return apply(x); }

  template <class T>
  Pt<T> apply(const Pt<T>& x) const {
    const auto b = band();
    if (x[0] <= b.lo || x[0] >= b.hi) return x;
    const Pt<T> y = numkit::flow_ode(*field_, x, tol_);
    return {y[0], blend().h(y[0], y[1]), T(0.0)};
  }

 private:
  std::shared_ptr<const MoserField> field_;
  double tol_;
};

/// Single-piece Moser extension; see extend_circle for the subdividing driver.
CylinderExtension moser_extension(const CircleLift& lift, double tol = 1e-12);

}  // namespace sympext::circlext
