#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <sstream>
#include <utility>

#include "sympext/error.hpp"
#include "sympext/numkit/maps.hpp"
#include "sympext/numkit/types.hpp"

namespace sympext::numkit {

/// Time-dependent vector field v(t, x) on a declared box.
class TimeField {
 public:
  virtual ~TimeField() = default;
  virtual std::size_t dim() const = 0;
  /// Trajectories must stay inside this box.
  virtual Box domain() const = 0;
  virtual Pt<double> eval(double t, const Pt<double>& x) const = 0;
  virtual Pt<D1> eval(double t, const Pt<D1>& x) const = 0;
  virtual Pt<D2> eval(double t, const Pt<D2>& x) const = 0;
  virtual Pt<D3> eval(double t, const Pt<D3>& x) const = 0;
};

using TimeFieldPtr = std::shared_ptr<const TimeField>;

template <class Derived>
class TimeFieldBase : public TimeField {
 public:
  Pt<double> eval(double t, const Pt<double>& x) const override { return self().template apply<double>(t, x); }
  Pt<D1> eval(double t, const Pt<D1>& x) const override { return self().template apply<D1>(t, x); }
  Pt<D2> eval(double t, const Pt<D2>& x) const override { return self().template apply<D2>(t, x); }
  Pt<D3> eval(double t, const Pt<D3>& x) const override { return self().template apply<D3>(t, x); }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

template <class L>
class LambdaTimeField final : public TimeFieldBase<LambdaTimeField<L>> {
 public:
  LambdaTimeField(Box box, L fn) : box_(box), fn_(std::move(fn)) {}
  std::size_t dim() const override { return box_.dim; }
  Box domain() const override { return box_; }
  template <class T>
  Pt<T> apply(double t, const Pt<T>& x) const { return fn_(t, x); }

 private:
  Box box_;
  L fn_;
};

template <class L>
TimeFieldPtr make_time_field(Box box, L fn) {
  return std::make_shared<LambdaTimeField<L>>(box, std::move(fn));
}

struct FlowStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

inline constexpr std::size_t kMaxFlowSteps = 1'000'000;

/// Time-1 flow of `field` from x0 by the Dormand-Prince 5(4) pair.
/// Step control uses every dual component, so tangents are integrated
/// to the same tolerance as the trajectory.
template <class T>
Pt<T> flow_ode(const TimeField& field, const Pt<T>& x0, double tol, FlowStats* stats = nullptr,
               double t0 = 0.0, double t1 = 1.0) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const std::size_t n = field.dim();
  const Box box = field.domain();
  auto combine = [n](const Pt<T>& y, double h, std::initializer_list<std::pair<double, const Pt<T>*>> terms) {
    Pt<T> out = y;
    for (std::size_t i = 0; i < n; ++i) {
      T acc(0.0);
      for (const auto& [c, k] : terms) acc += c * (*k)[i];
      out[i] += h * acc;
    }
    return out;
  };
  auto check_box = [&](const Pt<T>& y, double t) {
    if (box.dim == 0) return;
    const Point v = values_of(y);
    if (!box.contains(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "trajectory left the domain box at t = " << t << ", x = (" << v[0] << ", " << v[1]
         << ", " << v[2] << ")";
      throw Error(ErrorKind::DomainEscape, os.str());
    }
  };

  check_box(x0, t0);
  Pt<T> y = x0;
  double t = t0;
  double h = std::min(0.05, t1 - t0);
  Pt<T> k1 = field.eval(t, y);
  std::size_t steps = 0;
  FlowStats local;
  while (t < t1) {
    if (++steps > kMaxFlowSteps) throw Error(ErrorKind::NonConvergence, "flow step budget exhausted");
    if (t + h > t1) h = t1 - t;
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw Error(ErrorKind::StepUnderflow, "flow step size underflow at t = " + std::to_string(t));
    const Pt<T> k2 = field.eval(t + c2 * h, combine(y, h, {{a21, &k1}}));
    const Pt<T> k3 = field.eval(t + c3 * h, combine(y, h, {{a31, &k1}, {a32, &k2}}));
    const Pt<T> k4 = field.eval(t + c4 * h, combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Pt<T> k5 =
        field.eval(t + c5 * h, combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Pt<T> y6 = combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    const Pt<T> k6 = field.eval(t + h, y6);
    const Pt<T> ynew = combine(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const Pt<T> k7 = field.eval(t + h, ynew);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      T e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = tol * (1.0 + std::max(max_abs(y[i]), max_abs(ynew[i])));
      err = std::max(err, max_abs(e) / scale);
    }
    if (!std::isfinite(err)) {
      h *= 0.25;
      ++local.rejected;
      continue;
    }
    if (err <= 1.0) {
      check_box(ynew, t + h);
      t = (h == t1 - t) ? t1 : t + h;
      y = ynew;
      k1 = k7;
      ++local.accepted;
    } else {
      ++local.rejected;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }
  if (stats) *stats = local;
  return y;
}

/// The time-1 flow of a field viewed as a map.
class FlowMap final : public SpaceMapBase<FlowMap> {
 public:
  FlowMap(TimeFieldPtr field, double tol) : field_(std::move(field)), tol_(tol) {}
  std::size_t dim() const override { return field_->dim(); }
  template <class T>
  Pt<T> apply(const Pt<T>& x) const { return flow_ode(*field_, x, tol_); }
  const TimeField& field() const { return *field_; }

 private:
  TimeFieldPtr field_;
  double tol_;
};

}  // namespace sympext::numkit
