#pragma once

#include <memory>

#include "sympext/numkit/implicit.hpp"
#include "sympext/numkit/maps.hpp"
#include "sympext/numkit/ode.hpp"
#include "sympext/numkit/quadrature.hpp"

namespace sympext::darboux2 {

using numkit::Box;
using numkit::Matrix;
using numkit::Point;
using numkit::Pt;
using numkit::ScalarFnPtr;
using numkit::SpaceMapPtr;

/// Box of half width w around c in the first two coordinates.
Box square_box(const Point& c, double w);

/// h(x, y) with p(h(x, y), y) = x, the root searched near center[0].
class ImplicitH final : public numkit::ScalarFnBase<ImplicitH> {
 public:
  /// Throws DerivativeSignViolation unless p_x > 0 on the box of half widths
  /// 2w in x and 4w in y around center (sampled on a 21 x 21 grid).
  ImplicitH(ScalarFnPtr p, Point center, double halfwidth);
  std::size_t arity() const override { return 2; }
  const numkit::ScalarFn& p() const { return *p_; }

  template <class T>
  T apply(const Pt<T>& q) const {
    auto forward = [this](const auto& s) {
      auto out = s;
      out[0] = p_->eval(s);
      return out;
    };
    auto solve = [this](const Point& y) {
      Point s = y;
      s[0] = root(y[0], y[1]);
      return s;
    };
    return numkit::implicit_inverse(forward, solve, q, 2)[0];
  }

  /// h_x = 1 / p_x(h, y).
  template <class T>
  T slope(const Pt<T>& q) const {
    Pt<T> at = q;
    at[0] = apply(q);
    return 1.0 / numkit::partial_at(*p_, 0, at);
  }

 private:
  ScalarFnPtr p_;
  Point center_;
  double halfwidth_;

  double root(double x, double y) const;
};

/// v_t = (0, -k_x / (1 - t + t h_x)) with k_x = integral from y0 to y of (h_x - 1).
class DarbouxField final : public numkit::TimeFieldBase<DarbouxField> {
 public:
  DarbouxField(std::shared_ptr<const ImplicitH> h, double y0, Box domain, double tol = 1e-12)
      : h_(std::move(h)), y0_(y0), domain_(domain), tol_(tol) {}
  std::size_t dim() const override { return 2; }
  Box domain() const override { return domain_; }

  template <class T>
  T k_x(const Pt<T>& q) const {
    const T span = q[1] - y0_;
    const T avg = numkit::integrate(
        [&](double s) {
          Pt<T> at = q;
          at[1] = y0_ + s * span;
          return h_->slope(at) - 1.0;
        },
        0.0, 1.0, tol_);
    return span * avg;
  }

  template <class T>
  Pt<T> apply(double t, const Pt<T>& q) const {
    Pt<T> v{};
    v[0] = T(0.0);
    v[1] = -k_x(q) / (1.0 - t + t * h_->slope(q));
    return v;
  }

 private:
  std::shared_ptr<const ImplicitH> h_;
  double y0_;
  Box domain_;
  double tol_;
};

struct DarbouxChart {
  ScalarFnPtr p;
  Point center{};
  /// Chart box: half width around (p(center), center_y).
  double box_halfwidth = 0.0;
  Point chart_center{};
  int halvings = 0;
  std::shared_ptr<const ImplicitH> h;
  /// f = g o rho_1 with g = (h(x, y), y); p o f = x and det Df = 1.
  SpaceMapPtr f;
  double max_value_residual = 0.0;
  double max_det_residual = 0.0;
};

/// Starts from half width 0.5 and halves on any failure, at most 8 times;
/// ShrinkExhausted after that. DerivativeSignViolation if p_x(center) <= 0.
DarbouxChart darboux_normalize(ScalarFnPtr p, const Point& center);

struct Preconditioned {
  /// Rotation taking e1 to grad p / |grad p|.
  Matrix rotation{};
  double angle = 0.0;
  /// p o M.
  ScalarFnPtr p_rotated;
  /// M^-1 center, where (p o M)_x = |grad p(center)|.
  Point center{};
};

/// ZeroGradient if |grad p(center)| <= 1e-8.
Preconditioned gradient_precondition(ScalarFnPtr p, const Point& center);

}  // namespace sympext::darboux2
