#include "sympext/darboux2/darboux.hpp"

#include <cmath>
#include <sstream>

#include "sympext/error.hpp"
#include "sympext/numkit/roots.hpp"

namespace sympext::darboux2 {

Box square_box(const Point& c, double w) {
  Box b;
  b.dim = 2;
  for (std::size_t i = 0; i < 2; ++i) {
    b.lo[i] = c[i] - w;
    b.hi[i] = c[i] + w;
  }
  return b;
}

ImplicitH::ImplicitH(ScalarFnPtr p, Point center, double halfwidth)
    : p_(std::move(p)), center_(center), halfwidth_(halfwidth) {
  constexpr int k = 21;
  Box b = square_box(center_, 2.0 * halfwidth_);
  b.lo[1] -= 2.0 * halfwidth_;
  b.hi[1] += 2.0 * halfwidth_;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const Point q{b.lo[0] + (b.hi[0] - b.lo[0]) * i / (k - 1), b.lo[1] + (b.hi[1] - b.lo[1]) * j / (k - 1), 0};
      const double px = numkit::partial_at(*p_, 0, q);
      if (!(px > 0.0)) {
        std::ostringstream os;
        os << "p_x = " << px << " at (" << q[0] << ", " << q[1] << ")";
        throw Error(ErrorKind::DerivativeSignViolation, os.str());
      }
    }
}

double ImplicitH::root(double x, double y) const {
  auto f = [&](double s) {
    const numkit::D1 v = p_->eval(Pt<numkit::D1>{numkit::D1(s, 1.0), numkit::D1(y), numkit::D1(0.0)});
    return numkit::ValueSlope{v.v, v.d};
  };
  double lo = center_[0] - 2.0 * halfwidth_, hi = center_[0] + 2.0 * halfwidth_;
  for (int expansions = 0;; ++expansions) {
    const double rlo = f(lo).first - x, rhi = f(hi).first - x;
    if (rlo <= 0.0 && rhi >= 0.0) break;
    if (expansions == 40) {
      std::ostringstream os;
      os << "no bracket for p(s, " << y << ") = " << x << " around s = " << center_[0];
      throw Error(ErrorKind::BracketExpansionFailed, os.str());
    }
    const double w = hi - lo;
    if (rlo > 0.0) lo -= w;
    if (rhi < 0.0) hi += w;
  }
  return numkit::solve_monotone(f, x, lo, hi, 1e-14, center_[0]);
}

DarbouxChart darboux_normalize(ScalarFnPtr p, const Point& center) {
  const double px = numkit::partial_at(*p, 0, center);
  if (!(px > 0.0)) {
    std::ostringstream os;
    os << "p_x(center) = " << px;
    throw Error(ErrorKind::DerivativeSignViolation, os.str());
  }
  DarbouxChart chart;
  chart.p = p;
  chart.center = center;
  chart.chart_center = Point{(*p)(center), center[1], 0.0};
  std::string last = "no attempt";
  double w = 0.5;
  for (int halvings = 0; halvings <= 8; ++halvings, w *= 0.5) {
    try {
      auto h = std::make_shared<ImplicitH>(p, center, w);
      // Trajectories keep x and may stretch y; allow four half widths.
      Box domain = square_box(chart.chart_center, w);
      domain.lo[1] -= 3.0 * w;
      domain.hi[1] += 3.0 * w;
      auto field = std::make_shared<DarbouxField>(h, center[1], domain);
      auto flow = std::make_shared<numkit::FlowMap>(field, 1e-11);
      auto g = numkit::make_space_map(2, [h](const auto& q) {
        auto out = q;
        out[0] = h->eval(q);
        return out;
      });
      auto f = numkit::compose({g, flow});

      double value_res = 0.0, det_res = 0.0;
      constexpr int k = 21;
      const Box b = square_box(chart.chart_center, w);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          const Point q{b.lo[0] + 2.0 * w * i / (k - 1), b.lo[1] + 2.0 * w * j / (k - 1), 0};
          const auto [fq, jac] = f->jet(q);
          value_res = std::max(value_res, std::abs((*p)(fq) - q[0]));
          det_res = std::max(det_res, std::abs(numkit::determinant(jac, 2) - 1.0));
        }
      if (value_res <= 1e-6 && det_res <= 1e-6) {
        chart.box_halfwidth = w;
        chart.halvings = halvings;
        chart.h = h;
        chart.f = f;
        chart.max_value_residual = value_res;
        chart.max_det_residual = det_res;
        return chart;
      }
      std::ostringstream os;
      os << "residuals " << value_res << ", " << det_res << " at half width " << w;
      last = os.str();
    } catch (const Error& e) {
      last = e.what();
    }
  }
  throw Error(ErrorKind::ShrinkExhausted, "no chart after 8 halvings; last: " + last);
}

Preconditioned gradient_precondition(ScalarFnPtr p, const Point& center) {
  const double gx = numkit::partial_at(*p, 0, center), gy = numkit::partial_at(*p, 1, center);
  const double norm = std::hypot(gx, gy);
  if (!(norm > 1e-8)) throw Error(ErrorKind::ZeroGradient, "gradient vanishes at the center");
  Preconditioned out;
  const double c = gx / norm, s = gy / norm;
  out.angle = std::atan2(s, c);
  out.rotation[0][0] = c;
  out.rotation[0][1] = -s;
  out.rotation[1][0] = s;
  out.rotation[1][1] = c;
  out.center = Point{c * center[0] + s * center[1], -s * center[0] + c * center[1], 0.0};
  out.p_rotated = numkit::make_scalar_fn(2, [p, c, s](const auto& q) {
    auto r = q;
    r[0] = c * q[0] - s * q[1];
    r[1] = s * q[0] + c * q[1];
    return p->eval(r);
  });
  return out;
}

}  // namespace sympext::darboux2
