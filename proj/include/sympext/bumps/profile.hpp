#pragma once

#include <optional>
#include <vector>

#include "sympext/bumps/smoothstep.hpp"

namespace sympext::bumps {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Symmetric bump: 1 on [c - p, c + p], smooth edges of width w, 0 beyond.
struct PlateauBump {
  double center = 0.0;
  double halfwidth = 0.0;
  double edge = 1.0;

  double left() const { return center - halfwidth - edge; }
  double right() const { return center + halfwidth + edge; }
  double area() const { return 2.0 * halfwidth + edge; }

  template <class T>
  T eval(const T& x) const {
    if (x < center) return smoothstep((x - left()) * (1.0 / edge));
    return smoothstep((right() - x) * (1.0 / edge));
  }
  template <class T>
  T deriv(const T& x) const {
    if (x < center) return smoothstep_deriv((x - left()) * (1.0 / edge)) * (1.0 / edge);
    return -smoothstep_deriv((right() - x) * (1.0 / edge)) * (1.0 / edge);
  }
  /// Integral from -infinity to x.
  template <class T>
  T cumulative(const T& x) const {
    if (x <= center) return edge * smoothstep_integral((x - left()) * (1.0 / edge));
    return area() - edge * smoothstep_integral((right() - x) * (1.0 / edge));
  }
};

/// Weighted sum of plateau bumps with exact support and plateau metadata.
class BumpProfile {
 public:
  struct Term {
    double weight;
    PlateauBump bump;
  };

  BumpProfile(std::vector<Term> terms, Interval plateau, double plateau_value);

  const std::vector<Term>& terms() const { return terms_; }
  Interval support() const { return support_; }
  /// Main plateau; the profile equals plateau_value() there.
  std::optional<Interval> plateau() const { return plateau_; }
  double plateau_value() const { return plateau_value_; }
  /// Integral over R, by quadrature at tol 1e-12.
  double integral() const { return integral_; }

  template <class T>
  T eval(const T& x) const {
    if (x <= support_.lo || x >= support_.hi) return T(0.0);
    T acc(0.0);
    for (const auto& t : terms_)
      if (x > t.bump.left() && x < t.bump.right()) acc += t.weight * t.bump.eval(x);
    return acc;
  }
  template <class T>
  T deriv(const T& x) const {
    if (x <= support_.lo || x >= support_.hi) return T(0.0);
    T acc(0.0);
    for (const auto& t : terms_)
      if (x > t.bump.left() && x < t.bump.right()) acc += t.weight * t.bump.deriv(x);
    return acc;
  }
  /// Integral from -infinity to x, in closed form through the smoothstep integral.
  template <class T>
  T cumulative(const T& x) const {
    T acc(0.0);
    for (const auto& t : terms_) {
      if (x <= t.bump.left()) continue;
      if (x >= t.bump.right())
        acc += t.weight * t.bump.area();
      else
        acc += t.weight * t.bump.cumulative(x);
    }
    return acc;
  }

  double operator()(double x) const { return eval(x); }

  /// Interior points where the profile changes regime; useful as quadrature breaks.
  std::vector<double> breakpoints() const;

 private:
  std::vector<Term> terms_;
  Interval support_;
  std::optional<Interval> plateau_;
  double plateau_value_;
  double integral_ = 0.0;
};

/// chi: value 1 on [-0.375, 0.375], edges of width 0.25, unit integral.
BumpProfile normalized_mollifier();

/// rho: 1 on [-eps/2, eps/2], 0 outside (-eps, eps), monotone edges.
BumpProfile cutoff(double eps);

/// w: 1 on [-p, p] with edges of width p, then one negative lobe of total
/// width L per side, scaled so both half-line integrals vanish.
/// Throws InfeasibleBalance when the lobe depth 2p/L exceeds depth_cap.
BumpProfile balanced_blend(double plateau_halfwidth, double lobe_width, double depth_cap);

/// Depth of the lobes balanced_blend would use.
double balanced_blend_depth(double plateau_halfwidth, double lobe_width);

}  // namespace sympext::bumps
