#pragma once

#include <optional>

#include "sympext/bumps/profile.hpp"

namespace sympext::bumps {

/// Reference bump inside the beta family: 1 on [-1/2, 1/2], edges 1/4.
const PlateauBump& beta_reference_bump();
/// C = integral of the reference bump over [0, 1], by quadrature (tol 1e-12).
double beta_reference_mass();

/// f(a, b) = 1 / (C (a + b) + 2).
template <class T>
T beta_f(const T& a, const T& b) {
  return 1.0 / (beta_reference_mass() * (a + b) + 2.0);
}

/// g(a, b) solving C f (a + b - 2) = g (1 - 2 C f).
template <class T>
T beta_g(const T& a, const T& b) {
  const double c = beta_reference_mass();
  const T f = beta_f(a, b);
  return c * f * (a + b - 2.0) / (1.0 - 2.0 * c * f);
}

/// Two-point profile: a for x <= 0, b for x >= 1, unit integral over [0, 1].
template <class T>
T beta2_eval(const T& a, const T& b, const T& x) {
  if (x <= 0.0) return a;
  if (x >= 1.0) return b;
  const PlateauBump& chi = beta_reference_bump();
  const T f = beta_f(a, b);
  // On the plateaus the formula reduces to a or b; return them exactly.
  if (x <= chi.halfwidth * f) return a;
  if (x >= 1.0 - chi.halfwidth * f) return b;
  const T g = beta_g(a, b);
  return (a - 1.0 + g) * chi.eval(x / f) + 1.0 - g + (b - 1.0 + g) * chi.eval((x - 1.0) / f);
}

/// Integral of beta2 from 0 to x (linear continuation outside [0, 1]).
template <class T>
T beta2_cumulative(const T& a, const T& b, const T& x) {
  if (x <= 0.0) return a * x;
  if (x >= 1.0) return 1.0 + b * (x - 1.0);
  const PlateauBump& chi = beta_reference_bump();
  const T f = beta_f(a, b);
  const T g = beta_g(a, b);
  const T left = chi.cumulative(x / f) - chi.cumulative(T(0.0) / f);
  const T right = chi.cumulative((x - 1.0) / f) - chi.cumulative(T(-1.0) / f);
  return (a - 1.0 + g) * f * left + (1.0 - g) * x + (b - 1.0 + g) * f * right;
}

/// Three-point profile on [-1, 1]: c near -1, a near 0, b near 1; unit
/// integral on [-1, 0] and on [0, 1].
template <class T>
T beta3_eval(const T& a, const T& b, const T& c, const T& x) {
  if (x >= 0.0) return beta2_eval(a, b, x);
  return beta2_eval(a, c, T(-x));
}

/// Integral of beta3 from 0 to x.
template <class T>
T beta3_cumulative(const T& a, const T& b, const T& c, const T& x) {
  if (x >= 0.0) return beta2_cumulative(a, b, x);
  return -beta2_cumulative(a, c, T(-x));
}

/// Value object for fixed parameters.
class BetaProfile {
 public:
  double a() const { return a_; }
  double b() const { return b_; }
  std::optional<double> c() const { return c_; }
  double f_ab() const { return beta_f(a_, b_); }
  double g_ab() const { return beta_g(a_, b_); }

  template <class T>
  T eval(const T& x) const {
    if (c_) return beta3_eval(T(a_), T(b_), T(*c_), x);
    return beta2_eval(T(a_), T(b_), x);
  }
  template <class T>
  T cumulative(const T& x) const {
    if (c_) return beta3_cumulative(T(a_), T(b_), T(*c_), x);
    return beta2_cumulative(T(a_), T(b_), x);
  }
  double operator()(double x) const { return eval(x); }

 private:
  BetaProfile(double a, double b, std::optional<double> c) : a_(a), b_(b), c_(c) {}
  double a_, b_;
  std::optional<double> c_;

  friend BetaProfile beta2(double, double);
  friend BetaProfile beta3(double, double, double);
};

/// Throws NonPositiveParameter unless a, b > 0.
BetaProfile beta2(double a, double b);
/// Throws NonPositiveParameter unless a, b, c > 0.
BetaProfile beta3(double a, double b, double c);

}  // namespace sympext::bumps
