#pragma once

#include <cmath>

#include "sympext/numkit/dual.hpp"

namespace sympext::bumps {

using numkit::Dual;
using numkit::value_of;

/// e(u) = E(u) / (E(u) + E(1 - u)) with E(u) = exp(-1/u) for u > 0, else 0.
/// Infinitely flat at both ends; e(u) + e(1 - u) = 1.
template <class T>
T smoothstep(const T& u) {
  using std::exp;
  const double uv = value_of(u);
  if (uv <= 0.0) return T(0.0);
  if (uv >= 1.0) return T(1.0);
  const T z = 1.0 / u - 1.0 / (1.0 - u);
  const double zv = value_of(z);
  if (zv > 700.0) return T(0.0);
  if (zv < -700.0) return T(1.0);
  return 1.0 / (1.0 + exp(z));
}

/// de/du.
template <class T>
T smoothstep_deriv(const T& u) {
  const double uv = value_of(u);
  if (uv <= 0.0 || uv >= 1.0) return T(0.0);
  const T e = smoothstep(u);
  const T v = 1.0 - u;
  return e * (1.0 - e) * (1.0 / (u * u) + 1.0 / (v * v));
}

namespace detail {
/// Integral of e over [0, u] for u in [0, 1], tabulated once.
double smoothstep_integral_table(double u);
}  // namespace detail

/// Ie(u) = integral of e over [0, u]; Ie(1) = 1/2 and Ie grows linearly past 1.
inline double smoothstep_integral(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 0.5 + (u - 1.0);
  return detail::smoothstep_integral_table(u);
}

template <class T>
Dual<T> smoothstep_integral(const Dual<T>& u) {
  return {smoothstep_integral(u.v), smoothstep(u.v) * u.d};
}

}  // namespace sympext::bumps
