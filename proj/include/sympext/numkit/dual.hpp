#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <type_traits>

namespace sympext::numkit {

/// Forward-mode dual number over T. Nest it (Dual<Dual<double>>) for higher order.
template <class T>
struct Dual {
  T v{};
  T d{};

  constexpr Dual() = default;
  constexpr Dual(const T& value, const T& deriv) : v(value), d(deriv) {}
  constexpr Dual(const T& value) : v(value), d(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(double value)                           // NOLINT(google-explicit-constructor)
    requires(!std::same_as<T, double>)
      : v(value), d(0.0) {}
  constexpr Dual(int value) : Dual(static_cast<double>(value)) {}  // NOLINT

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
  }
  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend Dual operator+(const Dual& a) { return a; }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) { return value_of(x.v); }

/// Largest absolute value over every component of a (possibly nested) dual.
inline double max_abs(double x) { return std::abs(x); }
template <class T>
double max_abs(const Dual<T>& x) { return std::max(max_abs(x.v), max_abs(x.d)); }

/// True when every derivative component vanishes at every nesting level.
inline bool is_constant(double) { return true; }
template <class T>
bool is_constant(const Dual<T>& x) { return max_abs(x.d) == 0.0 && is_constant(x.v); }

inline bool all_finite(double x) { return std::isfinite(x); }
template <class T>
bool all_finite(const Dual<T>& x) { return all_finite(x.v) && all_finite(x.d); }

// Comparisons look only at the real part, which keeps branchy generic code valid.
template <class T, class U>
  requires(is_dual_v<T> || is_dual_v<U>)
bool operator<(const T& a, const U& b) { return value_of(a) < value_of(b); }
template <class T, class U>
  requires(is_dual_v<T> || is_dual_v<U>)
bool operator>(const T& a, const U& b) { return value_of(a) > value_of(b); }
template <class T, class U>
  requires(is_dual_v<T> || is_dual_v<U>)
bool operator<=(const T& a, const U& b) { return value_of(a) <= value_of(b); }
template <class T, class U>
  requires(is_dual_v<T> || is_dual_v<U>)
bool operator>=(const T& a, const U& b) { return value_of(a) >= value_of(b); }

template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos, std::sin;
  return {sin(x.v), cos(x.v) * x.d};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos, std::sin;
  return {cos(x.v), -sin(x.v) * x.d};
}
template <class T>
Dual<T> tan(const Dual<T>& x) {
  using std::tan;
  T t = tan(x.v);
  return {t, (1.0 + t * t) * x.d};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.v);
  return {e, e * x.d};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return {log(x.v), x.d / x.v};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T r = sqrt(x.v);
  return {r, x.d / (2.0 * r)};
}
template <class T>
Dual<T> tanh(const Dual<T>& x) {
  using std::tanh;
  T t = tanh(x.v);
  return {t, (1.0 - t * t) * x.d};
}
template <class T>
Dual<T> atan(const Dual<T>& x) {
  using std::atan;
  return {atan(x.v), x.d / (1.0 + x.v * x.v)};
}
template <class T>
Dual<T> abs(const Dual<T>& x) {
  return value_of(x) < 0.0 ? -x : x;
}
template <class T>
Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
  using std::atan2;
  T r2 = x.v * x.v + y.v * y.v;
  return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / r2};
}
/// Power with constant exponent.
template <class T>
Dual<T> pow(const Dual<T>& x, double p) {
  using std::pow;
  if (p == 0.0) return Dual<T>(1.0);
  return {pow(x.v, p), p * pow(x.v, p - 1.0) * x.d};
}
/// Power with a general exponent, x^y = exp(y log x) away from integer exponents.
template <class T>
Dual<T> pow(const Dual<T>& x, const Dual<T>& y) {
  if (is_constant(y)) return pow(x, value_of(y));
  return exp(y * log(x));
}
template <class T>
Dual<T> pow(const Dual<T>& x, const T& y)
  requires(is_dual_v<T>)
{
  return pow(x, Dual<T>(y));
}
template <class T>
Dual<T> pow(double x, const Dual<T>& y) {
  return pow(Dual<T>(x), y);
}

}  // namespace sympext::numkit
