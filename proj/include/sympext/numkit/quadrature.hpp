#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sympext/error.hpp"
#include "sympext/numkit/dual.hpp"

namespace sympext::numkit {

/// Fixed-size bundle of integrands sharing one adaptive panel sequence.
template <class T, std::size_t K>
struct QVec {
  std::array<T, K> c{};

  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }

  friend QVec operator+(QVec a, const QVec& b) {
    for (std::size_t i = 0; i < K; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend QVec operator-(QVec a, const QVec& b) {
    for (std::size_t i = 0; i < K; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend QVec operator*(double s, QVec a) {
    for (std::size_t i = 0; i < K; ++i) a.c[i] = s * a.c[i];
    return a;
  }
};

template <class T, std::size_t K>
double max_abs(const QVec<T, K>& q) {
  double m = 0.0;
  for (const auto& x : q.c) m = std::max(m, max_abs(x));
  return m;
}

namespace detail {

inline constexpr std::array<double, 5> kGaussX = {
    0.1488743389816312108848260, 0.4333953941292471907992659, 0.6794095682990244062343274,
    0.8650633666889845107320967, 0.9739065285171717200779640};
inline constexpr std::array<double, 5> kGaussW = {
    0.2955242247147528701738930, 0.2692667193099963550912269, 0.2190863625159820439955349,
    0.1494513491505805931457763, 0.0666713443086881375935688};

template <class F>
auto gauss10(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  auto sum = kGaussW[0] * (f(c - h * kGaussX[0]) + f(c + h * kGaussX[0]));
  for (std::size_t i = 1; i < 5; ++i)
    sum = sum + kGaussW[i] * (f(c - h * kGaussX[i]) + f(c + h * kGaussX[i]));
  return h * sum;
}

}  // namespace detail

inline constexpr std::size_t kMaxPanels = std::size_t{1} << 20;

/// Adaptive composite 10-point Gauss-Legendre rule with panel bisection.
/// The error test covers every dual component, so derivatives converge too.
/// `breaks` are interior points where the integrand may lose smoothness.
template <class F>
auto integrate(const F& f, double a, double b, double tol, std::span<const double> breaks = {}) {
  using V = decltype(f(a));
  if (a == b) return 0.0 * f(a);
  if (a > b) return -1.0 * integrate(f, b, a, tol, breaks);

  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b && x > cuts.back()) cuts.push_back(x);
  cuts.push_back(b);

  struct Panel {
    double lo, hi;
    V est;
  };
  std::vector<Panel> initial;
  initial.reserve(cuts.size());
  V coarse = 0.0 * f(a);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    V e = detail::gauss10(f, cuts[i], cuts[i + 1]);
    coarse = coarse + e;
    initial.push_back({cuts[i], cuts[i + 1], e});
  }
  const double abs_tol = tol * (1.0 + max_abs(coarse));
  const double length = b - a;

  V total = 0.0 * coarse;
  std::size_t panels = initial.size();
  std::vector<Panel> stack;
  for (auto it = initial.rbegin(); it != initial.rend(); ++it) stack.push_back(*it);
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    V left = detail::gauss10(f, p.lo, mid);
    V right = detail::gauss10(f, mid, p.hi);
    V refined = left + right;
    const double local_tol = abs_tol * (p.hi - p.lo) / length;
    const bool tiny = (p.hi - p.lo) <= 1e-13 * length;
    if (max_abs(refined - p.est) <= local_tol || tiny) {
      total = total + refined;
      continue;
    }
    if (++panels > kMaxPanels)
      throw Error(ErrorKind::NonConvergence, "quadrature panel limit reached on [" +
                                                 std::to_string(a) + ", " + std::to_string(b) + "]");
    stack.push_back({mid, p.hi, right});
    stack.push_back({p.lo, mid, left});
  }
  return total;
}

/// Scalar convenience entry point.
double integrate_1d(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace sympext::numkit
