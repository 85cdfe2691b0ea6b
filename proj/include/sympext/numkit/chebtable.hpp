#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sympext/numkit/dual.hpp"

namespace sympext::numkit {

/// Piecewise Chebyshev interpolant of a smooth function on [a, b] with an
/// exact antiderivative. Panels are bisected until the trailing coefficients
/// fall below tol times the sampled magnitude.
class ChebTable {
 public:
  static constexpr std::size_t kDegree = 16;

  ChebTable() = default;
  ChebTable(const std::function<double(double)>& f, double a, double b, double tol,
            std::span<const double> breaks = {}, std::size_t max_panels = 4096);

  double lo() const { return edges_.front(); }
  double hi() const { return edges_.back(); }
  std::size_t panels() const { return edges_.size() - 1; }
  /// Integral over the whole interval.
  double total() const { return offsets_.back(); }

  /// Interpolant value. Arguments outside [a, b] use the end panels.
  template <class T>
  T value(const T& x) const {
    const std::size_t p = locate(value_of(x));
    return clenshaw(coef_[p], xi(p, x));
  }

  /// Integral from a to x of the interpolant.
  template <class T>
  T cumulative(const T& x) const {
    const std::size_t p = locate(value_of(x));
    const double hw = 0.5 * (edges_[p + 1] - edges_[p]);
    return offsets_[p] + hw * clenshaw(anti_[p], xi(p, x));
  }

 private:
  using Coeffs = std::array<double, kDegree + 2>;
  std::vector<double> edges_;
  std::vector<Coeffs> coef_;
  std::vector<Coeffs> anti_;
  std::vector<double> offsets_;

  std::size_t locate(double x) const {
    auto it = std::upper_bound(edges_.begin() + 1, edges_.end() - 1, x);
    return static_cast<std::size_t>(it - edges_.begin()) - 1;
  }
  template <class T>
  T xi(std::size_t p, const T& x) const {
    const double mid = 0.5 * (edges_[p] + edges_[p + 1]);
    const double hw = 0.5 * (edges_[p + 1] - edges_[p]);
    return (x - mid) * (1.0 / hw);
  }
  template <class T>
  static T clenshaw(const Coeffs& c, const T& t) {
    T b1(0.0), b2(0.0);
    const T two_t = 2.0 * t;
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
      T b0 = c[k] + two_t * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    return c[0] + t * b1 - b2;
  }
};

}  // namespace sympext::numkit
