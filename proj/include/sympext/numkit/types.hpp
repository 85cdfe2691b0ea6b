#pragma once

#include <array>
#include <cstddef>

#include "sympext/numkit/dual.hpp"

namespace sympext::numkit {

inline constexpr std::size_t kMaxDim = 3;
inline constexpr double kPi = 3.14159265358979323846;

/// Point of dimension at most 3; unused trailing slots stay zero.
template <class T>
using Pt = std::array<T, kMaxDim>;

using Point = Pt<double>;
using Matrix = std::array<std::array<double, kMaxDim>, kMaxDim>;

/// Axis-aligned box; only the first `dim` slots are meaningful.
struct Box {
  std::size_t dim = 0;
  Point lo{};
  Point hi{};

  bool contains(const Point& x) const {
    for (std::size_t i = 0; i < dim; ++i)
      if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
    return true;
  }
};

template <class T>
Point values_of(const Pt<T>& x) {
  Point out{};
  for (std::size_t i = 0; i < kMaxDim; ++i) out[i] = value_of(x[i]);
  return out;
}

template <class T>
Pt<T> lift_point(const Point& x) {
  Pt<T> out{};
  for (std::size_t i = 0; i < kMaxDim; ++i) out[i] = T(x[i]);
  return out;
}

/// Point in D1 whose tangent is the unit vector e_k.
inline Pt<D1> seed(const Point& x, std::size_t k) {
  Pt<D1> out{};
  for (std::size_t i = 0; i < kMaxDim; ++i) out[i] = D1(x[i], i == k ? 1.0 : 0.0);
  return out;
}

double determinant(const Matrix& m, std::size_t dim);

}  // namespace sympext::numkit
