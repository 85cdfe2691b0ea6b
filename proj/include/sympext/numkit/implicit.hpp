#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "sympext/numkit/types.hpp"

namespace sympext::numkit {

/// Solves J z = b for a dim x dim system by elimination with partial pivoting.
template <class U>
Pt<U> solve_linear(std::array<Pt<U>, kMaxDim> J, Pt<U> b, std::size_t dim) {
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < dim; ++r)
      if (std::abs(value_of(J[r][c])) > std::abs(value_of(J[piv][c]))) piv = r;
    std::swap(J[c], J[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < dim; ++r) {
      const U m = J[r][c] / J[c][c];
      for (std::size_t k = c; k < dim; ++k) J[r][k] = J[r][k] - m * J[c][k];
      b[r] = b[r] - m * b[c];
    }
  }
  Pt<U> z{};
  for (std::size_t i = dim; i-- > 0;) {
    U s = b[i];
    for (std::size_t k = i + 1; k < dim; ++k) s = s - J[i][k] * z[k];
    z[i] = s / J[i][i];
  }
  return z;
}

/// Inverse of a map at a dual point. `solve` inverts at plain doubles and
/// `forward` is the map, generic in the scalar type. Tangents come from the
/// implicit function theorem, one nesting level at a time.
template <class T, class Forward, class Solve>
Pt<T> implicit_inverse(const Forward& forward, const Solve& solve, const Pt<T>& y, std::size_t dim) {
  if constexpr (std::is_same_v<T, double>) {
    return solve(y);
  } else {
    using U = decltype(y[0].v);
    Pt<U> yv{};
    for (std::size_t i = 0; i < kMaxDim; ++i) yv[i] = y[i].v;
    const Pt<U> x = implicit_inverse<U>(forward, solve, yv, dim);
    std::array<Pt<U>, kMaxDim> J{};
    for (std::size_t k = 0; k < dim; ++k) {
      Pt<T> xs{};
      for (std::size_t i = 0; i < kMaxDim; ++i) xs[i] = T(x[i], U(i == k ? 1.0 : 0.0));
      const Pt<T> col = forward(xs);
      for (std::size_t i = 0; i < dim; ++i) J[i][k] = col[i].d;
    }
    Pt<U> rhs{};
    for (std::size_t i = 0; i < dim; ++i) rhs[i] = y[i].d;
    const Pt<U> z = solve_linear(J, rhs, dim);
    Pt<T> out{};
    for (std::size_t i = 0; i < kMaxDim; ++i) out[i] = i < dim ? T(x[i], z[i]) : T(x[i]);
    return out;
  }
}

}  // namespace sympext::numkit
