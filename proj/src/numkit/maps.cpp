#include "sympext/numkit/maps.hpp"

#include <initializer_list>


namespace sympext::numkit {

double determinant(const Matrix& m, std::size_t dim) {
  switch (dim) {
    case 1: return m[0][0];
    case 2: return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    case 3:
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    default: return 1.0;
  }
}

std::pair<Point, Matrix> SpaceMap::jet(const Point& x) const {
  Point v = x;
  Matrix j{};
  const std::size_t n = dim();
  for (std::size_t c = 0; c < n; ++c) {
    const Pt<D1> y = eval(seed(x, c));
    for (std::size_t r = 0; r < n; ++r) {
      j[r][c] = y[r].d;
      v[r] = y[r].v;
    }
  }
  return {v, j};
}

Matrix multiply(const Matrix& a, const Matrix& b, std::size_t dim) {
  Matrix out{};
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

Matrix invert(const Matrix& m, std::size_t dim) {
  Matrix out{};
  const double d = determinant(m, dim);
  switch (dim) {
    case 1:
      out[0][0] = 1.0 / d;
      break;
    case 2:
      out[0][0] = m[1][1] / d;
      out[0][1] = -m[0][1] / d;
      out[1][0] = -m[1][0] / d;
      out[1][1] = m[0][0] / d;
      break;
    default:
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
          out[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / d;
        }
  }
  return out;
}

SpaceMapPtr identity_map(std::size_t dim) {
  return make_space_map(dim, [](const auto& x) { return x; });
}

ComposedMap::ComposedMap(SpaceMapPtr outer, SpaceMapPtr inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {}

std::pair<Point, Matrix> ComposedMap::jet(const Point& x) const {
  const auto [mid, inner] = inner_->jet(x);
  const auto [out, outer] = outer_->jet(mid);
  return {out, multiply(outer, inner, dim())};
}

SpaceMapPtr compose(std::initializer_list<SpaceMapPtr> maps) {
  SpaceMapPtr acc;
  for (auto it = maps.end(); it != maps.begin();) {
    --it;
    acc = acc ? std::make_shared<ComposedMap>(*it, acc) : *it;
  }
  return acc;
}

namespace {

class PullbackDensity final : public ScalarFnBase<PullbackDensity> {
 public:
  PullbackDensity(SpaceMapPtr m, ScalarFnPtr f) : m_(std::move(m)), f_(std::move(f)) {}
  std::size_t arity() const override { return m_->dim(); }
  template <class T>
  T apply(const Pt<T>& x) const {
    const T d = det_at(*m_, x);
    return f_ ? d * f_->eval(m_->eval(x)) : d;
  }

 private:
  SpaceMapPtr m_;
  ScalarFnPtr f_;
};

}  // namespace

ScalarFnPtr pullback_density(SpaceMapPtr m, ScalarFnPtr f) {
  return std::make_shared<PullbackDensity>(std::move(m), std::move(f));
}

}  // namespace sympext::numkit
