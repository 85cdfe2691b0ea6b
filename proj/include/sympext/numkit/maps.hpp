#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <type_traits>
#include <utility>

#include "sympext/error.hpp"
#include "sympext/numkit/types.hpp"

namespace sympext::numkit {

/// Real-valued function on R^n, n <= 3, evaluable at plain and dual points.
class ScalarFn {
 public:
  virtual ~ScalarFn() = default;
  virtual std::size_t arity() const = 0;
  virtual double eval(const Pt<double>& x) const = 0;
  virtual D1 eval(const Pt<D1>& x) const = 0;
  virtual D2 eval(const Pt<D2>& x) const = 0;
  virtual D3 eval(const Pt<D3>& x) const = 0;

  double operator()(const Point& x) const { return eval(x); }
  /// First partial derivative along coordinate i (0-based).
  double partial(std::size_t i, const Point& x) const { return eval(seed(x, i)).d; }
};

using ScalarFnPtr = std::shared_ptr<const ScalarFn>;

template <class T>
inline constexpr bool kHasDualLevel = !std::is_same_v<T, D3>;

/// Partial derivative at a dual point; one nesting level is consumed.
template <class T>
T partial_at(const ScalarFn& f, std::size_t i, const Pt<T>& x) {
  if constexpr (!kHasDualLevel<T>) {
    throw Error(ErrorKind::Unsupported, "derivative nesting depth exceeded");
  } else {
    Pt<Dual<T>> y{};
    for (std::size_t j = 0; j < kMaxDim; ++j) y[j] = Dual<T>(x[j], T(j == i ? 1.0 : 0.0));
    return f.eval(y).d;
  }
}

/// Implements the virtual overload set by forwarding to `Derived::apply<T>`.
template <class Derived>
class ScalarFnBase : public ScalarFn {
 public:
  double eval(const Pt<double>& x) const override { return self().template apply<double>(x); }
  D1 eval(const Pt<D1>& x) const override { return self().template apply<D1>(x); }
  D2 eval(const Pt<D2>& x) const override { return self().template apply<D2>(x); }
  D3 eval(const Pt<D3>& x) const override { return self().template apply<D3>(x); }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

/// Wraps a generic lambda `auto (const Pt<T>&) -> T`.
template <class L>
class LambdaScalarFn final : public ScalarFnBase<LambdaScalarFn<L>> {
 public:
  LambdaScalarFn(std::size_t arity, L fn) : arity_(arity), fn_(std::move(fn)) {}
  std::size_t arity() const override { return arity_; }
  template <class T>
  T apply(const Pt<T>& x) const { return fn_(x); }

 private:
  std::size_t arity_;
  L fn_;
};

template <class L>
ScalarFnPtr make_scalar_fn(std::size_t arity, L fn) {
  return std::make_shared<LambdaScalarFn<L>>(arity, std::move(fn));
}

/// Map R^n -> R^n, n <= 3, evaluable at plain and dual points.
class SpaceMap {
 public:
  virtual ~SpaceMap() = default;
  virtual std::size_t dim() const = 0;
  virtual Pt<double> eval(const Pt<double>& x) const = 0;
  virtual Pt<D1> eval(const Pt<D1>& x) const = 0;
  virtual Pt<D2> eval(const Pt<D2>& x) const = 0;
  virtual Pt<D3> eval(const Pt<D3>& x) const = 0;

  Point operator()(const Point& x) const { return eval(x); }
  /// Value and Jacobian, by forward-mode differentiation with one seed per
  /// column. Maps with cheaper structure override it.
  virtual std::pair<Point, Matrix> jet(const Point& x) const;
  Matrix jacobian(const Point& x) const { return jet(x).second; }
  double det(const Point& x) const { return determinant(jacobian(x), dim()); }
};

using SpaceMapPtr = std::shared_ptr<const SpaceMap>;

template <class Derived>
class SpaceMapBase : public SpaceMap {
 public:
  Pt<double> eval(const Pt<double>& x) const override { return self().template apply<double>(x); }
  Pt<D1> eval(const Pt<D1>& x) const override { return self().template apply<D1>(x); }
  Pt<D2> eval(const Pt<D2>& x) const override { return self().template apply<D2>(x); }
  Pt<D3> eval(const Pt<D3>& x) const override { return self().template apply<D3>(x); }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

template <class L>
class LambdaSpaceMap final : public SpaceMapBase<LambdaSpaceMap<L>> {
 public:
  LambdaSpaceMap(std::size_t dim, L fn) : dim_(dim), fn_(std::move(fn)) {}
  std::size_t dim() const override { return dim_; }
  template <class T>
  Pt<T> apply(const Pt<T>& x) const { return fn_(x); }

 private:
  std::size_t dim_;
  L fn_;
};

template <class L>
SpaceMapPtr make_space_map(std::size_t dim, L fn) {
  return std::make_shared<LambdaSpaceMap<L>>(dim, std::move(fn));
}

/// det Dm(x) at a dual point; one nesting level is consumed.
template <class T>
T det_at(const SpaceMap& m, const Pt<T>& x) {
  if constexpr (!kHasDualLevel<T>) {
    throw Error(ErrorKind::Unsupported, "derivative nesting depth exceeded");
  } else {
    const std::size_t n = m.dim();
    std::array<Pt<T>, kMaxDim> J{};
    for (std::size_t k = 0; k < n; ++k) {
      Pt<Dual<T>> y{};
      for (std::size_t j = 0; j < kMaxDim; ++j) y[j] = Dual<T>(x[j], T(j == k ? 1.0 : 0.0));
      const Pt<Dual<T>> col = m.eval(y);
      for (std::size_t i = 0; i < n; ++i) J[i][k] = col[i].d;
    }
    switch (n) {
      case 1: return J[0][0];
      case 2: return J[0][0] * J[1][1] - J[0][1] * J[1][0];
      default:
        return J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
               J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
               J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    }
  }
}

Matrix multiply(const Matrix& a, const Matrix& b, std::size_t dim);
/// Inverse by the adjugate; dim <= 3.
Matrix invert(const Matrix& m, std::size_t dim);

/// det(Dm) * f o m, the density pulled back by m (f = 1 when null).
ScalarFnPtr pullback_density(SpaceMapPtr m, ScalarFnPtr f = nullptr);

/// Identity on R^n.
SpaceMapPtr identity_map(std::size_t dim);

/// outer o inner.
class ComposedMap final : public SpaceMapBase<ComposedMap> {
 public:
  ComposedMap(SpaceMapPtr outer, SpaceMapPtr inner);
  std::size_t dim() const override { return inner_->dim(); }
  template <class T>
  Pt<T> apply(const Pt<T>& x) const { return outer_->eval(inner_->eval(x)); }
  /// Chain rule, so each factor may use its own Jacobian.
  std::pair<Point, Matrix> jet(const Point& x) const override;

 private:
  SpaceMapPtr outer_;
  SpaceMapPtr inner_;
};

/// Composes right to left: compose({f, g, h}) = f o g o h.
SpaceMapPtr compose(std::initializer_list<SpaceMapPtr> maps);

}  // namespace sympext::numkit
