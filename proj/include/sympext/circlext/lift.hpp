#pragma once

#include <memory>

#include "sympext/error.hpp"
#include "sympext/fndsl/expr.hpp"
#include "sympext/numkit/maps.hpp"

namespace sympext::circlext {

using numkit::D1;
using numkit::D2;
using numkit::D3;
using numkit::Dual;

/// Real function of one variable evaluable at plain and dual arguments.
class LiftFn {
 public:
  virtual ~LiftFn() = default;
  virtual double eval(double x) const = 0;
  virtual D1 eval(const D1& x) const = 0;
  virtual D2 eval(const D2& x) const = 0;
  virtual D3 eval(const D3& x) const = 0;
};

using LiftFnPtr = std::shared_ptr<const LiftFn>;

template <class Derived>
class LiftFnBase : public LiftFn {
 public:
  double eval(double x) const override { return self().template apply<double>(x); }
  D1 eval(const D1& x) const override { return self().template apply<D1>(x); }
  D2 eval(const D2& x) const override { return self().template apply<D2>(x); }
  D3 eval(const D3& x) const override { return self().template apply<D3>(x); }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

/// Lift F of an orientation-preserving circle diffeomorphism:
/// F(x + 1) = F(x) + 1 and F' > 0. The plane extension is post-composed with
/// a rigid rotation by rotation_offset turns.
class CircleLift {
 public:
  CircleLift(LiftFnPtr fn, double rotation_offset);

  double rotation_offset() const { return offset_; }
  const LiftFnPtr& fn() const { return fn_; }

  template <class T>
  T F(const T& x) const { return fn_->eval(x); }

  /// a = F' - 1 (consumes one dual level).
  template <class T>
  T a(const T& x) const {
    if constexpr (std::is_same_v<T, D3>) {
      throw Error(ErrorKind::Unsupported, "derivative nesting depth exceeded");
    } else {
      return fn_->eval(Dual<T>(x, T(1.0))).d - 1.0;
    }
  }

  /// max |a| over `samples` equispaced points of [0, 1).
  double sup_a(int samples = 256) const;
  /// max |F(x) - x| over the same kind of grid.
  double sup_displacement(int samples = 256) const;
  bool is_identity() const;

 private:
  LiftFnPtr fn_;
  double offset_;
};

/// Wraps an arity-1 field; validates periodicity and monotonicity by sampling.
/// Throws NotALift or NotIncreasing.
CircleLift make_lift(const fndsl::Expr& expr);
CircleLift make_lift(LiftFnPtr fn);

/// G(x) = F(x) - F(0) with rotation_offset increased by F(0).
CircleLift rotate_normalize(const CircleLift& lift);

/// Pointwise composition outer o inner. The inner lift must carry no offset.
CircleLift compose_lifts(const CircleLift& outer, const CircleLift& inner);

}  // namespace sympext::circlext
