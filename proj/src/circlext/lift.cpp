#include "sympext/circlext/lift.hpp"

#include <cmath>
#include <sstream>

#include "sympext/fndsl/field.hpp"
#include "sympext/numkit/quadrature.hpp"

namespace sympext::circlext {

namespace {

class ExprLift final : public LiftFnBase<ExprLift> {
 public:
  explicit ExprLift(numkit::ScalarFnPtr f) : f_(std::move(f)) {}
  template <class T>
  T apply(const T& x) const {
    return f_->eval(numkit::Pt<T>{x, T(0.0), T(0.0)});
  }

 private:
  numkit::ScalarFnPtr f_;
};

class ShiftedLift final : public LiftFnBase<ShiftedLift> {
 public:
  ShiftedLift(LiftFnPtr base, double shift) : base_(std::move(base)), shift_(shift) {}
  template <class T>
  T apply(const T& x) const { return base_->eval(x) - shift_; }

 private:
  LiftFnPtr base_;
  double shift_;
};

class ComposedLift final : public LiftFnBase<ComposedLift> {
 public:
  ComposedLift(LiftFnPtr outer, LiftFnPtr inner) : outer_(std::move(outer)), inner_(std::move(inner)) {}
  template <class T>
  T apply(const T& x) const { return outer_->eval(inner_->eval(x)); }

 private:
  LiftFnPtr outer_, inner_;
};

}  // namespace

CircleLift::CircleLift(LiftFnPtr fn, double rotation_offset) : fn_(std::move(fn)), offset_(rotation_offset) {}

double CircleLift::sup_a(int samples) const {
  double m = 0.0;
  for (int i = 0; i < samples; ++i) m = std::max(m, std::abs(a(static_cast<double>(i) / samples)));
  return m;
}

double CircleLift::sup_displacement(int samples) const {
  double m = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = static_cast<double>(i) / samples;
    m = std::max(m, std::abs(F(x) - x));
  }
  return m;
}

bool CircleLift::is_identity() const {
  for (int i = 0; i < 64; ++i) {
    const double x = i / 64.0 + 0.003;
    if (F(x) != x) return false;
  }
  return offset_ == 0.0;
}

CircleLift make_lift(LiftFnPtr fn) {
  CircleLift lift(std::move(fn), 0.0);
  for (int i = 0; i < 100; ++i) {
    const double x = -1.0 + 3.0 * i / 99.0;
    const double gap = lift.F(x + 1.0) - lift.F(x) - 1.0;
    if (!(std::abs(gap) <= 1e-10)) {
      std::ostringstream os;
      os.precision(17);
      os << "F(x+1) - F(x) - 1 = " << gap << " at x = " << x;
      throw Error(ErrorKind::NotALift, os.str());
    }
  }
  for (int i = 0; i < 1024; ++i) {
    const double x = i / 1024.0;
    const double slope = lift.a(x) + 1.0;
    if (!(slope > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "F'(" << x << ") = " << slope;
      throw Error(ErrorKind::NotIncreasing, os.str());
    }
  }
  for (double u : {0.0, 0.37, -0.81}) {
    const double mean = numkit::integrate([&](double x) { return lift.a(x); }, u, u + 1.0, 1e-12);
    if (!(std::abs(mean) <= 1e-10))
      throw Error(ErrorKind::NotALift, "integral of F' - 1 over a period is " + std::to_string(mean));
  }
  return lift;
}

CircleLift make_lift(const fndsl::Expr& expr) {
  if (expr.arity() != 1) throw Error(ErrorKind::ArityExceeded, "a circle lift takes one variable");
  return make_lift(std::make_shared<ExprLift>(fndsl::to_field(expr)));
}

CircleLift rotate_normalize(const CircleLift& lift) {
  const double f0 = lift.F(0.0);
  if (f0 == 0.0) return lift;
  return CircleLift(std::make_shared<ShiftedLift>(lift.fn(), f0), lift.rotation_offset() + f0);
}

CircleLift compose_lifts(const CircleLift& outer, const CircleLift& inner) {
  if (inner.rotation_offset() != 0.0)
    throw Error(ErrorKind::Unsupported, "inner lift of a composition must carry no rotation offset");
  return CircleLift(std::make_shared<ComposedLift>(outer.fn(), inner.fn()), outer.rotation_offset());
}

}  // namespace sympext::circlext
