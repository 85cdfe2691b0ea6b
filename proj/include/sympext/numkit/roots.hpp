#pragma once

#include <functional>
#include <limits>
#include <utility>

namespace sympext::numkit {

/// Value and first derivative of a 1-D function.
using ValueSlope = std::pair<double, double>;
using MonotoneFn = std::function<ValueSlope(double)>;

/// Solves f(x) = target for x in [lo, hi] where f is strictly monotone.
/// Newton iterations start at `guess` (midpoint if outside the bracket) and
/// fall back to bisection whenever a step leaves the bracket or the residual
/// does not shrink by at least 10%.
double solve_monotone(const MonotoneFn& f, double target, double lo, double hi, double tol,
                      double guess = std::numeric_limits<double>::quiet_NaN());

}  // namespace sympext::numkit
