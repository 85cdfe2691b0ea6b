#pragma once

#include "sympext/bumps/profile.hpp"
#include "sympext/cubeflow/partition.hpp"

namespace fixtures {

using sympext::cubeflow::Box;

inline Box interval(double lo, double hi) {
  Box b;
  b.dim = 1;
  b.lo[0] = lo;
  b.hi[0] = hi;
  return b;
}

/// U = (0,4), B = (1,3), three covers, tau = 1. g is the derivative of a
/// bump straddling x = 1, plus unit-mass bumps inside and outside B that
/// cancel its integral over B.
inline sympext::cubeflow::PartitionProblem three_cover_problem() {
  using sympext::bumps::PlateauBump;
  const PlateauBump b{1.7, 0.3, 1.0};
  const PlateauBump in{2.0, 0.2, 0.4}, out{3.5, 0.1, 0.3};
  const double jump = b.eval(1.0);
  sympext::cubeflow::PartitionProblem p;
  p.dim = 1;
  p.U = interval(0.0, 4.0);
  p.B = interval(1.0, 3.0);
  p.covers = {interval(0.0, 1.5), interval(0.5, 3.5), interval(2.5, 4.0)};
  p.tau = sympext::numkit::make_scalar_fn(1, [](const auto& x) { return 0.0 * x[0] + 1.0; });
  p.g = sympext::numkit::make_scalar_fn(1, [=](const auto& x) {
    const auto& t = x[0];
    auto part = [&](const PlateauBump& q) {
      return (t > q.left() && t < q.right()) ? q.eval(t) * (1.0 / q.area()) : 0.0 * t;
    };
    auto slope = (t > b.left() && t < b.right()) ? b.deriv(t) : 0.0 * t;
    return slope + jump * (part(in) - part(out));
  });
  return p;
}

}  // namespace fixtures
