#pragma once

#include <vector>

#include "sympext/circlext/cylinder.hpp"
#include "sympext/circlext/lift.hpp"

namespace sympext::circlext {

/// Splits F into F_m o ... o F_1 with F_k = G_{k/m} o G_{(k-1)/m}^{-1},
/// G_t = (1 - t) id + t F, choosing the smallest m for which every piece has
/// sup |F_k' - 1| <= max_a_norm (doubling search, then bisection).
std::vector<CircleLift> subdivide_lift(const CircleLift& lift, double max_a_norm = 0.25);

/// The pieces for a given m, without the search.
std::vector<CircleLift> split_lift(const CircleLift& lift, int m);

enum class Method { Gen, Moser };

struct ExtendOptions {
  Method method = Method::Gen;
  /// Cutoff radius of the generating function. Plane output needs eps < 1/2.
  double eps = 0.5;
  double max_a_norm = 0.25;
  /// Subdivide even when a single piece would do.
  bool force_subdivide = false;
  double flow_tol = 1e-12;
};

/// Cylinder extension by either method. Falls back to subdivision when the
/// single-piece construction reports NonMonotone or BlendInfeasible.
CylinderExtension extend_circle(const CircleLift& lift, const ExtendOptions& options);

}  // namespace sympext::circlext
