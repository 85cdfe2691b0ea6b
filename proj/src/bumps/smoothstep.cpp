#include "sympext/bumps/smoothstep.hpp"

#include <array>

#include "sympext/numkit/chebtable.hpp"

namespace sympext::bumps::detail {

double smoothstep_integral_table(double u) {
  static const numkit::ChebTable table = [] {
    std::array<double, 4> breaks{0.05, 0.1, 0.2, 0.35};
    return numkit::ChebTable([](double x) { return smoothstep(x); }, 0.0, 0.5, 2e-15, breaks);
  }();
  // Use the antisymmetry about 1/2 so both halves share rounding behaviour.
  if (u > 0.5) return (u - 0.5) + table.cumulative(1.0 - u);
  return table.cumulative(u);
}

}  // namespace sympext::bumps::detail
