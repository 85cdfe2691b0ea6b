#include "sympext/numkit/quadrature.hpp"

namespace sympext::numkit {

double integrate_1d(const std::function<double(double)>& f, double a, double b, double tol) {
  return integrate(f, a, b, tol);
}

}  // namespace sympext::numkit
