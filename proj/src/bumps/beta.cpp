#include "sympext/bumps/beta.hpp"

#include "sympext/error.hpp"
#include "sympext/numkit/quadrature.hpp"

namespace sympext::bumps {

const PlateauBump& beta_reference_bump() {
  static const PlateauBump chi{0.0, 0.5, 0.25};
  return chi;
}

double beta_reference_mass() {
  static const double mass = [] {
    const PlateauBump& chi = beta_reference_bump();
    const double br[] = {0.5, 0.75};
    return numkit::integrate([&](double x) { return chi.eval(x); }, 0.0, 1.0, 1e-12, br);
  }();
  return mass;
}

BetaProfile beta2(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw Error(ErrorKind::NonPositiveParameter, "beta parameters must be positive");
  return BetaProfile(a, b, std::nullopt);
}

BetaProfile beta3(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
    throw Error(ErrorKind::NonPositiveParameter, "beta parameters must be positive");
  return BetaProfile(a, b, c);
}

}  // namespace sympext::bumps
