#include "sympext/circlext/genfunc.hpp"

#include <cmath>
#include <sstream>

#include "sympext/error.hpp"
#include "sympext/numkit/roots.hpp"

namespace sympext::circlext {

GenQ::GenQ(CircleLift lift, bumps::BumpProfile chi, double tol)
    : lift_(std::move(lift)), chi_(std::move(chi)), tol_(tol), breaks_(chi_.breakpoints()) {}

GeneratingFunction::GeneratingFunction(const CircleLift& normalized_lift, double eps, double tol)
    : q_(normalized_lift, bumps::normalized_mollifier(), tol), eps_(eps), rho_(bumps::cutoff(eps)) {
  constexpr int nx = 64, ny = 41;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double x = static_cast<double>(i) / nx;
      const double y = -eps + 2.0 * eps * j / (ny - 1);
      min_sxy_ = std::min(min_sxy_, first_row(x, y)[2]);
    }
}

GeneratingFunction build_generating_function(const CircleLift& normalized_lift, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::NonPositiveParameter, "eps must be positive");
  if (std::abs(normalized_lift.F(0.0)) > 1e-12)
    throw Error(ErrorKind::Usage, "generating function needs a lift with F(0) = 0");
  GeneratingFunction gf(normalized_lift, eps);
  if (!(gf.min_sxy() > 0.05)) {
    std::ostringstream os;
    os << "min S_xy = " << gf.min_sxy() << " on the strip |y| <= " << eps;
    throw Error(ErrorKind::NonMonotone, os.str());
  }
  return gf;
}

GenMap::GenMap(GeneratingFunction gf, double newton_tol) : gf_(std::move(gf)), tol_(newton_tol) {}

double GenMap::solve_y_value(double x, double eta) const {
  const double eps = gf_.eps();
  auto f = [&](double y) {
    const auto row = gf_.first_row(x, y);
    return numkit::ValueSlope{row[0], row[2]};
  };
  return numkit::solve_monotone(f, eta, -eps, eps, tol_, eta);
}

CylinderExtension gen_extension(const CircleLift& lift, double eps) {
  const CircleLift normalized = rotate_normalize(lift);
  auto map = std::make_shared<GenMap>(build_generating_function(normalized, eps));
  CylinderExtension ext;
  ext.map = std::make_shared<CylinderSequence>(std::vector<CylinderMapPtr>{map});
  ext.rotation_offset = normalized.rotation_offset();
  ext.method = "gen";
  return ext;
}

double c2_deviation(const GeneratingFunction& gf, int nx, int ny) {
  using numkit::D2;
  double worst = 0.0;
  const double eps = gf.eps();
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double x = static_cast<double>(i) / nx;
      const double y = -eps + 2.0 * eps * j / (ny - 1);
      for (int a = 0; a < 2; ++a)
        for (int b = a; b < 2; ++b) {
          const D2 X(D1(x, a == 0 ? 1.0 : 0.0), D1(b == 0 ? 1.0 : 0.0, 0.0));
          const D2 Y(D1(y, a == 1 ? 1.0 : 0.0), D1(b == 1 ? 1.0 : 0.0, 0.0));
          const D2 dev = gf.S(X, Y) - X * Y;
          worst = std::max(worst, numkit::max_abs(dev));
        }
    }
  return worst;
}

}  // namespace sympext::circlext
