#include "sympext/circlext/moser.hpp"

#include <algorithm>

#include "sympext/error.hpp"

namespace sympext::circlext {

MoserBlend::MoserBlend(CircleLift lift, bumps::BumpProfile w)
    : lift_(std::move(lift)), w_(std::move(w)), w0_(w_.cumulative(0.0)) {}

MoserBlend moser_blend(const CircleLift& lift, const bumps::BumpProfile& w) {
  // h_theta = 1 + w a stays positive when the most negative value of w
  // times sup |a| stays below one.
  const double sup_a = std::max(lift.sup_a(1024), 1e-6);
  double lowest = 0.0;
  const auto br = w.breakpoints();
  for (double x : br) lowest = std::min(lowest, w.eval(x));
  if (!(lowest * sup_a > -0.95))
    throw Error(ErrorKind::BlendInfeasible, "blend lobes too deep for sup|F' - 1| = " + std::to_string(sup_a));
  return MoserBlend(lift, w);
}

MoserBlend moser_blend(const CircleLift& lift) {
  const double sup_a = std::max(lift.sup_a(1024), 1e-6);
  const double cap = std::min(0.95, 0.9 / sup_a);
  try {
    return MoserBlend(lift, bumps::balanced_blend(0.05, 0.25, cap));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InfeasibleBalance)
      throw Error(ErrorKind::BlendInfeasible, std::string(e.what()) + " (sup|F' - 1| = " +
                                                  std::to_string(sup_a) + ")");
    throw;
  }
}

numkit::Box MoserField::domain() const {
  return numkit::Box{2, {-1.0, -1e6, 0.0}, {1.0, 1e6, 0.0}};
}

numkit::TimeFieldPtr moser_field(const MoserBlend& blend) { return std::make_shared<MoserField>(blend); }

MoserMap::MoserMap(MoserBlend blend, double tol)
    : field_(std::make_shared<MoserField>(std::move(blend))), tol_(tol) {}

CylinderExtension moser_extension(const CircleLift& lift, double tol) {
  auto map = std::make_shared<MoserMap>(moser_blend(lift), tol);
  CylinderExtension ext;
  ext.map = std::make_shared<CylinderSequence>(std::vector<CylinderMapPtr>{map});
  ext.rotation_offset = lift.rotation_offset();
  ext.method = "moser";
  return ext;
}

}  // namespace sympext::circlext
