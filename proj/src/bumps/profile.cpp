#include "sympext/bumps/profile.hpp"

#include <algorithm>
#include <sstream>

#include "sympext/error.hpp"
#include "sympext/numkit/quadrature.hpp"

namespace sympext::bumps {

BumpProfile::BumpProfile(std::vector<Term> terms, Interval plateau, double plateau_value)
    : terms_(std::move(terms)), plateau_value_(plateau_value) {
  support_ = {terms_.front().bump.left(), terms_.front().bump.right()};
  for (const auto& t : terms_) {
    support_.lo = std::min(support_.lo, t.bump.left());
    support_.hi = std::max(support_.hi, t.bump.right());
  }
  if (plateau.hi > plateau.lo) plateau_ = plateau;
  const auto br = breakpoints();
  integral_ = numkit::integrate([this](double x) { return eval(x); }, support_.lo, support_.hi,
                                1e-12, br);
}

std::vector<double> BumpProfile::breakpoints() const {
  std::vector<double> out;
  for (const auto& t : terms_) {
    const auto& b = t.bump;
    for (double x : {b.left(), b.center - b.halfwidth, b.center, b.center + b.halfwidth, b.right()})
      out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BumpProfile normalized_mollifier() {
  const double w = 0.25;
  const double delta = (1.0 - w) / 2.0;
  return BumpProfile({{1.0, PlateauBump{0.0, delta, w}}}, {-delta, delta}, 1.0);
}

BumpProfile cutoff(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::NonPositiveParameter, "cutoff radius must be positive");
  return BumpProfile({{1.0, PlateauBump{0.0, 0.5 * eps, 0.5 * eps}}}, {-0.5 * eps, 0.5 * eps}, 1.0);
}

double balanced_blend_depth(double p, double lobe) { return 2.0 * p / lobe; }

BumpProfile balanced_blend(double p, double lobe, double depth_cap) {
  if (!(p > 0.0) || !(lobe > 0.0))
    throw Error(ErrorKind::NonPositiveParameter, "blend widths must be positive");
  if (!(depth_cap > 0.0 && depth_cap < 1.0))
    throw Error(ErrorKind::NonPositiveParameter, "depth cap must lie in (0, 1)");
  // Central bump: plateau p, edge p, so each half carries 1.5 p.
  // Lobe: plateau L/4, edges L/4, so it carries 0.75 L.
  const double depth = balanced_blend_depth(p, lobe);
  if (depth > depth_cap) {
    std::ostringstream os;
    os << "lobe depth " << depth << " exceeds cap " << depth_cap << "; widen the lobes";
    throw Error(ErrorKind::InfeasibleBalance, os.str());
  }
  const double offset = 2.0 * p + 0.5 * lobe;
  const PlateauBump lobe_shape{0.0, 0.25 * lobe, 0.25 * lobe};
  std::vector<BumpProfile::Term> terms{
      {-depth, PlateauBump{-offset, lobe_shape.halfwidth, lobe_shape.edge}},
      {1.0, PlateauBump{0.0, p, p}},
      {-depth, PlateauBump{offset, lobe_shape.halfwidth, lobe_shape.edge}},
  };
  return BumpProfile(std::move(terms), {-p, p}, 1.0);
}

}  // namespace sympext::bumps
