#include "sympext/circlext/cylinder.hpp"

#include <algorithm>
#include <cmath>

#include "sympext/error.hpp"

namespace sympext::circlext {

CylinderSequence::CylinderSequence(std::vector<CylinderMapPtr> maps) : maps_(std::move(maps)) {
  band_ = {0.0, 0.0};
  for (const auto& m : maps_) {
    band_.lo = std::min(band_.lo, m->band().lo);
    band_.hi = std::max(band_.hi, m->band().hi);
  }
}

PlaneMap::PlaneMap(CylinderExtension ext)
    : ext_(std::move(ext)),
      cos_off_(std::cos(2.0 * numkit::kPi * ext_.rotation_offset)),
      sin_off_(std::sin(2.0 * numkit::kPi * ext_.rotation_offset)) {}

double PlaneMap::inner_radius() const { return std::sqrt(2.0 * ext_.map->band().lo + 1.0); }
double PlaneMap::outer_radius() const { return std::sqrt(2.0 * ext_.map->band().hi + 1.0); }

std::shared_ptr<const PlaneMap> cylinder_to_plane(const CylinderExtension& ext) {
  if (!(ext.map->band().lo > -0.5))
    throw Error(ErrorKind::BandTooDeep, "cylinder map acts at s = " + std::to_string(ext.map->band().lo) +
                                            ", which has no preimage in the plane");
  return std::make_shared<PlaneMap>(ext);
}

}  // namespace sympext::circlext
