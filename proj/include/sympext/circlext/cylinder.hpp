#pragma once

#include <memory>
#include <vector>

#include "sympext/bumps/profile.hpp"
#include "sympext/numkit/maps.hpp"

namespace sympext::circlext {

using numkit::Pt;

/// Area-preserving map of the cylinder R x (R/Z) with coordinates (s, theta),
/// written on the lift: theta is a real number and eval(s, theta + 1) =
/// eval(s, theta) + (0, 1). Outside the band it is exactly the identity.
class CylinderMap : public numkit::SpaceMap {
 public:
  std::size_t dim() const override { return 2; }
  /// The map equals the identity for s <= band().lo and s >= band().hi.
  virtual bumps::Interval band() const = 0;
};

using CylinderMapPtr = std::shared_ptr<const CylinderMap>;

/// Applies maps front to back, i.e. the result is maps.back() o ... o maps.front().
class CylinderSequence final : public numkit::SpaceMapBase<CylinderSequence> {
 public:
  explicit CylinderSequence(std::vector<CylinderMapPtr> maps);
  std::size_t dim() const override { return 2; }
  bumps::Interval band() const { return band_; }
  const std::vector<CylinderMapPtr>& maps() const { return maps_; }

  template <class T>
  Pt<T> apply(const Pt<T>& x) const {
    Pt<T> y = x;
    for (const auto& m : maps_) y = m->eval(y);
    return y;
  }

 private:
  std::vector<CylinderMapPtr> maps_;
  bumps::Interval band_;
};

/// Cylinder extension of a circle map, possibly assembled from several pieces,
/// together with the rigid rotation (in turns) applied after it.
struct CylinderExtension {
  std::shared_ptr<const CylinderSequence> map;
  double rotation_offset = 0.0;
  std::string method;
  std::size_t pieces = 1;
};

/// Conjugation by Phi(s, theta) = sqrt(2s + 1) (cos 2 pi theta, sin 2 pi theta),
/// which scales area by the constant 2 pi, followed by rotation by the offset.
class PlaneMap final : public numkit::SpaceMapBase<PlaneMap> {
 public:
  explicit PlaneMap(CylinderExtension ext);
  std::size_t dim() const override { return 2; }
  const CylinderExtension& extension() const { return ext_; }
  /// Radii outside [inner, outer] are only rotated.
  double inner_radius() const;
  double outer_radius() const;

  template <class T>
  Pt<T> apply(const Pt<T>& p) const {
    using std::atan2, std::cos, std::sin, std::sqrt;
    const T r2 = p[0] * p[0] + p[1] * p[1];
    const T s = 0.5 * (r2 - 1.0);
    const auto band = ext_.map->band();
    if (s <= band.lo || s >= band.hi) return rotate(p);
    const T theta = atan2(p[1], p[0]) * (0.5 / numkit::kPi);
    const Pt<T> out = ext_.map->eval(Pt<T>{s, theta, T(0.0)});
    const T r = sqrt(2.0 * out[0] + 1.0);
    const T ang = 2.0 * numkit::kPi * (out[1] + ext_.rotation_offset);
    return {r * cos(ang), r * sin(ang), T(0.0)};
  }

 private:
  CylinderExtension ext_;
  double cos_off_, sin_off_;

  template <class T>
  Pt<T> rotate(const Pt<T>& p) const {
    if (ext_.rotation_offset == 0.0) return p;
    return {cos_off_ * p[0] - sin_off_ * p[1], sin_off_ * p[0] + cos_off_ * p[1], p[2]};
  }
};

/// Throws BandTooDeep when the extension acts at or below s = -1/2.
std::shared_ptr<const PlaneMap> cylinder_to_plane(const CylinderExtension& ext);

}  // namespace sympext::circlext
