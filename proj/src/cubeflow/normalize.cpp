#include "sympext/cubeflow/normalize.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "sympext/error.hpp"

namespace sympext::cubeflow {

namespace {

constexpr double kPlateau = 0.02;
constexpr double kLobe = 0.5;

std::vector<double> face_levels(const CubeDomain& dom, std::size_t i) {
  if (dom.doubled && i == 0) return {-1.0, 0.0, 1.0};
  return {0.0, 1.0};
}

/// f = 1 wherever two coordinates sit on grid levels.
void require_unit_on_codim2(const ScalarFn& f, const CubeDomain& dom) {
  constexpr int kSamples = 17;
  for (std::size_t i = 0; i < dom.dim; ++i)
    for (std::size_t j = i + 1; j < dom.dim; ++j)
      for (double ei : face_levels(dom, i))
        for (double ej : face_levels(dom, j))
          for (int s = 0; s < (dom.dim == 3 ? kSamples : 1); ++s) {
            Point p{};
            for (std::size_t k = 0; k < dom.dim; ++k)
              p[k] = dom.lo(k) + (dom.hi(k) - dom.lo(k)) * s / (kSamples - 1.0);
            p[i] = ei;
            p[j] = ej;
            const double v = f(p);
            if (std::abs(v - 1.0) > 1e-8) {
              std::ostringstream os;
              os << "f = " << v << " at (" << p[0] << ", " << p[1] << ", " << p[2]
                 << "), expected 1 on codimension-two faces";
              throw Error(ErrorKind::CornerMismatch, os.str());
            }
          }
}

}  // namespace

CubeNormalizer::CubeNormalizer(ScalarFnPtr f, CubeDomain dom)
    : f_(std::move(f)), dom_(dom), blend_(bumps::balanced_blend(kPlateau, kLobe, 0.5)) {}

namespace {

std::shared_ptr<const CubeNormalizer> build(ScalarFnPtr f, CubeDomain dom) {
  if (dom.dim < 1 || dom.dim > 3) throw Error(ErrorKind::Unsupported, "dimension must be 1, 2 or 3");
  require_positive(*f, dom, "density");
  require_unit_on_codim2(*f, dom);
  auto v = std::make_shared<CubeNormalizer>(std::move(f), dom);

  // The outer continuation has slope 1 + (p - 1) w with w >= -depth.
  const double depth = bumps::balanced_blend_depth(kPlateau, kLobe);
  constexpr int k = 33;
  double worst = 1.0;
  for (std::size_t i = 0; i < dom.dim; ++i)
    for (int s = 0; s < k; ++s)
      for (int r = 0; r < (dom.dim == 3 ? k : 1); ++r)
        for (double e : face_levels(dom, i)) {
          Point p{};
          std::size_t other = 0;
          for (std::size_t j = 0; j < dom.dim; ++j) {
            if (j == i) continue;
            const int step = other++ == 0 ? s : r;
            p[j] = dom.lo(j) + (dom.hi(j) - dom.lo(j)) * step / (k - 1.0);
          }
          p[i] = e;
          worst = std::max(worst, v->density(i, p));
        }
  if (!(1.0 - (worst - 1.0) * depth > 0.05)) {
    std::ostringstream os;
    os << "face density " << worst << " too large for the outer blend";
    throw Error(ErrorKind::BlendInfeasible, os.str());
  }
  return v;
}

}  // namespace

std::shared_ptr<const CubeNormalizer> separation_normalize(ScalarFnPtr f, std::size_t n) {
  return build(std::move(f), unit_cube(n));
}

std::shared_ptr<const CubeNormalizer> grid_normalize(ScalarFnPtr f, std::size_t n) {
  return build(std::move(f), double_cube(n));
}

}  // namespace sympext::cubeflow
