#include "sympext/cubeflow/square.hpp"

#include <cmath>
#include <sstream>

#include "sympext/error.hpp"

namespace sympext::cubeflow {

namespace {

double distance_to_square_boundary(const Point& p) {
  const bool inside = p[0] >= 0.0 && p[0] <= 1.0 && p[1] >= 0.0 && p[1] <= 1.0;
  if (inside) return std::min({p[0], 1.0 - p[0], p[1], 1.0 - p[1]});
  const double dx = std::max({0.0, -p[0], p[0] - 1.0});
  const double dy = std::max({0.0, -p[1], p[1] - 1.0});
  return std::hypot(dx, dy);
}

void check_ambient(const SpaceMap& phi) {
  if (phi.dim() != 2) throw Error(ErrorKind::Unsupported, "square extension needs a planar map");
  constexpr int kPerEdge = 256;
  for (int s = 0; s <= kPerEdge; ++s) {
    const double t = static_cast<double>(s) / kPerEdge;
    for (Point p : {Point{t, 0, 0}, Point{t, 1, 0}, Point{0, t, 0}, Point{1, t, 0}}) {
      const Point q = phi(p);
      if (distance_to_square_boundary(q) > 1e-8) {
        std::ostringstream os;
        os << "(" << p[0] << ", " << p[1] << ") maps to (" << q[0] << ", " << q[1] << ")";
        throw Error(ErrorKind::NotBoundaryPreserving, os.str());
      }
    }
  }
  constexpr int kGrid = 33;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const Point p{i / (kGrid - 1.0), j / (kGrid - 1.0), 0};
      if (!(phi.det(p) > 0.0)) {
        std::ostringstream os;
        os << "det = " << phi.det(p) << " at (" << p[0] << ", " << p[1] << ")";
        throw Error(ErrorKind::OrientationReversed, os.str());
      }
    }
  for (Point c : {Point{0, 0, 0}, Point{1, 0, 0}, Point{0, 1, 0}, Point{1, 1, 0}}) {
    const double d = phi.det(c);
    if (std::abs(d - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "det = " << d << " at corner (" << c[0] << ", " << c[1] << ")";
      throw Error(ErrorKind::CornerDerivativeMismatch, os.str());
    }
  }
}

}  // namespace

SquareExtension square_extension(SpaceMapPtr phi1) {
  check_ambient(*phi1);
  SquareExtension out;
  out.phi1 = phi1;
  auto f = numkit::pullback_density(phi1);
  out.v = separation_normalize(f, 2);
  out.corrected = std::make_shared<NormalizedDensity>(out.v, f);
  // u pushes the uniform density to the corrected one: det Du * corrected o u = 1.
  out.u = mose_transport(numkit::make_scalar_fn(2, [](const auto& x) { return 0.0 * x[0] + 1.0; }),
                         out.corrected, 2);
  out.psi = numkit::compose({phi1, out.v, out.u});
  return out;
}

}  // namespace sympext::cubeflow
