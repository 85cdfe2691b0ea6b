#pragma once

#include "sympext/cubeflow/normalize.hpp"
#include "sympext/cubeflow/transport.hpp"

namespace sympext::cubeflow {

struct SquareExtension {
  /// psi = phi1 o v o u, area preserving on [0,1]^2 and equal to phi1 on its boundary.
  SpaceMapPtr psi;
  SpaceMapPtr phi1;
  std::shared_ptr<const CubeNormalizer> v;
  std::shared_ptr<const MoseMap> u;
  /// det(D(phi1 o v)), equal to 1 on the boundary of the square.
  ScalarFnPtr corrected;
};

/// phi1 must map the boundary of [0,1]^2 to itself (NotBoundaryPreserving),
/// keep orientation (OrientationReversed) and have det 1 at the corners
/// (CornerDerivativeMismatch).
SquareExtension square_extension(SpaceMapPtr phi1);

}  // namespace sympext::cubeflow
