#pragma once

#include <array>
#include <vector>

#include "sympext/cubeflow/knothe.hpp"

namespace sympext::cubeflow {

/// Splitting data on the line or the plane. U, B and the covers are open
/// boxes with B inside U; the covers must cover U and each must meet the
/// boundary of B.
struct PartitionProblem {
  std::size_t dim = 1;
  Box U, B;
  std::vector<Box> covers;
  ScalarFnPtr tau;
  ScalarFnPtr g;
};

struct PartitionReport {
  /// parent[k] for k >= 1; parent[0] = -1.
  std::vector<int> parent;
  /// Integrals of eta_k tau over U and over B (index 0 unused).
  std::vector<double> lambda_u, lambda_b;
  /// Integrals of g_j tau over U and over B.
  std::vector<std::array<double, 2>> piece_integrals;
  std::array<double, 2> input_integrals{};
  double sup_g = 0.0;
  /// max_j sup|g_j| / sup|g| on the sample grid.
  double measured_c = 0.0;
  double q = 0.0;
  /// 1000 m^2 (sup tau / min tau) q, the a priori bound on c.
  double bound = 0.0;
};

struct PartitionResult {
  std::vector<ScalarFnPtr> pieces;
  std::vector<ScalarFnPtr> gamma;
  /// eta_k (index 0 is null).
  std::vector<ScalarFnPtr> eta;
  PartitionReport report;
};

/// g = sum of g_j with g_j supported in cover j and both weighted integrals
/// (over U and over B) zero for every piece.
/// NotBalanced, BadCoverOrder, EmptyBumpRegion.
PartitionResult balanced_partition(const PartitionProblem& problem);

/// Integral of f over a box, splitting every axis at the given cuts.
double piecewise_box_integral(const ScalarFn& f, const Box& box, const std::array<std::vector<double>, 2>& cuts,
                              double tol);

}  // namespace sympext::cubeflow
