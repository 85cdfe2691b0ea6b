#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sympext/numkit/maps.hpp"

namespace sympext::cli {

using numkit::Box;
using numkit::Point;
using numkit::ScalarFnPtr;
using numkit::SpaceMapPtr;

/// Text file of map samples: a header "#sympext-map v1 dim=<n>", then one row
/// per sample holding the input point, the output point and det, each with
/// 17 significant digits.
struct MapSample {
  Point in{};
  Point out{};
  double det = 0.0;
};

struct MapSampleFile {
  std::size_t dim = 2;
  std::vector<MapSample> rows;
};

void write_samples(std::ostream& os, const MapSampleFile& file);
/// Throws Usage on a malformed header or row.
MapSampleFile read_samples(std::istream& is);

struct Check {
  std::string name;
  double error = 0.0;
  double tol = 0.0;
  bool pass = true;
};

/// What to verify. The determinant check compares det(Du) * target(u) with
/// source, both 1 when null (plain area preservation).
struct VerifySpec {
  Box region{};
  int grid = 16;
  /// Replaces the region grid when nonempty (e.g. a polar grid).
  std::vector<Point> points;
  double det_tol = 1e-6;
  double restriction_tol = 1e-7;
  ScalarFnPtr source;
  ScalarFnPtr target;
  /// Points where the map must agree with `reference`.
  std::vector<Point> boundary_points;
  SpaceMapPtr reference;
  /// Points where the map must equal `rigid` (identity when null) exactly.
  std::vector<Point> identity_points;
  SpaceMapPtr rigid;
  /// Extra uniformly random determinant samples in the region.
  int random_points = 0;
  std::uint64_t seed = 0;
};

struct VerifyReport {
  double max_det_error = 0.0;
  double boundary_restriction_error = 0.0;
  double identity_region_error = 0.0;
  Box region{};
  int grid = 0;
  double wall_seconds = 0.0;
  std::vector<Check> checks;
  /// Samples on the grid (row-major), for --out.
  MapSampleFile samples;

  bool pass() const;
  void add(std::string name, double error, double tol);
};

VerifyReport verify_map(const numkit::SpaceMap& map, const VerifySpec& spec);

/// Splits "a,b" at commas outside parentheses.
std::vector<std::string> split_components(const std::string& text);

/// Entry point of the command-line tool. Returns 0 on success, 2 on invalid
/// input and 3 on numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sympext::cli
