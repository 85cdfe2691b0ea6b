#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "sympext/cli/cli.hpp"
#include "sympext/error.hpp"

namespace sympext::cli {

namespace {

constexpr const char* kHeader = "#sympext-map v1 dim=";

void put(std::ostream& os, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  os.write(buf, res.ptr - buf);
}

double take(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw Error(ErrorKind::Usage, "line " + std::to_string(line) + ": bad number '" + std::string(tok) + "'");
  return v;
}

double sup_diff(const Point& a, const Point& b, std::size_t dim) {
  double m = 0.0;
  for (std::size_t i = 0; i < dim; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<Point> region_grid(const Box& box, int grid) {
  const std::size_t n = box.dim;
  const int k = std::max(grid, 2);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(k);
  std::vector<Point> pts;
  pts.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Point p{};
    std::size_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      const auto j = static_cast<double>(rest % k);
      rest /= k;
      p[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * j / (k - 1);
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

void write_samples(std::ostream& os, const MapSampleFile& file) {
  os << kHeader << file.dim << '\n';
  for (const auto& row : file.rows) {
    for (std::size_t i = 0; i < file.dim; ++i) {
      put(os, row.in[i]);
      os << ' ';
    }
    for (std::size_t i = 0; i < file.dim; ++i) {
      put(os, row.out[i]);
      os << ' ';
    }
    put(os, row.det);
    os << '\n';
  }
}

MapSampleFile read_samples(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || !line.starts_with(kHeader))
    throw Error(ErrorKind::Usage, "missing '#sympext-map v1' header");
  MapSampleFile file;
  const std::string_view dim_text = std::string_view(line).substr(std::char_traits<char>::length(kHeader));
  const double dim = take(dim_text, 1);
  if (!(dim >= 1 && dim <= static_cast<double>(numkit::kMaxDim)) || dim != std::floor(dim))
    throw Error(ErrorKind::Usage, "unsupported dimension " + std::string(dim_text));
  file.dim = static_cast<std::size_t>(dim);

  for (std::size_t n = 2; std::getline(is, line); ++n) {
    std::istringstream ls(line);
    std::vector<double> vals;
    for (std::string tok; ls >> tok;) vals.push_back(take(tok, n));
    if (vals.empty()) continue;
    if (vals.size() != 2 * file.dim + 1)
      throw Error(ErrorKind::Usage, "line " + std::to_string(n) + ": expected " +
                                        std::to_string(2 * file.dim + 1) + " fields");
    MapSample row;
    for (std::size_t i = 0; i < file.dim; ++i) {
      row.in[i] = vals[i];
      row.out[i] = vals[file.dim + i];
    }
    row.det = vals.back();
    file.rows.push_back(row);
  }
  return file;
}

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void VerifyReport::add(std::string name, double error, double tol) {
  // NaN never passes.
  checks.push_back({std::move(name), error, tol, error <= tol});
}

VerifyReport verify_map(const numkit::SpaceMap& map, const VerifySpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = map.dim();
  VerifyReport rep;
  rep.region = spec.region;
  rep.grid = spec.grid;
  rep.samples.dim = n;

  auto det_error = [&](const Point& p, bool keep) {
    const auto [out, jac] = map.jet(p);
    const double det = numkit::determinant(jac, n);
    const double lhs = spec.target ? det * (*spec.target)(out) : det;
    const double rhs = spec.source ? (*spec.source)(p) : 1.0;
    if (keep) rep.samples.rows.push_back({p, out, det});
    const double e = std::abs(lhs - rhs);
    return std::isnan(e) ? HUGE_VAL : e;
  };

  const std::vector<Point> grid = spec.points.empty() ? region_grid(spec.region, spec.grid) : spec.points;
  for (const auto& p : grid) rep.max_det_error = std::max(rep.max_det_error, det_error(p, true));
  if (spec.random_points > 0) {
    std::mt19937_64 rng(spec.seed);
    std::array<std::uniform_real_distribution<double>, numkit::kMaxDim> axis;
    for (std::size_t i = 0; i < n; ++i) axis[i] = std::uniform_real_distribution<double>(spec.region.lo[i], spec.region.hi[i]);
    for (int k = 0; k < spec.random_points; ++k) {
      Point p{};
      for (std::size_t i = 0; i < n; ++i) p[i] = axis[i](rng);
      rep.max_det_error = std::max(rep.max_det_error, det_error(p, false));
    }
  }
  rep.add("det", rep.max_det_error, spec.det_tol);

  if (!spec.boundary_points.empty()) {
    for (const auto& p : spec.boundary_points) {
      const Point want = spec.reference ? (*spec.reference)(p) : p;
      const double e = sup_diff(map(p), want, n);
      rep.boundary_restriction_error = std::max(rep.boundary_restriction_error, std::isnan(e) ? HUGE_VAL : e);
    }
    rep.add("boundary_restriction", rep.boundary_restriction_error, spec.restriction_tol);
  }

  if (!spec.identity_points.empty()) {
    for (const auto& p : spec.identity_points) {
      const Point want = spec.rigid ? (*spec.rigid)(p) : p;
      const double e = sup_diff(map(p), want, n);
      rep.identity_region_error = std::max(rep.identity_region_error, std::isnan(e) ? HUGE_VAL : e);
    }
    rep.add("identity_region", rep.identity_region_error, 0.0);
  }

  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<std::string> split_components(const std::string& text) {
  std::vector<std::string> parts(1);
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0)
      parts.emplace_back();
    else
      parts.back() += c;
  }
  return parts;
}

}  // namespace sympext::cli
