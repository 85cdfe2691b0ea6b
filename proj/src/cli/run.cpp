#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "sympext/circlext/cylinder.hpp"
#include "sympext/circlext/lift.hpp"
#include "sympext/circlext/subdivide.hpp"
#include "sympext/cli/cli.hpp"
#include "sympext/cubeflow/partition.hpp"
#include "sympext/cubeflow/square.hpp"
#include "sympext/cubeflow/transport.hpp"
#include "sympext/darboux2/darboux.hpp"
#include "sympext/error.hpp"
#include "sympext/fndsl/expr.hpp"
#include "sympext/fndsl/field.hpp"

namespace sympext::cli {

namespace {

using json = nlohmann::ordered_json;
using numkit::kPi;

struct Common {
  std::uint64_t seed = 0;
  int grid = 16;
  int random = 16;
  std::string out_file;
};

json box_json(const Box& b) {
  json lo = json::array(), hi = json::array();
  for (std::size_t i = 0; i < b.dim; ++i) {
    lo.push_back(b.lo[i]);
    hi.push_back(b.hi[i]);
  }
  return {{"lo", lo}, {"hi", hi}};
}

json report_json(const VerifyReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"error", c.error}, {"tol", c.tol}, {"pass", c.pass}});
  return {{"max_det_error", r.max_det_error},
          {"boundary_restriction_error", r.boundary_restriction_error},
          {"identity_region_error", r.identity_region_error},
          {"region", box_json(r.region)},
          {"grid", r.grid},
          {"wall_seconds", r.wall_seconds},
          {"checks", checks},
          {"pass", r.pass()}};
}

Box make_box(std::size_t dim, std::initializer_list<double> lo_hi) {
  Box b;
  b.dim = dim;
  auto it = lo_hi.begin();
  for (std::size_t i = 0; i < dim; ++i) {
    b.lo[i] = *it++;
    b.hi[i] = *it++;
  }
  return b;
}

std::vector<double> parse_numbers(const std::string& text, std::size_t want, const char* what) {
  std::vector<double> vals;
  for (const auto& part : split_components(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || part.find_first_not_of(" \t", used) != std::string::npos)
      throw Error(ErrorKind::Usage, std::string(what) + ": bad number '" + part + "'");
    vals.push_back(v);
  }
  if (vals.size() != want)
    throw Error(ErrorKind::Usage, std::string(what) + ": expected " + std::to_string(want) + " numbers");
  return vals;
}

void save(const Common& c, const VerifyReport& rep) {
  if (c.out_file.empty()) return;
  std::ofstream os(c.out_file);
  if (!os) throw Error(ErrorKind::Usage, "cannot write " + c.out_file);
  write_samples(os, rep.samples);
}

VerifySpec base_spec(const Common& c, Box region) {
  VerifySpec s;
  s.region = region;
  s.grid = c.grid;
  s.random_points = c.random;
  s.seed = c.seed;
  return s;
}

// --- subcommands -----------------------------------------------------------

json extend_circle_cmd(const Common& c, const std::string& expr, const std::string& method, double eps,
                       VerifyReport& rep) {
  const auto lift = circlext::make_lift(fndsl::Expr::parse(expr, 1));
  circlext::ExtendOptions opt;
  opt.method = method == "moser" ? circlext::Method::Moser : circlext::Method::Gen;
  opt.eps = eps;
  const auto ext = circlext::extend_circle(lift, opt);
  const auto plane = circlext::cylinder_to_plane(ext);

  VerifySpec spec = base_spec(c, make_box(2, {-2.0, 2.0, -2.0, 2.0}));
  // Polar grid over the annulus 1/2 <= r <= 2 instead of the square.
  const int nr = std::max(c.grid, 2), nth = 2 * nr;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nth; ++j) {
      const double r = 0.5 + 1.5 * i / (nr - 1), th = 2.0 * kPi * j / nth;
      spec.points.push_back({r * std::cos(th), r * std::sin(th), 0.0});
    }
  spec.random_points = 0;
  for (int j = 0; j < 256; ++j) {
    const double th = 2.0 * kPi * j / 256;
    spec.boundary_points.push_back({std::cos(th), std::sin(th), 0.0});
  }
  spec.reference = numkit::make_space_map(2, [lift](const auto& p) {
    using std::atan2, std::cos, std::sin;
    const auto th = atan2(p[1], p[0]) * (0.5 / kPi);
    const auto ang = 2.0 * kPi * (lift.F(th) + lift.rotation_offset());
    auto out = p;
    out[0] = cos(ang);
    out[1] = sin(ang);
    return out;
  });
  // Inside the inner radius the extension is the rigid rotation.
  const double r_id = std::min(0.3, 0.9 * plane->inner_radius());
  const double off = ext.rotation_offset;
  spec.rigid = numkit::make_space_map(2, [co = std::cos(2.0 * kPi * off), so = std::sin(2.0 * kPi * off),
                                          off](const auto& p) {
    if (off == 0.0) return p;
    auto out = p;
    out[0] = co * p[0] - so * p[1];
    out[1] = so * p[0] + co * p[1];
    return out;
  });
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double r = r_id * std::sqrt(unit(rng)), th = 2.0 * kPi * unit(rng);
    spec.identity_points.push_back({r * std::cos(th), r * std::sin(th), 0.0});
  }
  rep = verify_map(*plane, spec);
  return {{"method", ext.method},
          {"pieces", ext.pieces},
          {"rotation_offset", ext.rotation_offset},
          {"identity", lift.is_identity()},
          {"inner_radius", plane->inner_radius()},
          {"outer_radius", plane->outer_radius()}};
}

json extend_square_cmd(const Common& c, const std::string& phi1_text, VerifyReport& rep) {
  const auto parts = split_components(phi1_text);
  if (parts.size() != 2) throw Error(ErrorKind::Usage, "--phi1 needs two components");
  const auto phi1 = fndsl::parse_map(parts);
  const auto ext = cubeflow::square_extension(phi1);

  VerifySpec spec = base_spec(c, make_box(2, {0.0, 1.0, 0.0, 1.0}));
  for (int j = 0; j < 16; ++j) {
    const double t = j / 16.0;
    for (const Point& p : {Point{t, 0, 0}, Point{1, t, 0}, Point{1 - t, 1, 0}, Point{0, 1 - t, 0}})
      spec.boundary_points.push_back(p);
  }
  spec.reference = phi1;
  rep = verify_map(*ext.psi, spec);
  return {{"phi1", parts}};
}

json transport_cmd(const Common& c, const std::string& h_text, const std::string& g_text, std::size_t dim,
                   const std::string& domain, VerifyReport& rep) {
  if (dim < 1 || dim > 2) throw Error(ErrorKind::Usage, "--dim must be 1 or 2");
  const auto h = fndsl::parse_field(h_text, dim);
  const auto g = fndsl::parse_field(g_text, dim);
  const bool doubled = domain == "double";
  const auto u = doubled ? cubeflow::mose2_transport(h, g, dim) : cubeflow::mose_transport(h, g, dim);
  const Box box = u->domain().box();

  VerifySpec spec = base_spec(c, box);
  spec.source = h;
  spec.target = g;
  // Boundary points on every face, identity points outside the domain.
  for (std::size_t i = 0; i < dim; ++i)
    for (double side : {box.lo[i], box.hi[i]})
      for (int j = 0; j <= 8; ++j) {
        Point p{};
        for (std::size_t k = 0; k < dim; ++k) p[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * j / 8.0;
        p[i] = side;
        spec.boundary_points.push_back(p);
        p[i] = side + (side == box.lo[i] ? -0.25 : 0.25);
        spec.identity_points.push_back(p);
      }
  rep = verify_map(*u, spec);
  return {{"dim", dim}, {"domain", doubled ? "double" : "unit"}};
}

json darboux_cmd(const Common& c, const std::string& p_text, const std::string& at, VerifyReport& rep) {
  const auto xy = parse_numbers(at, 2, "--at");
  const Point center{xy[0], xy[1], 0.0};
  const auto p = fndsl::parse_field(p_text, 2);

  json info;
  numkit::SpaceMapPtr rotation = numkit::identity_map(2);
  ScalarFnPtr p_chart = p;
  Point c_chart = center;
  if (!(numkit::partial_at(*p, 0, center) > 0.0)) {
    const auto pre = darboux2::gradient_precondition(p, center);
    const auto m = pre.rotation;
    rotation = numkit::make_space_map(2, [m](const auto& q) {
      auto out = q;
      out[0] = m[0][0] * q[0] + m[0][1] * q[1];
      out[1] = m[1][0] * q[0] + m[1][1] * q[1];
      return out;
    });
    p_chart = pre.p_rotated;
    c_chart = pre.center;
    info["preconditioned"] = true;
    info["angle"] = pre.angle;
  } else {
    info["preconditioned"] = false;
  }
  const auto chart = darboux2::darboux_normalize(p_chart, c_chart);
  // The chart for p itself: p o (M o f) = x.
  const auto f = numkit::compose({rotation, chart.f});

  VerifySpec spec = base_spec(c, darboux2::square_box(chart.chart_center, chart.box_halfwidth));
  rep = verify_map(*f, spec);
  double value_res = 0.0;
  for (const auto& row : rep.samples.rows) value_res = std::max(value_res, std::abs((*p)(row.out) - row.in[0]));
  rep.add("value", value_res, 1e-6);

  info["chart_center"] = {chart.chart_center[0], chart.chart_center[1]};
  info["box_halfwidth"] = chart.box_halfwidth;
  info["halvings"] = chart.halvings;
  info["max_value_residual"] = value_res;
  info["max_det_residual"] = rep.max_det_error;
  return info;
}

cubeflow::PartitionProblem read_partition_spec(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Usage, "cannot read " + path);
  cubeflow::PartitionProblem prob;
  std::string tau_text, g_text;
  bool have_u = false, have_b = false;
  auto read_box = [&](std::istringstream& ls, std::size_t n, std::size_t dim) {
    std::vector<double> v;
    for (double x; ls >> x;) v.push_back(x);
    if (!ls.eof() || (dim == 0 ? (v.size() != 2 && v.size() != 4) : v.size() != 2 * dim))
      throw Error(ErrorKind::Usage, "line " + std::to_string(n) + ": bad box");
    Box b;
    b.dim = v.size() / 2;
    for (std::size_t i = 0; i < b.dim; ++i) {
      b.lo[i] = v[2 * i];
      b.hi[i] = v[2 * i + 1];
      if (!(b.lo[i] < b.hi[i])) throw Error(ErrorKind::Usage, "line " + std::to_string(n) + ": empty box");
    }
    return b;
  };
  std::string line;
  for (std::size_t n = 1; std::getline(is, line); ++n) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "U") {
      prob.U = read_box(ls, n, 0);
      prob.dim = prob.U.dim;
      have_u = true;
    } else if (key == "tau" || key == "g") {
      std::string rest;
      std::getline(ls, rest);
      (key == "tau" ? tau_text : g_text) = rest;
    } else if (key == "B" || key == "cover") {
      if (!have_u) throw Error(ErrorKind::Usage, "line " + std::to_string(n) + ": U must come first");
      const Box b = read_box(ls, n, prob.dim);
      if (key == "B") {
        prob.B = b;
        have_b = true;
      } else {
        prob.covers.push_back(b);
      }
    } else {
      throw Error(ErrorKind::Usage, "line " + std::to_string(n) + ": unknown key '" + key + "'");
    }
  }
  if (!have_u || !have_b || prob.covers.empty() || tau_text.empty() || g_text.empty())
    throw Error(ErrorKind::Usage, "spec needs U, B, at least one cover, tau and g");
  prob.tau = fndsl::parse_field(tau_text, prob.dim);
  prob.g = fndsl::parse_field(g_text, prob.dim);
  return prob;
}

json partition_cmd(const Common& c, const std::string& path, VerifyReport& rep) {
  const auto prob = read_partition_spec(path);
  const auto res = cubeflow::balanced_partition(prob);
  const auto& r = res.report;

  const auto start = std::chrono::steady_clock::now();
  rep.region = prob.U;
  rep.grid = c.grid;
  double balance = 0.0;
  for (const auto& pi : r.piece_integrals) balance = std::max({balance, std::abs(pi[0]), std::abs(pi[1])});
  rep.add("balance", balance, 1e-8);
  double recon = 0.0;
  std::mt19937_64 rng(c.seed);
  for (int k = 0; k < std::max(c.random, 1) * 16; ++k) {
    Point x{};
    for (std::size_t i = 0; i < prob.dim; ++i)
      x[i] = std::uniform_real_distribution<double>(prob.U.lo[i], prob.U.hi[i])(rng);
    double sum = 0.0;
    for (const auto& piece : res.pieces) sum += (*piece)(x);
    recon = std::max(recon, std::abs(sum - (*prob.g)(x)));
  }
  rep.add("reconstruction", recon, 1e-10);
  rep.add("sup_bound", r.measured_c, r.bound);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json pieces = json::array();
  for (const auto& pi : r.piece_integrals) pieces.push_back({pi[0], pi[1]});
  return {{"dim", prob.dim},
          {"pieces", res.pieces.size()},
          {"parent", r.parent},
          {"lambda_u", r.lambda_u},
          {"lambda_b", r.lambda_b},
          {"piece_integrals", pieces},
          {"input_integrals", {r.input_integrals[0], r.input_integrals[1]}},
          {"measured_c", r.measured_c},
          {"bound", r.bound}};
}

json verify_cmd(const std::string& path, double tol, VerifyReport& rep) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Usage, "cannot read " + path);
  const auto start = std::chrono::steady_clock::now();
  const auto file = read_samples(is);
  rep.region.dim = file.dim;
  for (std::size_t i = 0; i < file.dim; ++i) {
    rep.region.lo[i] = HUGE_VAL;
    rep.region.hi[i] = -HUGE_VAL;
  }
  for (const auto& row : file.rows) {
    const double e = std::abs(row.det - 1.0);
    rep.max_det_error = std::max(rep.max_det_error, std::isnan(e) ? HUGE_VAL : e);
    for (std::size_t i = 0; i < file.dim; ++i) {
      rep.region.lo[i] = std::min(rep.region.lo[i], row.in[i]);
      rep.region.hi[i] = std::max(rep.region.hi[i], row.in[i]);
    }
  }
  if (file.rows.empty()) rep.region.dim = 0;
  rep.grid = static_cast<int>(file.rows.size());
  rep.add("det", rep.max_det_error, tol);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {{"dim", file.dim}, {"rows", file.rows.size()}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Area-preserving extensions and normal forms"};
  app.require_subcommand(1);
  Common c;
  auto common = [&c](CLI::App* sub, bool writes) {
    sub->add_option("--seed", c.seed, "seed for random samples")->capture_default_str();
    sub->add_option("--grid", c.grid, "grid points per axis")->capture_default_str();
    sub->add_option("--random", c.random, "extra random samples")->capture_default_str();
    if (writes) sub->add_option("--out", c.out_file, "write grid samples to FILE");
  };

  std::string map_expr, method = "gen", phi1, h_text, g_text, domain = "unit", p_text, at, spec_path, in_path;
  double eps = 0.4, tol = 1e-6;
  std::size_t dim = 2;

  auto* circle = app.add_subcommand("extend-circle", "extend a circle map to the plane");
  circle->add_option("--map", map_expr, "lift F(x)")->required();
  circle->add_option("--method", method)->check(CLI::IsMember({"gen", "moser"}))->capture_default_str();
  circle->add_option("--eps", eps)->capture_default_str();
  common(circle, true);

  auto* square = app.add_subcommand("extend-square", "extend a boundary map of the unit square");
  square->add_option("--phi1", phi1, "two components, comma separated")->required();
  common(square, true);

  auto* transport = app.add_subcommand("transport", "map with g(u) det Du = h on a cube");
  transport->set_help_flag("--help", "print this help");  // -h would clash with --h
  transport->add_option("--h", h_text)->required();
  transport->add_option("--g", g_text)->required();
  transport->add_option("--dim", dim)->capture_default_str();
  transport->add_option("--domain", domain)->check(CLI::IsMember({"unit", "double"}))->capture_default_str();
  common(transport, true);

  auto* darboux = app.add_subcommand("darboux", "area-preserving chart with p o f = x");
  darboux->add_option("--p", p_text)->required();
  darboux->add_option("--at", at, "X,Y")->required();
  common(darboux, false);

  auto* partition = app.add_subcommand("partition", "split a function into balanced pieces");
  partition->add_option("--spec", spec_path)->required();
  common(partition, false);

  auto* verify = app.add_subcommand("verify", "check determinants in a sample file");
  verify->add_option("--in", in_path)->required();
  verify->add_option("--tol", tol)->capture_default_str();
  common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  json doc{{"command", sub->get_name()}};
  try {
    VerifyReport rep;
    json info;
    if (sub == circle) info = extend_circle_cmd(c, map_expr, method, eps, rep);
    if (sub == square) info = extend_square_cmd(c, phi1, rep);
    if (sub == transport) info = transport_cmd(c, h_text, g_text, dim, domain, rep);
    if (sub == darboux) info = darboux_cmd(c, p_text, at, rep);
    if (sub == partition) info = partition_cmd(c, spec_path, rep);
    if (sub == verify) info = verify_cmd(in_path, tol, rep);
    save(c, rep);
    doc["status"] = rep.pass() ? "ok" : "failed";
    doc["construction"] = info;
    doc["report"] = report_json(rep);
    out << doc.dump(2) << '\n';
    if (!rep.pass()) {
      err << "verification failed\n";
      return 3;
    }
    return 0;
  } catch (const Error& e) {
    doc["status"] = "error";
    doc["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    out << doc.dump(2) << '\n';
    err << e.what() << '\n';
    return is_validation_error(e.kind()) ? 2 : 3;
  }
}

}  // namespace sympext::cli
