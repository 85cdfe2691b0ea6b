#include "sympext/cubeflow/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sympext/bumps/profile.hpp"
#include "sympext/error.hpp"

namespace sympext::cubeflow {

namespace {

using Cuts = std::array<std::vector<double>, 2>;

Box intersect(const Box& a, const Box& b) {
  Box out = a;
  for (std::size_t d = 0; d < a.dim; ++d) {
    out.lo[d] = std::max(a.lo[d], b.lo[d]);
    out.hi[d] = std::min(a.hi[d], b.hi[d]);
  }
  return out;
}

double volume(const Box& b) {
  double v = 1.0;
  for (std::size_t d = 0; d < b.dim; ++d) v *= std::max(0.0, b.hi[d] - b.lo[d]);
  return v;
}

bool inside(const Box& inner, const Box& outer) {
  for (std::size_t d = 0; d < inner.dim; ++d)
    if (inner.lo[d] < outer.lo[d] || inner.hi[d] > outer.hi[d]) return false;
  return true;
}

// An open box meets the boundary of the open box B iff it meets the closure
// of B without lying inside B (boxes are connected).
bool meets_boundary(const Box& open, const Box& b) {
  if (volume(open) <= 0.0) return false;
  for (std::size_t d = 0; d < open.dim; ++d)
    if (!(open.lo[d] < b.hi[d] && open.hi[d] > b.lo[d])) return false;
  return !inside(open, b);
}

std::string describe(const Box& b) {
  std::ostringstream os;
  for (std::size_t d = 0; d < b.dim; ++d) os << (d ? " x " : "") << "(" << b.lo[d] << ", " << b.hi[d] << ")";
  return os.str();
}

/// Product of plateau bumps, positive exactly on the open box when `fill`,
/// otherwise supported in the middle 90% of it.
struct BoxBump {
  std::size_t dim = 1;
  std::array<bumps::PlateauBump, 2> axes{};

  BoxBump(const Box& b, bool fill) : dim(b.dim) {
    for (std::size_t d = 0; d < dim; ++d) {
      const double hw = 0.5 * (b.hi[d] - b.lo[d]);
      const double c = 0.5 * (b.hi[d] + b.lo[d]);
      axes[d] = fill ? bumps::PlateauBump{c, 0.25 * hw, 0.75 * hw} : bumps::PlateauBump{c, 0.3 * hw, 0.6 * hw};
    }
  }

  template <class T>
  T eval(const Pt<T>& x) const {
    T v(1.0);
    for (std::size_t d = 0; d < dim; ++d) {
      if (!(x[d] > axes[d].left() && x[d] < axes[d].right())) return T(0.0);
      v = v * axes[d].eval(x[d]);
    }
    return v;
  }

  void add_cuts(Cuts& cuts) const {
    for (std::size_t d = 0; d < dim; ++d) {
      const auto& a = axes[d];
      for (double c : {a.left(), a.center - a.halfwidth, a.center + a.halfwidth, a.right()}) cuts[d].push_back(c);
    }
  }
};

class Gamma final : public numkit::ScalarFnBase<Gamma> {
 public:
  Gamma(std::shared_ptr<const std::vector<BoxBump>> raw, std::size_t index, std::size_t dim)
      : raw_(std::move(raw)), index_(index), dim_(dim) {}
  std::size_t arity() const override { return dim_; }
  template <class T>
  T apply(const Pt<T>& x) const {
    T sum(0.0);
    for (const auto& b : *raw_) sum = sum + b.eval(x);
    if (numkit::value_of(sum) == 0.0) return T(0.0);
    return (*raw_)[index_].eval(x) / sum;
  }

 private:
  std::shared_ptr<const std::vector<BoxBump>> raw_;
  std::size_t index_, dim_;
};

class Eta final : public numkit::ScalarFnBase<Eta> {
 public:
  Eta(BoxBump in, BoxBump out, double c_in, double c_out, std::size_t dim)
      : in_(in), out_(out), c_in_(c_in), c_out_(c_out), dim_(dim) {}
  std::size_t arity() const override { return dim_; }
  template <class T>
  T apply(const Pt<T>& x) const { return c_in_ * in_.eval(x) + c_out_ * out_.eval(x); }

 private:
  BoxBump in_, out_;
  double c_in_, c_out_;
  std::size_t dim_;
};

/// g gamma_j - eta_j + sum of eta_k over the children k of j.
class Piece final : public numkit::ScalarFnBase<Piece> {
 public:
  Piece(ScalarFnPtr g, ScalarFnPtr gamma, ScalarFnPtr own, std::vector<ScalarFnPtr> children, std::size_t dim)
      : g_(std::move(g)), gamma_(std::move(gamma)), own_(std::move(own)), children_(std::move(children)), dim_(dim) {}
  std::size_t arity() const override { return dim_; }
  template <class T>
  T apply(const Pt<T>& x) const {
    T v = g_->eval(x) * gamma_->eval(x);
    if (own_) v = v - own_->eval(x);
    for (const auto& c : children_) v = v + c->eval(x);
    return v;
  }

 private:
  ScalarFnPtr g_, gamma_, own_;
  std::vector<ScalarFnPtr> children_;
  std::size_t dim_;
};

constexpr double kTol = 1e-11;

double weighted(const ScalarFnPtr& f, const ScalarFnPtr& tau, const Box& box, const Cuts& cuts) {
  auto prod = numkit::make_scalar_fn(box.dim, [&](const auto& x) { return f->eval(x) * tau->eval(x); });
  return piecewise_box_integral(*prod, box, cuts, kTol);
}

// Largest slab of R lying outside the closure of B.
Box outside_slab(const Box& r, const Box& b) {
  Box best = r;
  double best_vol = -1.0;
  for (std::size_t d = 0; d < r.dim; ++d) {
    Box below = r, above = r;
    below.hi[d] = std::min(r.hi[d], b.lo[d]);
    above.lo[d] = std::max(r.lo[d], b.hi[d]);
    for (const Box& s : {below, above})
      if (volume(s) > best_vol) {
        best_vol = volume(s);
        best = s;
      }
  }
  return best;
}

// Sample points covering U: 10^4 on the line, 100 x 100 in the plane.
std::vector<Point> samples(const Box& u) {
  std::vector<Point> out;
  const int k = u.dim == 1 ? 10000 : 100;
  const int ky = u.dim == 1 ? 1 : k;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < ky; ++j) {
      Point p{};
      p[0] = u.lo[0] + (u.hi[0] - u.lo[0]) * (i + 0.5) / k;
      if (u.dim == 2) p[1] = u.lo[1] + (u.hi[1] - u.lo[1]) * (j + 0.5) / ky;
      out.push_back(p);
    }
  return out;
}

}  // namespace

double piecewise_box_integral(const ScalarFn& f, const Box& box, const Cuts& cuts, double tol) {
  auto sorted = [&](std::size_t d) {
    std::vector<double> c;
    for (double x : cuts[d])
      if (x > box.lo[d] && x < box.hi[d]) c.push_back(x);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  };
  const auto cx = sorted(0);
  if (box.dim == 1)
    return numkit::integrate([&](double x) { return f(Point{x, 0.0, 0.0}); }, box.lo[0], box.hi[0], tol, cx);
  const auto cy = sorted(1);
  return numkit::integrate(
      [&](double x) {
        return numkit::integrate([&](double y) { return f(Point{x, y, 0.0}); }, box.lo[1], box.hi[1], tol, cy);
      },
      box.lo[0], box.hi[0], tol, cx);
}

PartitionResult balanced_partition(const PartitionProblem& problem) {
  const std::size_t n = problem.dim;
  if (n < 1 || n > 2) throw Error(ErrorKind::Unsupported, "partition works on the line or the plane");
  if (problem.covers.empty()) throw Error(ErrorKind::BadCoverOrder, "no covers given");
  Box U = problem.U, B = problem.B;
  U.dim = B.dim = n;
  std::vector<Box> covers = problem.covers;
  for (auto& c : covers) c.dim = n;
  const std::size_t m = covers.size() - 1;

  Cuts cuts;
  auto add_box = [&](const Box& b) {
    for (std::size_t d = 0; d < n; ++d) {
      cuts[d].push_back(b.lo[d]);
      cuts[d].push_back(b.hi[d]);
    }
  };
  add_box(U);
  add_box(B);

  PartitionResult out;
  PartitionReport& rep = out.report;
  rep.input_integrals = {weighted(problem.g, problem.tau, U, cuts), weighted(problem.g, problem.tau, B, cuts)};
  if (std::abs(rep.input_integrals[0]) > 1e-8 || std::abs(rep.input_integrals[1]) > 1e-8) {
    std::ostringstream os;
    os << "weighted integrals of g are " << rep.input_integrals[0] << " over U and " << rep.input_integrals[1]
       << " over B";
    throw Error(ErrorKind::NotBalanced, os.str());
  }

  // Parents: the first earlier cover sharing a boundary point of B.
  rep.parent.assign(m + 1, -1);
  for (std::size_t k = 0; k <= m; ++k) {
    if (!meets_boundary(covers[k], B))
      throw Error(ErrorKind::BadCoverOrder, "cover " + std::to_string(k) + " = " + describe(covers[k]) +
                                                " misses the boundary of B");
    if (k == 0) continue;
    for (std::size_t j = 0; j < k && rep.parent[k] < 0; ++j)
      if (meets_boundary(intersect(intersect(covers[k], covers[j]), U), B)) rep.parent[k] = static_cast<int>(j);
    if (rep.parent[k] < 0)
      throw Error(ErrorKind::BadCoverOrder,
                  "cover " + std::to_string(k) + " shares no boundary point of B with an earlier cover");
  }

  auto raw = std::make_shared<std::vector<BoxBump>>();
  for (const auto& c : covers) {
    raw->emplace_back(c, true);
    raw->back().add_cuts(cuts);
  }
  const auto points = samples(U);
  for (const auto& p : points) {
    if (problem.g->eval(p) == 0.0) continue;
    double sum = 0.0;
    for (const auto& b : *raw) sum += b.eval(p);
    if (!(sum > 0.0)) {
      std::ostringstream os;
      os << "covers miss (" << p[0] << ", " << p[1] << ") where g is nonzero";
      throw Error(ErrorKind::BadCoverOrder, os.str());
    }
  }
  for (std::size_t j = 0; j <= m; ++j) out.gamma.push_back(std::make_shared<Gamma>(raw, j, n));

  // Back-substitution: lambda_j = A_j + sum of lambda_k over the children of j.
  rep.lambda_u.assign(m + 1, 0.0);
  rep.lambda_b.assign(m + 1, 0.0);
  for (std::size_t j = m; j >= 1; --j) {
    auto gg = numkit::make_scalar_fn(n, [&, j](const auto& x) { return problem.g->eval(x) * out.gamma[j]->eval(x); });
    rep.lambda_u[j] += weighted(gg, problem.tau, U, cuts);
    rep.lambda_b[j] += weighted(gg, problem.tau, B, cuts);
    const auto p = static_cast<std::size_t>(rep.parent[j]);
    if (p >= 1) {
      rep.lambda_u[p] += rep.lambda_u[j];
      rep.lambda_b[p] += rep.lambda_b[j];
    }
  }

  out.eta.assign(m + 1, nullptr);
  for (std::size_t k = 1; k <= m; ++k) {
    const Box r = intersect(intersect(covers[k], covers[static_cast<std::size_t>(rep.parent[k])]), U);
    const Box in = intersect(r, B);
    const Box slab = outside_slab(r, B);
    if (volume(in) <= 0.0 || volume(slab) <= 0.0)
      throw Error(ErrorKind::EmptyBumpRegion, "no room for eta_" + std::to_string(k) + " in " + describe(r));
    const BoxBump b_in(in, false), b_out(slab, false);
    Cuts local = cuts;
    b_in.add_cuts(local);
    b_out.add_cuts(local);
    auto as_fn = [n](const BoxBump& b) {
      return numkit::make_scalar_fn(n, [b](const auto& x) { return b.eval(x); });
    };
    const double m_in = weighted(as_fn(b_in), problem.tau, in, local);
    const double m_out = weighted(as_fn(b_out), problem.tau, slab, local);
    const double c_in = rep.lambda_b[k] / m_in;
    const double c_out = (rep.lambda_u[k] - rep.lambda_b[k]) / m_out;
    out.eta[k] = std::make_shared<Eta>(b_in, b_out, c_in, c_out, n);
    b_in.add_cuts(cuts);
    b_out.add_cuts(cuts);
  }

  for (std::size_t j = 0; j <= m; ++j) {
    std::vector<ScalarFnPtr> children;
    for (std::size_t k = 1; k <= m; ++k)
      if (rep.parent[k] == static_cast<int>(j)) children.push_back(out.eta[k]);
    out.pieces.push_back(std::make_shared<Piece>(problem.g, out.gamma[j], out.eta[j], std::move(children), n));
  }
  for (const auto& piece : out.pieces)
    rep.piece_integrals.push_back({weighted(piece, problem.tau, U, cuts), weighted(piece, problem.tau, B, cuts)});

  double tau_max = 0.0, tau_min = std::numeric_limits<double>::infinity(), piece_max = 0.0;
  for (const auto& p : points) {
    const double t = problem.tau->eval(p);
    tau_max = std::max(tau_max, std::abs(t));
    tau_min = std::min(tau_min, std::abs(t));
    rep.sup_g = std::max(rep.sup_g, std::abs(problem.g->eval(p)));
    for (const auto& piece : out.pieces) piece_max = std::max(piece_max, std::abs(piece->eval(p)));
  }
  rep.measured_c = rep.sup_g > 0.0 ? piece_max / rep.sup_g : 0.0;

  double min_u = std::numeric_limits<double>::infinity(), min_b = min_u;
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) {
      const Box both = intersect(intersect(covers[i], covers[j]), U);
      if (volume(both) > 0.0) min_u = std::min(min_u, volume(both));
      const double vb = volume(intersect(both, B));
      if (vb > 0.0) min_b = std::min(min_b, vb);
    }
  if (std::isfinite(min_u)) rep.q += volume(U) / min_u;
  if (std::isfinite(min_b)) rep.q += volume(B) / min_b;
  rep.bound = 1000.0 * static_cast<double>(m * m) * (tau_max / tau_min) * rep.q;
  return out;
}

}  // namespace sympext::cubeflow
