#include "sympext/circlext/subdivide.hpp"

#include <cmath>

#include "sympext/circlext/genfunc.hpp"
#include "sympext/circlext/moser.hpp"
#include "sympext/error.hpp"
#include "sympext/numkit/chebtable.hpp"
#include "sympext/numkit/roots.hpp"

namespace sympext::circlext {

namespace {

/// G_{t1} o G_{t0}^{-1}.
class PieceLift final : public LiftFnBase<PieceLift> {
 public:
  PieceLift(CircleLift base, double t0, double t1, double reach)
      : base_(std::move(base)), t0_(t0), t1_(t1), reach_(reach) {}

  template <class T>
  T apply(const T& x) const {
    const T z = inverse(x);
    return (1.0 - t1_) * z + t1_ * base_.F(z);
  }

 private:
  CircleLift base_;
  double t0_, t1_, reach_;

  template <class T>
  T inverse(const T& x) const {
    if (t0_ == 0.0) return x;
    if constexpr (std::is_same_v<T, double>) {
      auto g = [&](double z) {
        return numkit::ValueSlope{(1.0 - t0_) * z + t0_ * base_.F(z), (1.0 - t0_) + t0_ * (base_.a(z) + 1.0)};
      };
      return numkit::solve_monotone(g, x, x - reach_, x + reach_, 1e-15, x);
    } else {
      using U = decltype(x.v);
      const U z = inverse(x.v);
      const U slope = (1.0 - t0_) + t0_ * (base_.a(z) + 1.0);
      return T(z, x.d / slope);
    }
  }
};

/// Periodic Chebyshev table of G = F - id on [0, 1]. Evaluating a piece
/// directly costs a root solve per call, which dominates the extensions.
class TabulatedLift final : public LiftFnBase<TabulatedLift> {
 public:
  explicit TabulatedLift(const CircleLift& lift)
      : g_([&](double x) { return lift.F(x) - x; }, 0.0, 1.0, 1e-13) {}

  template <class T>
  T apply(const T& x) const {
    const double turns = std::floor(numkit::value_of(x));
    return x + g_.value(x - turns);
  }

 private:
  numkit::ChebTable g_;
};

double worst_piece(const std::vector<CircleLift>& pieces) {
  double w = 0.0;
  for (const auto& p : pieces) w = std::max(w, p.sup_a(256));
  return w;
}

}  // namespace

std::vector<CircleLift> split_lift(const CircleLift& lift, int m) {
  if (m <= 1) return {lift};
  const double reach = lift.sup_displacement(1024) + 0.5;
  const CircleLift plain(lift.fn(), 0.0);
  std::vector<CircleLift> pieces;
  for (int k = 1; k <= m; ++k) {
    const double t0 = static_cast<double>(k - 1) / m;
    const double t1 = static_cast<double>(k) / m;
    const CircleLift exact(std::make_shared<PieceLift>(plain, t0, t1, reach), 0.0);
    pieces.emplace_back(std::make_shared<TabulatedLift>(exact), 0.0);
  }
  // The rigid rotation is applied once, after the last piece.
  pieces.back() = CircleLift(pieces.back().fn(), lift.rotation_offset());
  return pieces;
}

std::vector<CircleLift> subdivide_lift(const CircleLift& lift, double max_a_norm) {
  if (lift.sup_a(256) <= max_a_norm) return {lift};
  int hi = 2;
  std::vector<CircleLift> best;
  for (;; hi *= 2) {
    if (hi > 4096) throw Error(ErrorKind::NonConvergence, "lift subdivision needs more than 4096 pieces");
    best = split_lift(lift, hi);
    if (worst_piece(best) <= max_a_norm) break;
  }
  int lo = hi / 2;  // known to fail
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    auto trial = split_lift(lift, mid);
    if (worst_piece(trial) <= max_a_norm) {
      hi = mid;
      best = std::move(trial);
    } else {
      lo = mid;
    }
  }
  return best;
}

namespace {

CylinderExtension assemble(const std::vector<CircleLift>& pieces, const ExtendOptions& o) {
  std::vector<CylinderMapPtr> maps;
  for (const auto& p : pieces) {
    const CircleLift bare(p.fn(), 0.0);
    if (o.method == Method::Gen)
      maps.push_back(std::make_shared<GenMap>(build_generating_function(bare, o.eps)));
    else
      maps.push_back(std::make_shared<MoserMap>(moser_blend(bare), o.flow_tol));
  }
  CylinderExtension ext;
  ext.map = std::make_shared<CylinderSequence>(std::move(maps));
  ext.rotation_offset = pieces.back().rotation_offset();
  ext.method = o.method == Method::Gen ? "gen" : "moser";
  ext.pieces = pieces.size();
  return ext;
}

}  // namespace

CylinderExtension extend_circle(const CircleLift& lift, const ExtendOptions& o) {
  const CircleLift base = o.method == Method::Gen ? rotate_normalize(lift) : lift;
  if (!o.force_subdivide) {
    try {
      return assemble({base}, o);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonMonotone && e.kind() != ErrorKind::BlendInfeasible) throw;
    }
  }
  return assemble(subdivide_lift(base, o.max_a_norm), o);
}

}  // namespace sympext::circlext
