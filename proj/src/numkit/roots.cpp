#include "sympext/numkit/roots.hpp"

#include <cmath>
#include <sstream>

#include "sympext/error.hpp"

namespace sympext::numkit {

namespace {

std::string describe(double lo, double hi, double flo, double fhi) {
  std::ostringstream os;
  os.precision(17);
  os << "bracket [" << lo << ", " << hi << "] maps to residuals " << flo << ", " << fhi;
  return os.str();
}

}  // namespace

double solve_monotone(const MonotoneFn& f, double target, double lo, double hi, double tol,
                      double guess) {
  if (lo > hi) std::swap(lo, hi);
  const double rlo = f(lo).first - target;
  if (std::abs(rlo) <= tol) return lo;
  const double rhi = f(hi).first - target;
  if (std::abs(rhi) <= tol) return hi;
  if (!std::isfinite(rlo) || !std::isfinite(rhi) || (rlo > 0.0) == (rhi > 0.0))
    throw Error(ErrorKind::NoBracket, describe(lo, hi, rlo, rhi));
  const double dir = rhi > rlo ? 1.0 : -1.0;

  double x = (guess >= lo && guess <= hi) ? guess : 0.5 * (lo + hi);
  double best_x = std::abs(rlo) < std::abs(rhi) ? lo : hi;
  double best_r = std::min(std::abs(rlo), std::abs(rhi));
  double prev_r = std::numeric_limits<double>::infinity();
  bool newton_last = false;

  for (int iter = 0; iter < 400; ++iter) {
    const auto [fx, dfx] = f(x);
    const double r = fx - target;
    if (!std::isfinite(r)) throw Error(ErrorKind::NonConvergence, "non-finite residual");
    if (std::abs(r) < best_r) {
      best_r = std::abs(r);
      best_x = x;
    }
    if (std::abs(r) <= tol) return x;
    if (dfx * dir < 0.0) {
      std::ostringstream os;
      os.precision(17);
      os << "derivative sign flip at x = " << x;
      throw Error(ErrorKind::NonMonotone, os.str());
    }
    if ((r < 0.0) == (dir > 0.0))
      lo = x;
    else
      hi = x;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
      return best_x;

    const bool stalled = newton_last && std::abs(r) > 0.9 * prev_r;
    double next = x - r / dfx;
    newton_last = true;
    if (stalled || dfx == 0.0 || !(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
      newton_last = false;
    }
    prev_r = std::abs(r);
    x = next;
  }
  throw Error(ErrorKind::NonConvergence, "monotone solve exhausted its iteration budget");
}

}  // namespace sympext::numkit
