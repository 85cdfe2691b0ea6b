#include "sympext/numkit/chebtable.hpp"

#include <cmath>
#include <string>

#include "sympext/error.hpp"
#include "sympext/numkit/types.hpp"

namespace sympext::numkit {

namespace {

constexpr std::size_t N = ChebTable::kDegree;

struct Fit {
  std::array<double, N + 2> a{};
  double scale = 0.0;
};

const std::array<double, 2 * N>& cos_table() {
  static const std::array<double, 2 * N> table = [] {
    std::array<double, 2 * N> t{};
    for (std::size_t m = 0; m < 2 * N; ++m) t[m] = std::cos(kPi * static_cast<double>(m) / N);
    return t;
  }();
  return table;
}

// Interpolates at the N+1 Chebyshev extrema and converts to coefficients.
Fit fit_panel(const std::function<double(double)>& f, double lo, double hi) {
  std::array<double, N + 1> vals{};
  const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
  const auto& cs = cos_table();
  Fit out;
  for (std::size_t j = 0; j <= N; ++j) {
    vals[j] = f(mid + hw * cs[j]);
    out.scale = std::max(out.scale, std::abs(vals[j]));
  }
  for (std::size_t k = 0; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j <= N; ++j) {
      const double w = (j == 0 || j == N) ? 0.5 : 1.0;
      s += w * vals[j] * cs[(j * k) % (2 * N)];
    }
    double c = 2.0 * s / N;
    if (k == 0 || k == N) c *= 0.5;
    out.a[k] = c;
  }
  return out;
}

// Antiderivative coefficients on [-1, 1] vanishing at -1.
std::array<double, N + 2> antiderivative(const std::array<double, N + 2>& a) {
  std::array<double, N + 4> c{};
  for (std::size_t k = 0; k <= N; ++k) c[k] = a[k];
  c[0] *= 2.0;
  std::array<double, N + 2> b{};
  for (std::size_t k = 1; k <= N + 1; ++k) b[k] = (c[k - 1] - c[k + 1]) / (2.0 * static_cast<double>(k));
  double at_minus_one = 0.0;
  for (std::size_t k = 1; k <= N + 1; ++k) at_minus_one += (k % 2 ? -b[k] : b[k]);
  b[0] = -at_minus_one;
  return b;
}

}  // namespace

ChebTable::ChebTable(const std::function<double(double)>& f, double a, double b, double tol,
                     std::span<const double> breaks, std::size_t max_panels) {
  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b && x > cuts.back()) cuts.push_back(x);
  cuts.push_back(b);

  struct Pending {
    double lo, hi;
    Fit fit;
  };
  std::vector<Pending> stack;
  double scale = 0.0;
  for (std::size_t i = cuts.size() - 1; i >= 1; --i) {
    Fit fit = fit_panel(f, cuts[i - 1], cuts[i]);
    scale = std::max(scale, fit.scale);
    stack.push_back({cuts[i - 1], cuts[i], fit});
  }
  scale = std::max(scale, 1e-300);

  edges_.push_back(a);
  std::size_t count = stack.size();
  while (!stack.empty()) {
    Pending p = stack.back();
    stack.pop_back();
    const double tail = std::max(std::abs(p.fit.a[N]), std::abs(p.fit.a[N - 1]));
    const bool narrow = (p.hi - p.lo) <= 1e-12 * (b - a);
    if (tail <= tol * scale || narrow) {
      edges_.push_back(p.hi);
      coef_.push_back(p.fit.a);
      continue;
    }
    if (++count > max_panels)
      throw Error(ErrorKind::NonConvergence,
                  "Chebyshev table exceeded " + std::to_string(max_panels) + " panels");
    const double mid = 0.5 * (p.lo + p.hi);
    Fit right = fit_panel(f, mid, p.hi);
    Fit left = fit_panel(f, p.lo, mid);
    scale = std::max({scale, left.scale, right.scale});
    stack.push_back({mid, p.hi, right});
    stack.push_back({p.lo, mid, left});
  }

  offsets_.assign(1, 0.0);
  for (std::size_t p = 0; p < coef_.size(); ++p) {
    anti_.push_back(antiderivative(coef_[p]));
    const double hw = 0.5 * (edges_[p + 1] - edges_[p]);
    double at_one = 0.0;
    for (double c : anti_.back()) at_one += c;
    offsets_.push_back(offsets_.back() + hw * at_one);
  }
}

}  // namespace sympext::numkit
