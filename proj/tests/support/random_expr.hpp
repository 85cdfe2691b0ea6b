#pragma once

#include <random>
#include <string>

namespace sympext::testing {

/// Random smooth DSL expressions over x, y whose natural domain is all of R^2.
class RandomExpr {
 public:
  explicit RandomExpr(unsigned seed) : rng_(seed) {}

  std::string next(int depth = 4) { return node(depth); }

 private:
  std::mt19937_64 rng_;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string constant() {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", d(rng_));
    std::string s(buf);
    return s[0] == '-' ? "(" + s + ")" : s;
  }
  std::string leaf() {
    switch (pick(3)) {
      case 0: return "x";
      case 1: return "y";
      default: return constant();
    }
  }
  std::string node(int depth) {
    if (depth == 0) return leaf();
    const std::string a = node(depth - 1);
    switch (pick(12)) {
      case 0: return "(" + a + " + " + node(depth - 1) + ")";
      case 1: return "(" + a + " - " + node(depth - 1) + ")";
      case 2: return "(" + a + ")*(" + node(depth - 1) + ")";
      case 3: return "(" + a + ")/(2 + cos(" + node(depth - 1) + "))";
      case 4: return "sin(" + a + ")";
      case 5: return "cos(" + a + ")";
      case 6: return "exp(0.3*sin(" + a + "))";
      case 7: return "log(2 + tanh(" + a + "))";
      case 8: return "sqrt(1 + (" + a + ")^2)";
      case 9: return "atan(" + a + ")";
      case 10: return "(" + a + ")^2";
      default: return "-" + leaf() + "*" + "tanh(" + a + ")";
    }
  }
};

}  // namespace sympext::testing
