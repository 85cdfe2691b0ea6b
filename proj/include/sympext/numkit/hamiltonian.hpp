#pragma once

#include "sympext/numkit/maps.hpp"
#include "sympext/numkit/ode.hpp"

namespace sympext::numkit {

/// Autonomous field (dH/dy, -dH/dx) of a planar Hamiltonian.
/// The flow is area preserving and serves as a fixture generator.
class HamiltonianField final : public TimeFieldBase<HamiltonianField> {
 public:
  HamiltonianField(ScalarFnPtr h, Box box) : h_(std::move(h)), box_(box) {}
  std::size_t dim() const override { return 2; }
  Box domain() const override { return box_; }
  template <class T>
  Pt<T> apply(double, const Pt<T>& x) const {
    return {partial_at(*h_, 1, x), -partial_at(*h_, 0, x), T(0.0)};
  }

 private:
  ScalarFnPtr h_;
  Box box_;
};

/// Default box is [-1e6, 1e6]^2, i.e. effectively unbounded.
TimeFieldPtr hamiltonian_field(ScalarFnPtr h);
TimeFieldPtr hamiltonian_field(ScalarFnPtr h, Box box);

}  // namespace sympext::numkit
