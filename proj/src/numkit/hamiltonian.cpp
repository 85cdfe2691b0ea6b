#include "sympext/numkit/hamiltonian.hpp"

namespace sympext::numkit {

TimeFieldPtr hamiltonian_field(ScalarFnPtr h) {
  Box box{2, {-1e6, -1e6, 0.0}, {1e6, 1e6, 0.0}};
  return hamiltonian_field(std::move(h), box);
}

TimeFieldPtr hamiltonian_field(ScalarFnPtr h, Box box) {
  return std::make_shared<HamiltonianField>(std::move(h), box);
}

}  // namespace sympext::numkit
