#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sympext/fndsl/expr.hpp"
#include "sympext/numkit/maps.hpp"

namespace sympext::fndsl {

/// ScalarFn backed by a parsed expression; derivatives come from dual evaluation.
class ExprField final : public numkit::ScalarFnBase<ExprField> {
 public:
  explicit ExprField(Expr e);
  std::size_t arity() const override { return expr_.arity(); }
  const Expr& expr() const { return expr_; }

  template <class T>
  T apply(const numkit::Pt<T>& x) const { return expr_.eval(x); }

 private:
  Expr expr_;
};

/// Throws ArityExceeded when the expression needs more than three coordinates.
numkit::ScalarFnPtr to_field(const Expr& e);

/// parse followed by to_field.
numkit::ScalarFnPtr parse_field(std::string_view text, std::size_t arity);

/// Map whose i-th component is the i-th field; all share the same arity.
numkit::SpaceMapPtr fields_to_map(std::vector<numkit::ScalarFnPtr> components);

/// Parses one expression per component, each of arity components.size().
numkit::SpaceMapPtr parse_map(const std::vector<std::string>& components);

}  // namespace sympext::fndsl
