#include "sympext/fndsl/field.hpp"

#include "sympext/error.hpp"

namespace sympext::fndsl {

ExprField::ExprField(Expr e) : expr_(std::move(e)) {}

numkit::ScalarFnPtr to_field(const Expr& e) {
  if (e.arity() > numkit::kMaxDim)
    throw Error(ErrorKind::ArityExceeded, "fields support at most three coordinates");
  return std::make_shared<ExprField>(e);
}

numkit::ScalarFnPtr parse_field(std::string_view text, std::size_t arity) {
  return to_field(Expr::parse(text, arity));
}

namespace {

class FieldMap final : public numkit::SpaceMapBase<FieldMap> {
 public:
  explicit FieldMap(std::vector<numkit::ScalarFnPtr> c) : c_(std::move(c)) {}
  std::size_t dim() const override { return c_.size(); }
  template <class T>
  numkit::Pt<T> apply(const numkit::Pt<T>& x) const {
    numkit::Pt<T> out{};
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i]->eval(x);
    return out;
  }

 private:
  std::vector<numkit::ScalarFnPtr> c_;
};

}  // namespace

numkit::SpaceMapPtr fields_to_map(std::vector<numkit::ScalarFnPtr> components) {
  if (components.empty() || components.size() > numkit::kMaxDim)
    throw Error(ErrorKind::ArityExceeded, "maps need one to three components");
  return std::make_shared<FieldMap>(std::move(components));
}

numkit::SpaceMapPtr parse_map(const std::vector<std::string>& components) {
  std::vector<numkit::ScalarFnPtr> fields;
  for (const auto& c : components) fields.push_back(parse_field(c, components.size()));
  return fields_to_map(std::move(fields));
}

}  // namespace sympext::fndsl
