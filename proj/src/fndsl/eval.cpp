#include <cmath>
#include <sstream>

#include "sympext/error.hpp"
#include "sympext/fndsl/expr.hpp"

namespace sympext::fndsl {

using numkit::D1;
using numkit::D2;
using numkit::D3;
using numkit::value_of;

namespace {

template <class T>
[[noreturn]] void domain_error(const char* what, const T* x, std::size_t arity) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at point (";
  for (std::size_t i = 0; i < arity; ++i) os << (i ? ", " : "") << value_of(x[i]);
  os << ")";
  throw Error(ErrorKind::EvalDomain, os.str());
}

template <class T>
struct Evaluator {
  const std::vector<Node>& nodes;
  const T* x;
  std::size_t arity;

  T run(std::int32_t i) const {
    using std::abs, std::atan, std::cos, std::exp, std::log, std::pow, std::sin, std::sqrt,
        std::tan, std::tanh;
    const Node& n = nodes[static_cast<std::size_t>(i)];
    switch (n.op) {
      case Op::Num: return T(n.value);
      case Op::Var: return x[n.var];
      case Op::Neg: return -run(n.lhs);
      case Op::Add: return run(n.lhs) + run(n.rhs);
      case Op::Sub: return run(n.lhs) - run(n.rhs);
      case Op::Mul: return run(n.lhs) * run(n.rhs);
      case Op::Div: {
        T num = run(n.lhs);
        T den = run(n.rhs);
        if (value_of(den) == 0.0) domain_error("division by zero", x, arity);
        return num / den;
      }
      case Op::Pow: {
        T base = run(n.lhs);
        T expo = run(n.rhs);
        const double b = value_of(base);
        const double e = value_of(expo);
        if (numkit::is_constant(expo)) {
          if (b < 0.0 && e != std::floor(e)) domain_error("negative base with fractional power", x, arity);
          if (b == 0.0 && e < 0.0) domain_error("zero to a negative power", x, arity);
          return pow(base, e);
        }
        if (b <= 0.0) domain_error("non-positive base with variable exponent", x, arity);
        return exp(expo * log(base));
      }
      case Op::Call: {
        T a = run(n.lhs);
        const double v = value_of(a);
        switch (n.fn) {
          case Fn::Sin: return sin(a);
          case Fn::Cos: return cos(a);
          case Fn::Tan: return tan(a);
          case Fn::Exp: return exp(a);
          case Fn::Log:
            if (v <= 0.0) domain_error("log of non-positive value", x, arity);
            return log(a);
          case Fn::Sqrt:
            if (v < 0.0) domain_error("sqrt of negative value", x, arity);
            if constexpr (!std::is_same_v<T, double>)
              if (v == 0.0) domain_error("sqrt derivative at zero", x, arity);
            return sqrt(a);
          case Fn::Tanh: return tanh(a);
          case Fn::Atan: return atan(a);
          case Fn::Abs: return abs(a);
        }
        break;
      }
    }
    return T(0.0);
  }
};

}  // namespace

template <class T>
T Expr::eval_n(const T* x) const {
  Evaluator<T> ev{*nodes_, x, arity_};
  T r = ev.run(static_cast<std::int32_t>(nodes_->size() - 1));
  if (!std::isfinite(value_of(r))) domain_error("non-finite result", x, arity_);
  return r;
}

template <class T>
T Expr::eval(const numkit::Pt<T>& x) const {
  if (arity_ > numkit::kMaxDim) {
    T buf[kMaxArity]{};
    for (std::size_t i = 0; i < numkit::kMaxDim; ++i) buf[i] = x[i];
    return eval_n(buf);
  }
  return eval_n(x.data());
}

template double Expr::eval<double>(const numkit::Pt<double>&) const;
template D1 Expr::eval<D1>(const numkit::Pt<D1>&) const;
template D2 Expr::eval<D2>(const numkit::Pt<D2>&) const;
template D3 Expr::eval<D3>(const numkit::Pt<D3>&) const;
template double Expr::eval_n<double>(const double*) const;
template D1 Expr::eval_n<D1>(const D1*) const;
template D2 Expr::eval_n<D2>(const D2*) const;
template D3 Expr::eval_n<D3>(const D3*) const;

}  // namespace sympext::fndsl
