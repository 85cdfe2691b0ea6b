#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sympext/numkit/types.hpp"

namespace sympext::fndsl {

enum class Op : std::uint8_t { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Fn : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sqrt, Tanh, Atan, Abs };

struct Node {
  Op op = Op::Num;
  Fn fn = Fn::Sin;
  double value = 0.0;      // Num
  std::size_t var = 0;     // Var, 0-based
  std::int32_t lhs = -1;   // first child
  std::int32_t rhs = -1;   // second child
};

/// Largest arity the parser accepts (aliases x, y, z, t).
inline constexpr std::size_t kMaxArity = 4;

/// Immutable parsed expression. Nodes live in a flat arena with children
/// stored before their parents; the last node is the root.
class Expr {
 public:
  /// Grammar: expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
  /// factor := ('-')? power ; power := atom ('^' factor)? ;
  /// atom := number | ident | ident '(' expr ')' | '(' expr ')'.
  static Expr parse(std::string_view text, std::size_t arity);

  std::size_t arity() const { return arity_; }
  /// Highest variable index actually referenced (1-based, 0 if none).
  std::size_t max_var() const { return max_var_; }
  const std::string& source() const { return source_; }

  /// Fully parenthesized text that re-parses to an equivalent tree.
  std::string to_string() const;

  /// Evaluates at a point; throws EvalDomain outside the natural domain.
  template <class T>
  T eval(const numkit::Pt<T>& x) const;

  /// Evaluates with up to kMaxArity coordinates (used when arity is 4).
  template <class T>
  T eval_n(const T* x) const;

 private:
  Expr() = default;

  std::shared_ptr<const std::vector<Node>> nodes_;
  std::size_t arity_ = 0;
  std::size_t max_var_ = 0;
  std::string source_;

  friend class Parser;
};

}  // namespace sympext::fndsl
