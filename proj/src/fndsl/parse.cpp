#include <cctype>
#include <charconv>
#include <cstdio>
#include <utility>

#include "sympext/error.hpp"
#include "sympext/fndsl/expr.hpp"

namespace sympext::fndsl {

namespace {

struct FnName {
  std::string_view name;
  Fn fn;
};

constexpr FnName kFunctions[] = {
    {"sin", Fn::Sin},   {"cos", Fn::Cos},   {"tan", Fn::Tan},   {"exp", Fn::Exp},  {"log", Fn::Log},
    {"sqrt", Fn::Sqrt}, {"tanh", Fn::Tanh}, {"atan", Fn::Atan}, {"abs", Fn::Abs},
};

std::string_view fn_name(Fn fn) {
  for (const auto& f : kFunctions)
    if (f.fn == fn) return f.name;
  return "?";
}

}  // namespace

class Parser {
 public:
  Parser(std::string_view text, std::size_t arity) : text_(text), arity_(arity) {}

  Expr run() {
    if (arity_ > kMaxArity)
      throw Error(ErrorKind::ArityExceeded, "arity " + std::to_string(arity_) + " exceeds " +
                                                std::to_string(kMaxArity));
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "empty expression");
    expr();
    skip_ws();
    if (pos_ < text_.size()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    Expr e;
    e.nodes_ = std::make_shared<const std::vector<Node>>(std::move(nodes_));
    e.arity_ = arity_;
    e.max_var_ = max_var_;
    e.source_ = std::string(text_);
    return e;
  }

 private:
  std::string_view text_;
  std::size_t arity_;
  std::size_t pos_ = 0;
  std::size_t max_var_ = 0;
  std::vector<Node> nodes_;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::int32_t push(Node n) {
    nodes_.push_back(n);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }
  std::int32_t binary(Op op, std::int32_t l, std::int32_t r) {
    Node n;
    n.op = op;
    n.lhs = l;
    n.rhs = r;
    return push(n);
  }

  std::int32_t expr() {
    std::int32_t acc = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      acc = binary(c == '+' ? Op::Add : Op::Sub, acc, term());
    }
    return acc;
  }
  std::int32_t term() {
    std::int32_t acc = factor();
    for (char c = peek(); c == '*' || c == '/'; c = peek()) {
      ++pos_;
      acc = binary(c == '*' ? Op::Mul : Op::Div, acc, factor());
    }
    return acc;
  }
  std::int32_t factor() {
    if (peek() == '-') {
      ++pos_;
      Node n;
      n.op = Op::Neg;
      n.lhs = power();
      return push(n);
    }
    return power();
  }
  std::int32_t power() {
    std::int32_t base = atom();
    if (peek() == '^') {
      ++pos_;
      return binary(Op::Pow, base, factor());
    }
    return base;
  }
  std::int32_t atom() {
    const char c = peek();
    if (c == '\0') throw SyntaxError(pos_, "unexpected end of input");
    if (c == '(') {
      ++pos_;
      std::int32_t inner = expr();
      if (peek() != ')') throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }
  std::int32_t number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        digits();
      else
        pos_ = save;  // not an exponent, e.g. "2e" followed by an identifier
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw SyntaxError(start, "malformed number");
    Node n;
    n.op = Op::Num;
    n.value = value;
    return push(n);
  }
  std::int32_t identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    for (const auto& f : kFunctions) {
      if (f.name != name) continue;
      if (peek() != '(') throw SyntaxError(pos_, "function '" + std::string(name) + "' needs '('");
      ++pos_;
      Node n;
      n.op = Op::Call;
      n.fn = f.fn;
      n.lhs = expr();
      if (peek() != ')') throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return push(n);
    }
    if (name == "pi") {
      Node n;
      n.op = Op::Num;
      n.value = numkit::kPi;
      return push(n);
    }
    std::size_t index = 0;
    if (name == "x") index = 1;
    else if (name == "y") index = 2;
    else if (name == "z") index = 3;
    else if (name == "t") index = 4;
    else if (name.size() >= 2 && name[0] == 'x') {
      std::size_t k = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
      if (ec == std::errc() && ptr == name.data() + name.size() && k >= 1) index = k;
    }
    if (index == 0)
      throw Error(ErrorKind::UnknownIdentifier,
                  "'" + std::string(name) + "' at offset " + std::to_string(start));
    if (index > arity_)
      throw Error(ErrorKind::ArityExceeded, "'" + std::string(name) + "' at offset " +
                                                std::to_string(start) + " exceeds arity " +
                                                std::to_string(arity_));
    max_var_ = std::max(max_var_, index);
    Node n;
    n.op = Op::Var;
    n.var = index - 1;
    return push(n);
  }
};

Expr Expr::parse(std::string_view text, std::size_t arity) { return Parser(text, arity).run(); }

namespace {

void print(const std::vector<Node>& nodes, std::int32_t i, std::string& out) {
  const Node& n = nodes[static_cast<std::size_t>(i)];
  auto bin = [&](const char* op) {
    out += '(';
    print(nodes, n.lhs, out);
    out += op;
    print(nodes, n.rhs, out);
    out += ')';
  };
  switch (n.op) {
    case Op::Num: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      break;
    }
    case Op::Var: out += "x" + std::to_string(n.var + 1); break;
    case Op::Neg:
      out += "(-";
      print(nodes, n.lhs, out);
      out += ')';
      break;
    case Op::Add: bin(" + "); break;
    case Op::Sub: bin(" - "); break;
    case Op::Mul: bin("*"); break;
    case Op::Div: bin("/"); break;
    case Op::Pow: bin("^"); break;
    case Op::Call:
      out += fn_name(n.fn);
      out += '(';
      print(nodes, n.lhs, out);
      out += ')';
      break;
  }
}

}  // namespace

std::string Expr::to_string() const {
  std::string out;
  print(*nodes_, static_cast<std::int32_t>(nodes_->size() - 1), out);
  return out;
}

}  // namespace sympext::fndsl
