#include "kembed/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <variant>

#include "kembed/error.hpp"

namespace kembed::expr {

struct Constant {
  double value;
};
struct Variable {};
struct Unary {
  char op;  // '-', or 'l' log, 'e' exp, 's' sqrt, 'a' abs
  std::shared_ptr<const Node> arg;
};
struct Binary {
  char op;
  std::shared_ptr<const Node> lhs, rhs;
};

struct Node {
  std::variant<Constant, Variable, Unary, Binary> v;
};

namespace {

double eval(const Node& node, double x) {
  return std::visit(
      [x](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return x;
        } else if constexpr (std::is_same_v<T, Unary>) {
          const double a = eval(*n.arg, x);
          switch (n.op) {
            case '-': return -a;
            case 'l': return std::log(a);
            case 'e': return std::exp(a);
            case 's': return std::sqrt(a);
            default: return std::fabs(a);
          }
        } else {
          const double a = eval(*n.lhs, x);
          const double b = eval(*n.rhs, x);
          switch (n.op) {
            case '+': return a + b;
            case '-': return a - b;
            case '*': return a * b;
            case '/': return a / b;
            default: return std::pow(a, b);
          }
        }
      },
      node.v);
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view variable)
      : text_(text), variable_(variable) {}

  std::shared_ptr<const Node> parse_all() {
    auto root = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected character");
    return root;
  }

 private:
  using Ptr = std::shared_ptr<const Node>;

  static Ptr make(auto&& alt) {
    return std::make_shared<const Node>(Node{std::forward<decltype(alt)>(alt)});
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(Errc::invalid_argument, "expression '" + std::string(text_) + "': " +
                                     what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Ptr parse_expr() {
    Ptr lhs = parse_term();
    for (;;) {
      if (accept('+')) lhs = make(Binary{'+', lhs, parse_term()});
      else if (accept('-')) lhs = make(Binary{'-', lhs, parse_term()});
      else return lhs;
    }
  }

  Ptr parse_term() {
    Ptr lhs = parse_unary();
    for (;;) {
      if (accept('*')) lhs = make(Binary{'*', lhs, parse_unary()});
      else if (accept('/')) lhs = make(Binary{'/', lhs, parse_unary()});
      else return lhs;
    }
  }

  Ptr parse_unary() {
    if (accept('-')) return make(Unary{'-', parse_unary()});
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Ptr parse_power() {
    Ptr base = parse_primary();
    if (accept('^')) return make(Binary{'^', base, parse_unary()});
    return base;
  }

  Ptr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      Ptr inner = parse_expr();
      if (!accept(')')) error("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(text_.substr(pos_));
      char* end = nullptr;
      const double value = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) error("malformed number");
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      return make(Constant{value});
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == variable_) return make(Variable{});
      if (word == "pi") return make(Constant{std::numbers::pi});
      if (word == "e") return make(Constant{std::numbers::e});
      char op = 0;
      if (word == "log") op = 'l';
      else if (word == "exp") op = 'e';
      else if (word == "sqrt") op = 's';
      else if (word == "abs") op = 'a';
      if (op == 0) {
        pos_ = start;
        error("unknown identifier '" + std::string(word) + "'");
      }
      if (!accept('(')) error("expected '(' after " + std::string(word));
      Ptr arg = parse_expr();
      if (!accept(')')) error("expected ')'");
      return make(Unary{op, arg});
    }
    error("unexpected character");
  }

  std::string_view text_;
  std::string_view variable_;
  std::size_t pos_ = 0;
};

}  // namespace

double Expression::operator()(double x) const { return eval(*root_, x); }

Expression parse(std::string_view text, std::string_view variable) {
  Expression e;
  e.root_ = Parser(text, variable).parse_all();
  e.text_ = std::string(text);
  return e;
}

Sequence sequence(std::string_view text, std::string_view variable) {
  Expression e = parse(text, variable);
  std::string label = e.text();
  return Sequence{[e = std::move(e)](std::uint64_t i) { return e(static_cast<double>(i)); },
                  std::move(label)};
}

}  // namespace kembed::expr
