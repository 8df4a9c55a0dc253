#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace kembed {

/// A positive-integer-indexed real sequence with a printable label.
struct Sequence {
  std::function<double(std::uint64_t)> fn;
  std::string label;

  double operator()(std::uint64_t i) const { return fn(i); }
  explicit operator bool() const { return static_cast<bool>(fn); }
};

namespace expr {

struct Node;

/// Compiled closed-form expression in a single variable.
///
/// Grammar (usual precedence, `^` right-associative):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?
///   primary := number | variable | 'pi' | 'e'
///            | func '(' expr ')' | '(' expr ')'
///   func    := log | exp | sqrt | abs
class Expression {
 public:
  double operator()(double x) const;
  const std::string& text() const { return text_; }

 private:
  friend Expression parse(std::string_view text, std::string_view variable);
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Throws Error(invalid_argument) on a syntax error, naming the offset.
Expression parse(std::string_view text, std::string_view variable);

/// Parses `text` in the variable `i` and wraps it as a Sequence.
Sequence sequence(std::string_view text, std::string_view variable = "i");

}  // namespace expr
}  // namespace kembed
