#ifndef FRACDIRAC_COEFF_LANG_HPP
#define FRACDIRAC_COEFF_LANG_HPP

#include <memory>
#include <string>
#include <string_view>

namespace fracdirac {

// Coefficient formulas such as "1/(1+S^2)" or "exp(-S)".
//
// Grammar (whitespace is insignificant):
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' factor)?
//   primary := number | 'S' | 'x' | 'pi' | 'e' | name '(' expr ')' | '(' expr ')'
//
// '^' is right-associative and unary minus binds looser than '^', so -S^2 is
// -(S^2). S is the coefficient argument (the staircase value, or the abscissa
// depending on the problem binding) and x is always the physical abscissa.

enum class ExprOp { Number, VarS, VarX, Pi, E, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class ExprFunction { Sin, Cos, Tan, Exp, Ln, Sqrt, Abs };

struct ExprNode {
  ExprOp op = ExprOp::Number;
  double value = 0.0;                   // Number
  ExprFunction function = ExprFunction::Sin;  // Call
  std::shared_ptr<const ExprNode> lhs;  // Neg, Call and binary operands
  std::shared_ptr<const ExprNode> rhs;  // binary operands
  std::size_t offset = 0;               // byte offset in the source text
};

// Immutable expression tree; copies share nodes.
class CoefficientExpr {
public:
  CoefficientExpr() = default;
  explicit CoefficientExpr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

  const ExprNode& root() const { return *root_; }
  const std::shared_ptr<const ExprNode>& root_ptr() const noexcept { return root_; }
  bool empty() const noexcept { return !root_; }

  // Canonical text; parsing it again gives a structurally identical tree.
  std::string to_string() const;

  friend bool structurally_equal(const CoefficientExpr& l, const CoefficientExpr& r);

private:
  std::shared_ptr<const ExprNode> root_;
};

CoefficientExpr parse_coefficient(std::string_view source);

double eval_coefficient(const CoefficientExpr& expr, double s_value, double x_value);

// d/dS of an expression built from numbers, S, pi, e, + - * /, powers with
// S-free exponents and sin/cos/exp. Anything else raises CapabilityError.
CoefficientExpr differentiate_in_s(const CoefficientExpr& expr);

std::string_view function_name(ExprFunction f);

} // namespace fracdirac

#endif
