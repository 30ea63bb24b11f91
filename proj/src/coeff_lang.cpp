#include "fracdirac/coeff_lang.hpp"

#include "fracdirac/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace fracdirac {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

struct FunctionEntry {
  std::string_view name;
  ExprFunction function;
};

constexpr std::array<FunctionEntry, 7> kFunctions{{
  {"sin", ExprFunction::Sin},
  {"cos", ExprFunction::Cos},
  {"tan", ExprFunction::Tan},
  {"exp", ExprFunction::Exp},
  {"ln", ExprFunction::Ln},
  {"sqrt", ExprFunction::Sqrt},
  {"abs", ExprFunction::Abs},
}};

NodePtr make_leaf(ExprOp op, std::size_t offset, double value = 0.0) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->value = value;
  n->offset = offset;
  return n;
}

NodePtr make_unary(ExprOp op, NodePtr operand, std::size_t offset) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(operand);
  n->offset = offset;
  return n;
}

NodePtr make_binary(ExprOp op, NodePtr l, NodePtr r, std::size_t offset) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  n->offset = offset;
  return n;
}

NodePtr make_call(ExprFunction f, NodePtr arg, std::size_t offset) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::Call;
  n->function = f;
  n->lhs = std::move(arg);
  n->offset = offset;
  return n;
}

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    skip_space();
    if (pos_ == src_.size())
      throw ParseError(pos_, "empty input");
    NodePtr e = expr();
    skip_space();
    if (pos_ != src_.size())
      throw ParseError(pos_, std::string("expected operator or end of input, found '") + src_[pos_] + "'");
    return e;
  }

private:
  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+'))
        lhs = make_binary(ExprOp::Add, lhs, term(), at);
      else if (accept('-'))
        lhs = make_binary(ExprOp::Sub, lhs, term(), at);
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*'))
        lhs = make_binary(ExprOp::Mul, lhs, factor(), at);
      else if (accept('/'))
        lhs = make_binary(ExprOp::Div, lhs, factor(), at);
      else
        return lhs;
    }
  }

  NodePtr factor() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-'))
      return make_unary(ExprOp::Neg, factor(), at);
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    skip_space();
    const std::size_t at = pos_;
    if (accept('^'))
      return make_binary(ExprOp::Pow, base, factor(), at);
    return base;
  }

  NodePtr primary() {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ == src_.size())
      throw ParseError(pos_, "expected expression, found end of input");
    const char c = src_[pos_];
    if (is_digit(c) || c == '.')
      return number();
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')'))
        throw ParseError(pos_, "expected ')' to close '(' at offset " + std::to_string(at));
      return inner;
    }
    if (is_ident_start(c)) {
      std::size_t end = pos_;
      while (end < src_.size() && is_ident_char(src_[end]))
        ++end;
      const std::string_view name = src_.substr(pos_, end - pos_);
      pos_ = end;
      skip_space();
      const bool call = pos_ < src_.size() && src_[pos_] == '(';
      if (!call) {
        if (name == "S")
          return make_leaf(ExprOp::VarS, at);
        if (name == "x")
          return make_leaf(ExprOp::VarX, at);
        if (name == "pi")
          return make_leaf(ExprOp::Pi, at);
        if (name == "e")
          return make_leaf(ExprOp::E, at);
        for (const auto& f : kFunctions)
          if (f.name == name)
            throw ParseError(pos_, "expected '(' after function name '" + std::string(name) + "'");
        throw ParseError(at, "unknown identifier '" + std::string(name) + "'");
      }
      for (const auto& f : kFunctions) {
        if (f.name == name) {
          ++pos_;
          NodePtr arg = expr();
          if (!accept(')'))
            throw ParseError(pos_, "expected ')' after argument of '" + std::string(name) + "'");
          return make_call(f.function, std::move(arg), at);
        }
      }
      throw ParseError(at, "unknown function '" + std::string(name) + "'");
    }
    throw ParseError(at, std::string("expected expression, found '") + c + "'");
  }

  NodePtr number() {
    const std::size_t at = pos_;
    std::size_t end = pos_;
    bool digits = false;
    while (end < src_.size() && is_digit(src_[end])) {
      ++end;
      digits = true;
    }
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      while (end < src_.size() && is_digit(src_[end])) {
        ++end;
        digits = true;
      }
    }
    if (!digits)
      throw ParseError(at, "expected digits in number");
    // An exponent needs at least one digit; otherwise 'e' is left for the
    // caller (and will be rejected as a dangling token).
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t probe = end + 1;
      if (probe < src_.size() && (src_[probe] == '+' || src_[probe] == '-'))
        ++probe;
      if (probe < src_.size() && is_digit(src_[probe])) {
        end = probe;
        while (end < src_.size() && is_digit(src_[end]))
          ++end;
      }
    }
    double value = 0.0;
    const char* first = src_.data() + at;
    const char* last = src_.data() + end;
    // from_chars rejects a leading '.', so parse ".5" as "0.5".
    std::string buffer;
    if (*first == '.') {
      buffer = "0" + std::string(first, last);
      first = buffer.data();
      last = buffer.data() + buffer.size();
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range || !std::isfinite(value))
      throw ParseError(at, "number out of range");
    if (ec != std::errc() || ptr != last)
      throw ParseError(at, "malformed number");
    pos_ = end;
    return make_leaf(ExprOp::Number, at, value);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

int precedence(const ExprNode& n) {
  switch (n.op) {
  case ExprOp::Add:
  case ExprOp::Sub:
    return 1;
  case ExprOp::Mul:
  case ExprOp::Div:
    return 2;
  case ExprOp::Neg:
    return 3;
  case ExprOp::Pow:
    return 4;
  default:
    return 5;
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void render(const ExprNode& n, std::string& out);

void render_child(const ExprNode& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    render(child, out);
    out += ')';
  } else {
    render(child, out);
  }
}

void render(const ExprNode& n, std::string& out) {
  switch (n.op) {
  case ExprOp::Number:
    out += format_number(n.value);
    return;
  case ExprOp::VarS:
    out += 'S';
    return;
  case ExprOp::VarX:
    out += 'x';
    return;
  case ExprOp::Pi:
    out += "pi";
    return;
  case ExprOp::E:
    out += 'e';
    return;
  case ExprOp::Neg:
    out += '-';
    render_child(*n.lhs, 3, out);
    return;
  case ExprOp::Call:
    out += function_name(n.function);
    out += '(';
    render(*n.lhs, out);
    out += ')';
    return;
  case ExprOp::Pow:
    render_child(*n.lhs, 5, out);
    out += '^';
    render_child(*n.rhs, 3, out);
    return;
  default:
    break;
  }
  const int prec = precedence(n);
  const char* sym = n.op == ExprOp::Add ? " + " : n.op == ExprOp::Sub ? " - " : n.op == ExprOp::Mul ? "*" : "/";
  render_child(*n.lhs, prec, out);
  out += sym;
  render_child(*n.rhs, prec + 1, out);
}

bool equal_nodes(const ExprNode& l, const ExprNode& r) {
  if (l.op != r.op)
    return false;
  switch (l.op) {
  case ExprOp::Number:
    return l.value == r.value;
  case ExprOp::Call:
    return l.function == r.function && equal_nodes(*l.lhs, *r.lhs);
  case ExprOp::Neg:
    return equal_nodes(*l.lhs, *r.lhs);
  case ExprOp::Add:
  case ExprOp::Sub:
  case ExprOp::Mul:
  case ExprOp::Div:
  case ExprOp::Pow:
    return equal_nodes(*l.lhs, *r.lhs) && equal_nodes(*l.rhs, *r.rhs);
  default:
    return true;
  }
}

[[noreturn]] void eval_fail(const ExprNode& n, const std::string& what) {
  std::string text;
  render(n, text);
  throw EvaluationError(what + " in '" + text + "' at offset " + std::to_string(n.offset));
}

double eval_node(const ExprNode& n, double s, double x) {
  double v = 0.0;
  switch (n.op) {
  case ExprOp::Number:
    return n.value;
  case ExprOp::VarS:
    return s;
  case ExprOp::VarX:
    return x;
  case ExprOp::Pi:
    return std::numbers::pi;
  case ExprOp::E:
    return std::numbers::e;
  case ExprOp::Neg:
    return -eval_node(*n.lhs, s, x);
  case ExprOp::Add:
    v = eval_node(*n.lhs, s, x) + eval_node(*n.rhs, s, x);
    break;
  case ExprOp::Sub:
    v = eval_node(*n.lhs, s, x) - eval_node(*n.rhs, s, x);
    break;
  case ExprOp::Mul:
    v = eval_node(*n.lhs, s, x) * eval_node(*n.rhs, s, x);
    break;
  case ExprOp::Div: {
    const double num = eval_node(*n.lhs, s, x);
    const double den = eval_node(*n.rhs, s, x);
    if (den == 0.0)
      eval_fail(n, "division by zero");
    v = num / den;
    break;
  }
  case ExprOp::Pow:
    v = std::pow(eval_node(*n.lhs, s, x), eval_node(*n.rhs, s, x));
    break;
  case ExprOp::Call: {
    const double arg = eval_node(*n.lhs, s, x);
    switch (n.function) {
    case ExprFunction::Sin:
      v = std::sin(arg);
      break;
    case ExprFunction::Cos:
      v = std::cos(arg);
      break;
    case ExprFunction::Tan:
      v = std::tan(arg);
      break;
    case ExprFunction::Exp:
      v = std::exp(arg);
      break;
    case ExprFunction::Ln:
      if (!(arg > 0.0))
        eval_fail(n, "logarithm of non-positive value " + format_number(arg));
      v = std::log(arg);
      break;
    case ExprFunction::Sqrt:
      if (arg < 0.0)
        eval_fail(n, "square root of negative value " + format_number(arg));
      v = std::sqrt(arg);
      break;
    case ExprFunction::Abs:
      v = std::fabs(arg);
      break;
    }
    break;
  }
  }
  if (!std::isfinite(v))
    eval_fail(n, "non-finite result");
  return v;
}

// Differentiation helpers. Constant folding is kept to the obvious zero/one
// cases so the derivative trees stay small.
bool depends_on(const ExprNode& n, ExprOp var) {
  if (n.op == var)
    return true;
  return (n.lhs && depends_on(*n.lhs, var)) || (n.rhs && depends_on(*n.rhs, var));
}

bool is_number(const NodePtr& n, double v) { return n->op == ExprOp::Number && n->value == v; }

NodePtr num(double v) { return make_leaf(ExprOp::Number, 0, v); }

NodePtr add(NodePtr l, NodePtr r) {
  if (is_number(l, 0.0))
    return r;
  if (is_number(r, 0.0))
    return l;
  return make_binary(ExprOp::Add, std::move(l), std::move(r), 0);
}

NodePtr sub(NodePtr l, NodePtr r) {
  if (is_number(r, 0.0))
    return l;
  if (is_number(l, 0.0))
    return make_unary(ExprOp::Neg, std::move(r), 0);
  return make_binary(ExprOp::Sub, std::move(l), std::move(r), 0);
}

NodePtr mul(NodePtr l, NodePtr r) {
  if (is_number(l, 0.0) || is_number(r, 0.0))
    return num(0.0);
  if (is_number(l, 1.0))
    return r;
  if (is_number(r, 1.0))
    return l;
  return make_binary(ExprOp::Mul, std::move(l), std::move(r), 0);
}

NodePtr derive(const NodePtr& n) {
  if (depends_on(*n, ExprOp::VarX))
    throw CapabilityError("cannot differentiate an expression that uses x in the staircase coordinate");
  if (!depends_on(*n, ExprOp::VarS))
    return num(0.0);
  switch (n->op) {
  case ExprOp::VarS:
    return num(1.0);
  case ExprOp::Neg: {
    NodePtr d = derive(n->lhs);
    return is_number(d, 0.0) ? d : make_unary(ExprOp::Neg, d, 0);
  }
  case ExprOp::Add:
    return add(derive(n->lhs), derive(n->rhs));
  case ExprOp::Sub:
    return sub(derive(n->lhs), derive(n->rhs));
  case ExprOp::Mul:
    return add(mul(derive(n->lhs), n->rhs), mul(n->lhs, derive(n->rhs)));
  case ExprOp::Div: {
    // (u'v - uv') / v^2
    NodePtr numer = sub(mul(derive(n->lhs), n->rhs), mul(n->lhs, derive(n->rhs)));
    return make_binary(ExprOp::Div, numer, make_binary(ExprOp::Pow, n->rhs, num(2.0), 0), 0);
  }
  case ExprOp::Pow: {
    if (depends_on(*n->rhs, ExprOp::VarS))
      throw CapabilityError("cannot differentiate a power whose exponent depends on S");
    NodePtr reduced = n->rhs->op == ExprOp::Number ? num(n->rhs->value - 1.0)
                                                   : make_binary(ExprOp::Sub, n->rhs, num(1.0), 0);
    NodePtr outer = mul(n->rhs, make_binary(ExprOp::Pow, n->lhs, reduced, 0));
    return mul(outer, derive(n->lhs));
  }
  case ExprOp::Call: {
    NodePtr inner = derive(n->lhs);
    switch (n->function) {
    case ExprFunction::Sin:
      return mul(make_call(ExprFunction::Cos, n->lhs, 0), inner);
    case ExprFunction::Cos:
      return mul(make_unary(ExprOp::Neg, make_call(ExprFunction::Sin, n->lhs, 0), 0), inner);
    case ExprFunction::Exp:
      return mul(n, inner);
    default:
      throw CapabilityError("no differentiation rule for " + std::string(function_name(n->function)) + "()");
    }
  }
  default:
    throw CapabilityError("no differentiation rule for this node");
  }
}

} // namespace

std::string_view function_name(ExprFunction f) {
  for (const auto& entry : kFunctions)
    if (entry.function == f)
      return entry.name;
  return "?";
}

std::string CoefficientExpr::to_string() const {
  std::string out;
  if (root_)
    render(*root_, out);
  return out;
}

bool structurally_equal(const CoefficientExpr& l, const CoefficientExpr& r) {
  if (!l.root_ || !r.root_)
    return !l.root_ && !r.root_;
  return equal_nodes(*l.root_, *r.root_);
}

CoefficientExpr parse_coefficient(std::string_view source) {
  return CoefficientExpr(Parser(source).parse());
}

double eval_coefficient(const CoefficientExpr& expr, double s_value, double x_value) {
  if (expr.empty())
    throw ArgumentError("evaluating an empty expression");
  return eval_node(expr.root(), s_value, x_value);
}

CoefficientExpr differentiate_in_s(const CoefficientExpr& expr) {
  if (expr.empty())
    throw ArgumentError("differentiating an empty expression");
  return CoefficientExpr(derive(expr.root_ptr()));
}

} // namespace fracdirac
