#include "hyperaudit/field.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hyperaudit {

namespace {

using NodePtr = std::shared_ptr<const FieldNode>;

constexpr std::array<std::pair<std::string_view, Primitive>, 10> kFunctions{{
    {"sinh", Primitive::Sinh},
    {"cosh", Primitive::Cosh},
    {"tanh", Primitive::Tanh},
    {"coth", Primitive::Coth},
    {"sin", Primitive::Sin},
    {"cos", Primitive::Cos},
    {"tan", Primitive::Tan},
    {"exp", Primitive::Exp},
    {"ln", Primitive::Ln},
    {"sqrt", Primitive::Sqrt},
}};

NodePtr make_constant(double v, bool is_pi = false) {
  auto n = std::make_shared<FieldNode>();
  n->kind = FieldNode::Kind::Constant;
  n->constant = v;
  n->is_pi = is_pi;
  return n;
}

NodePtr make_variable(int index) {
  auto n = std::make_shared<FieldNode>();
  n->kind = FieldNode::Kind::Variable;
  n->variable = index;
  return n;
}

NodePtr make_unary(Primitive op, NodePtr a) {
  auto n = std::make_shared<FieldNode>();
  n->kind = FieldNode::Kind::Unary;
  n->op = op;
  n->lhs = std::move(a);
  return n;
}

NodePtr make_binary(Primitive op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<FieldNode>();
  n->kind = FieldNode::Kind::Binary;
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

// Folds a variable-free subtree to a number; nullopt if it references a
// coordinate or is undefined.
std::optional<double> fold_constant(const FieldNode& n) {
  switch (n.kind) {
    case FieldNode::Kind::Constant:
      return n.constant;
    case FieldNode::Kind::Variable:
      return std::nullopt;
    case FieldNode::Kind::Power: {
      auto base = fold_constant(*n.lhs);
      if (!base) return std::nullopt;
      return std::pow(*base, n.exponent);
    }
    case FieldNode::Kind::Unary: {
      auto a = fold_constant(*n.lhs);
      if (!a) return std::nullopt;
      try {
        const JetD arg = JetD::constant(*a, 1);
        return evaluate_primitive<double>(n.op, std::span(&arg, 1)).value;
      } catch (const DomainError&) {
        return std::nullopt;
      }
    }
    case FieldNode::Kind::Binary: {
      auto a = fold_constant(*n.lhs);
      auto b = fold_constant(*n.rhs);
      if (!a || !b) return std::nullopt;
      switch (n.op) {
        case Primitive::Add: return *a + *b;
        case Primitive::Sub: return *a - *b;
        case Primitive::Mul: return *a * *b;
        case Primitive::Div:
          if (*b == 0.0) return std::nullopt;
          return *a / *b;
        default: return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view text, int dim) : text_(text), dim_(dim) {}

  NodePtr parse() {
    skip_space();
    if (at_end()) fail(ParseError::Kind::Syntax, "empty expression");
    NodePtr root = parse_sum();
    skip_space();
    if (!at_end()) fail(ParseError::Kind::Syntax, std::string("unexpected '") + peek() + "'");
    return root;
  }

 private:
  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      skip_space();
      if (match('+')) {
        lhs = make_binary(Primitive::Add, lhs, parse_product());
      } else if (match('-')) {
        lhs = make_binary(Primitive::Sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      skip_space();
      if (match('*')) {
        lhs = make_binary(Primitive::Mul, lhs, parse_unary());
      } else if (match('/')) {
        lhs = make_binary(Primitive::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_space();
    if (match('-')) return make_unary(Primitive::Neg, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    skip_space();
    if (!match('^')) return base;
    skip_space();
    const std::size_t exponent_pos = pos_;
    NodePtr exponent = parse_unary();
    auto folded = fold_constant(*exponent);
    if (!folded || !std::isfinite(*folded) || std::nearbyint(*folded) != *folded ||
        std::abs(*folded) > 1024.0) {
      throw ParseError(ParseError::Kind::NonIntegerExponent, exponent_pos,
                       "exponent must be an integer constant");
    }
    auto n = std::make_shared<FieldNode>();
    n->kind = FieldNode::Kind::Power;
    n->lhs = std::move(base);
    n->rhs = std::move(exponent);
    n->exponent = static_cast<int>(*folded);
    return n;
  }

  NodePtr parse_primary() {
    skip_space();
    if (at_end()) fail(ParseError::Kind::Syntax, "unexpected end of input");
    const char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_sum();
      skip_space();
      if (!match(')')) fail(ParseError::Kind::Syntax, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail(ParseError::Kind::Syntax, std::string("unexpected '") + c + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      pos_ = start;
      fail(ParseError::Kind::Syntax, "malformed number");
    }
    return make_constant(value);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name == "pi") return make_constant(std::numbers::pi, true);

    if (name.size() > 1 && name[0] == 'u' &&
        name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      int index = 0;
      std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (index < 1 || index > dim_) {
        throw ParseError(ParseError::Kind::VariableOutOfRange, start,
                         "variable '" + std::string(name) + "' outside u1..u" +
                             std::to_string(dim_));
      }
      return make_variable(index);
    }

    for (const auto& [fname, op] : kFunctions) {
      if (fname == name) {
        skip_space();
        if (!match('(')) fail(ParseError::Kind::Syntax, "expected '(' after " + std::string(name));
        NodePtr arg = parse_sum();
        skip_space();
        if (!match(')')) fail(ParseError::Kind::Syntax, "expected ')'");
        return make_unary(op, std::move(arg));
      }
    }
    throw ParseError(ParseError::Kind::UnknownIdentifier, start,
                     "unknown identifier '" + std::string(name) + "'");
  }

  [[noreturn]] void fail(ParseError::Kind kind, const std::string& message) const {
    throw ParseError(kind, pos_, message);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool match(char c) {
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view text_;
  int dim_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  std::string s(buf.data(), ptr);
  return v < 0 ? "(" + s + ")" : s;
}

void print(const FieldNode& n, std::string& out) {
  switch (n.kind) {
    case FieldNode::Kind::Constant:
      out += n.is_pi ? "pi" : format_number(n.constant);
      return;
    case FieldNode::Kind::Variable:
      out += "u" + std::to_string(n.variable);
      return;
    case FieldNode::Kind::Power:
      out += "(";
      print(*n.lhs, out);
      out += "^";
      print(*n.rhs, out);
      out += ")";
      return;
    case FieldNode::Kind::Unary:
      if (n.op == Primitive::Neg) {
        out += "(-";
        print(*n.lhs, out);
        out += ")";
      } else {
        out += primitive_name(n.op);
        out += "(";
        print(*n.lhs, out);
        out += ")";
      }
      return;
    case FieldNode::Kind::Binary: {
      const char* sym = n.op == Primitive::Add   ? " + "
                        : n.op == Primitive::Sub ? " - "
                        : n.op == Primitive::Mul ? " * "
                                                 : " / ";
      out += "(";
      print(*n.lhs, out);
      out += sym;
      print(*n.rhs, out);
      out += ")";
      return;
    }
  }
}

bool equal(const FieldNode& a, const FieldNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case FieldNode::Kind::Constant:
      return a.constant == b.constant;
    case FieldNode::Kind::Variable:
      return a.variable == b.variable;
    case FieldNode::Kind::Power:
      return a.exponent == b.exponent && equal(*a.lhs, *b.lhs);
    case FieldNode::Kind::Unary:
      return a.op == b.op && equal(*a.lhs, *b.lhs);
    case FieldNode::Kind::Binary:
      return a.op == b.op && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
  return false;
}

JetD eval(const NodePtr& node, std::span<const JetD> vars) {
  const FieldNode& n = *node;
  const auto dim = vars.front().dim();
  try {
    switch (n.kind) {
      case FieldNode::Kind::Constant:
        return JetD::constant(n.constant, dim);
      case FieldNode::Kind::Variable:
        return vars[static_cast<std::size_t>(n.variable - 1)];
      case FieldNode::Kind::Power:
        return pow_int(eval(n.lhs, vars), n.exponent);
      case FieldNode::Kind::Unary: {
        const JetD a = eval(n.lhs, vars);
        return evaluate_primitive<double>(n.op, std::span(&a, 1));
      }
      case FieldNode::Kind::Binary: {
        const std::array<JetD, 2> args{eval(n.lhs, vars), eval(n.rhs, vars)};
        return evaluate_primitive<double>(n.op, std::span<const JetD>(args));
      }
    }
  } catch (const DomainError& e) {
    if (!e.subexpression().empty()) throw;
    std::string text;
    print(n, text);
    throw e.with_subexpression(text);
  }
  throw std::logic_error("unreachable field node kind");
}

}  // namespace

FieldExpr::FieldExpr(std::shared_ptr<const FieldNode> root, int dim)
    : root_(std::move(root)), dim_(dim) {}

FieldExpr FieldExpr::constant(double value, int dim) { return FieldExpr(make_constant(value), dim); }

FieldExpr FieldExpr::variable(int index, int dim) {
  if (index < 1 || index > dim) throw std::invalid_argument("FieldExpr::variable: index out of range");
  return FieldExpr(make_variable(index), dim);
}

bool FieldExpr::is_zero_constant() const {
  return root_ && root_->kind == FieldNode::Kind::Constant && root_->constant == 0.0;
}

std::string FieldExpr::to_string() const {
  std::string out;
  if (root_) print(*root_, out);
  return out;
}

bool operator==(const FieldExpr& a, const FieldExpr& b) {
  if (a.dim_ != b.dim_) return false;
  if (!a.root_ || !b.root_) return a.root_ == b.root_;
  return equal(*a.root_, *b.root_);
}

FieldExpr parse_scalar_field(std::string_view text, int dim) {
  if (dim < 1) throw std::invalid_argument("parse_scalar_field: dimension must be positive");
  return FieldExpr(Parser(text, dim).parse(), dim);
}

JetD evaluate_scalar_field(const FieldExpr& expr, std::span<const JetD> coordinate_jets) {
  if (expr.empty()) throw std::invalid_argument("evaluate_scalar_field: empty expression");
  if (static_cast<int>(coordinate_jets.size()) != expr.dim())
    throw std::invalid_argument("evaluate_scalar_field: coordinate count does not match dimension");
  return eval(expr.root_ptr(), coordinate_jets);
}

JetD evaluate_scalar_field(const FieldExpr& expr, std::span<const double> coords) {
  const auto jets = seed_coordinates(coords);
  return evaluate_scalar_field(expr, std::span<const JetD>(jets));
}

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("field dimension mismatch");
  return FieldExpr(make_binary(Primitive::Add, a.root_ptr(), b.root_ptr()), a.dim());
}

FieldExpr operator*(const FieldExpr& a, const FieldExpr& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("field dimension mismatch");
  return FieldExpr(make_binary(Primitive::Mul, a.root_ptr(), b.root_ptr()), a.dim());
}

FieldExpr apply(Primitive function, const FieldExpr& a) {
  switch (function) {
    case Primitive::Add:
    case Primitive::Sub:
    case Primitive::Mul:
    case Primitive::Div:
    case Primitive::PowInt:
      throw std::invalid_argument("apply: not a unary primitive");
    default:
      return FieldExpr(make_unary(function, a.root_ptr()), a.dim());
  }
}

}  // namespace hyperaudit
