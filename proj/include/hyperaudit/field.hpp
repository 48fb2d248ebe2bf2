#pragma once

// Scalar-field expressions over chart coordinates u1..u{dim}.
//
// Grammar (highest precedence first):
//   primary  := number | "pi" | u<k> | name "(" expr ")" | "(" expr ")"
//   power    := primary [ "^" unary ]          (right associative)
//   unary    := "-" unary | power
//   product  := unary { ("*" | "/") unary }
//   expr     := product { ("+" | "-") product }
// The exponent of "^" must fold to an integer constant. Function names are
// the unary primitives of jet.hpp: sinh cosh tanh coth sin cos tan exp ln sqrt.

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "hyperaudit/jet.hpp"

namespace hyperaudit {

struct FieldNode {
  enum class Kind { Constant, Variable, Unary, Binary, Power };

  Kind kind = Kind::Constant;
  double constant = 0.0;                 // Constant
  bool is_pi = false;                    // Constant spelled "pi"
  int variable = 0;                      // Variable, 1-based
  Primitive op = Primitive::Add;         // Unary (Neg or a function) / Binary
  int exponent = 0;                      // Power, folded from `rhs`
  std::shared_ptr<const FieldNode> lhs;  // operand of Unary/Binary/Power
  std::shared_ptr<const FieldNode> rhs;  // Binary, or the exponent subtree of Power
};

/// Immutable expression tree plus the chart dimension it was parsed for.
class FieldExpr {
 public:
  FieldExpr() = default;
  FieldExpr(std::shared_ptr<const FieldNode> root, int dim);

  static FieldExpr constant(double value, int dim);
  static FieldExpr variable(int index, int dim);

  const FieldNode& root() const { return *root_; }
  const std::shared_ptr<const FieldNode>& root_ptr() const { return root_; }
  int dim() const { return dim_; }
  bool empty() const { return root_ == nullptr; }

  /// True when the tree is a single literal equal to zero.
  bool is_zero_constant() const;

  /// Canonical text form; parsing it back yields a structurally equal tree.
  std::string to_string() const;

  friend bool operator==(const FieldExpr& a, const FieldExpr& b);

 private:
  std::shared_ptr<const FieldNode> root_;
  int dim_ = 0;
};

FieldExpr parse_scalar_field(std::string_view text, int dim);

JetD evaluate_scalar_field(const FieldExpr& expr, std::span<const double> coords);

/// Evaluates against already-seeded coordinate jets.
JetD evaluate_scalar_field(const FieldExpr& expr, std::span<const JetD> coordinate_jets);

// Expression-level builders.
FieldExpr operator+(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator*(const FieldExpr& a, const FieldExpr& b);
FieldExpr apply(Primitive function, const FieldExpr& a);

}  // namespace hyperaudit
