#pragma once

// Second-order forward-mode differentiation.
//
// A Jet carries the value, gradient and (dense, symmetric) Hessian of a
// scalar field with respect to the chart coordinates. Every primitive
// propagates both derivative orders by the chain rule, so metric second
// derivatives, and therefore curvature, are exact to rounding.

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hyperaudit/errors.hpp"

namespace hyperaudit {

enum class Primitive {
  Add, Sub, Mul, Div, Neg, PowInt,
  Sinh, Cosh, Tanh, Coth, Sin, Cos, Tan, Exp, Ln, Sqrt
};

inline std::string_view primitive_name(Primitive kind);

template <typename Scalar>
struct Jet {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Scalar value{};
  Vector grad;
  Matrix hess;

  static Jet constant(Scalar v, Eigen::Index dim) {
    return Jet{v, Vector::Zero(dim), Matrix::Zero(dim, dim)};
  }

  static Jet variable(Scalar v, Eigen::Index k, Eigen::Index dim) {
    Jet out = constant(v, dim);
    out.grad(k) = Scalar(1);
    return out;
  }

  Eigen::Index dim() const { return grad.size(); }
};

namespace detail {

// Copies the upper triangle over the lower one so symmetry is structural
// rather than a property of the floating-point evaluation order.
template <typename Scalar>
void mirror_upper(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& h) {
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = i + 1; j < h.cols(); ++j) h(j, i) = h(i, j);
}

// f(x) with f' = d1 and f'' = d2 at x.value.
template <typename Scalar>
Jet<Scalar> chain(const Jet<Scalar>& x, Scalar f0, Scalar d1, Scalar d2) {
  Jet<Scalar> out;
  out.value = f0;
  out.grad = d1 * x.grad;
  out.hess = d1 * x.hess + d2 * (x.grad * x.grad.transpose());
  mirror_upper(out.hess);
  return out;
}

template <typename Scalar>
void require_same_dim(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("jet dimension mismatch");
}

}  // namespace detail

template <typename Scalar>
Jet<Scalar> operator+(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  detail::require_same_dim(a, b);
  return Jet<Scalar>{a.value + b.value, a.grad + b.grad, a.hess + b.hess};
}

template <typename Scalar>
Jet<Scalar> operator-(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  detail::require_same_dim(a, b);
  return Jet<Scalar>{a.value - b.value, a.grad - b.grad, a.hess - b.hess};
}

template <typename Scalar>
Jet<Scalar> operator-(const Jet<Scalar>& a) {
  return Jet<Scalar>{-a.value, -a.grad, -a.hess};
}

template <typename Scalar>
Jet<Scalar> operator*(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  detail::require_same_dim(a, b);
  Jet<Scalar> out;
  out.value = a.value * b.value;
  out.grad = b.value * a.grad + a.value * b.grad;
  out.hess = b.value * a.hess + a.value * b.hess + a.grad * b.grad.transpose() +
             b.grad * a.grad.transpose();
  detail::mirror_upper(out.hess);
  return out;
}

template <typename Scalar>
Jet<Scalar> operator*(Scalar s, const Jet<Scalar>& a) {
  return Jet<Scalar>{s * a.value, s * a.grad, s * a.hess};
}

template <typename Scalar>
Jet<Scalar> reciprocal(const Jet<Scalar>& x) {
  if (x.value == Scalar(0)) throw DomainError("div", 0.0);
  const Scalar r = Scalar(1) / x.value;
  return detail::chain(x, r, -r * r, Scalar(2) * r * r * r);
}

template <typename Scalar>
Jet<Scalar> operator/(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  detail::require_same_dim(a, b);
  return a * reciprocal(b);
}

template <typename Scalar>
Jet<Scalar> pow_int(const Jet<Scalar>& x, int k) {
  using std::pow;
  if (k == 0) return Jet<Scalar>::constant(Scalar(1), x.dim());
  if (k < 0 && x.value == Scalar(0)) throw DomainError("pow", 0.0);
  const Scalar v = x.value;
  const Scalar f0 = pow(v, k);
  const Scalar d1 = Scalar(k) * pow(v, k - 1);
  const Scalar d2 = (k == 1) ? Scalar(0) : Scalar(k) * Scalar(k - 1) * pow(v, k - 2);
  return detail::chain(x, f0, d1, d2);
}

template <typename Scalar>
Jet<Scalar> sinh(const Jet<Scalar>& x) {
  using std::cosh;
  using std::sinh;
  const Scalar s = sinh(x.value), c = cosh(x.value);
  return detail::chain(x, s, c, s);
}

template <typename Scalar>
Jet<Scalar> cosh(const Jet<Scalar>& x) {
  using std::cosh;
  using std::sinh;
  const Scalar s = sinh(x.value), c = cosh(x.value);
  return detail::chain(x, c, s, c);
}

template <typename Scalar>
Jet<Scalar> tanh(const Jet<Scalar>& x) {
  using std::tanh;
  const Scalar t = tanh(x.value);
  const Scalar d1 = Scalar(1) - t * t;
  return detail::chain(x, t, d1, Scalar(-2) * t * d1);
}

template <typename Scalar>
Jet<Scalar> coth(const Jet<Scalar>& x) {
  using std::tanh;
  if (x.value == Scalar(0)) throw DomainError("coth", 0.0);
  const Scalar c = Scalar(1) / tanh(x.value);
  const Scalar d1 = Scalar(1) - c * c;
  return detail::chain(x, c, d1, Scalar(-2) * c * d1);
}

template <typename Scalar>
Jet<Scalar> sin(const Jet<Scalar>& x) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(x.value), c = cos(x.value);
  return detail::chain(x, s, c, -s);
}

template <typename Scalar>
Jet<Scalar> cos(const Jet<Scalar>& x) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(x.value), c = cos(x.value);
  return detail::chain(x, c, -s, -c);
}

template <typename Scalar>
Jet<Scalar> tan(const Jet<Scalar>& x) {
  using std::abs;
  using std::cos;
  using std::tan;
  // Odd multiples of pi/2 are never hit exactly in floating point.
  if (abs(cos(x.value)) < Scalar(1e-12)) throw DomainError("tan", static_cast<double>(x.value));
  const Scalar t = tan(x.value);
  const Scalar d1 = Scalar(1) + t * t;
  return detail::chain(x, t, d1, Scalar(2) * t * d1);
}

template <typename Scalar>
Jet<Scalar> exp(const Jet<Scalar>& x) {
  using std::exp;
  const Scalar e = exp(x.value);
  return detail::chain(x, e, e, e);
}

template <typename Scalar>
Jet<Scalar> ln(const Jet<Scalar>& x) {
  using std::log;
  if (!(x.value > Scalar(0))) throw DomainError("ln", static_cast<double>(x.value));
  const Scalar r = Scalar(1) / x.value;
  return detail::chain(x, log(x.value), r, -r * r);
}

template <typename Scalar>
Jet<Scalar> sqrt(const Jet<Scalar>& x) {
  using std::sqrt;
  // The derivative is unbounded at 0, so the domain is open.
  if (!(x.value > Scalar(0))) throw DomainError("sqrt", static_cast<double>(x.value));
  const Scalar s = sqrt(x.value);
  return detail::chain(x, s, Scalar(0.5) / s, Scalar(-0.25) / (s * x.value));
}

/// Seeds one jet per coordinate: value coords[k], gradient e_k, zero Hessian.
template <typename Scalar>
std::vector<Jet<Scalar>> seed_coordinates(std::span<const Scalar> coords) {
  using std::isfinite;
  if (coords.empty()) throw std::invalid_argument("seed_coordinates: dimension zero");
  const auto dim = static_cast<Eigen::Index>(coords.size());
  std::vector<Jet<Scalar>> jets;
  jets.reserve(coords.size());
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (!isfinite(coords[k])) throw std::invalid_argument("seed_coordinates: non-finite coordinate");
    jets.push_back(Jet<Scalar>::variable(coords[k], k, dim));
  }
  return jets;
}

/// Applies `kind` to `args`. PowInt reads its integer exponent from
/// `exponent`; every other primitive ignores it.
template <typename Scalar>
Jet<Scalar> evaluate_primitive(Primitive kind, std::span<const Jet<Scalar>> args, int exponent = 0) {
  const std::size_t arity =
      (kind == Primitive::Add || kind == Primitive::Sub || kind == Primitive::Mul ||
       kind == Primitive::Div)
          ? 2
          : 1;
  if (args.size() != arity)
    throw std::invalid_argument("evaluate_primitive: wrong argument count for " +
                                std::string(primitive_name(kind)));
  const auto& a = args[0];
  switch (kind) {
    case Primitive::Add: return a + args[1];
    case Primitive::Sub: return a - args[1];
    case Primitive::Mul: return a * args[1];
    case Primitive::Div: return a / args[1];
    case Primitive::Neg: return -a;
    case Primitive::PowInt: return pow_int(a, exponent);
    case Primitive::Sinh: return sinh(a);
    case Primitive::Cosh: return cosh(a);
    case Primitive::Tanh: return tanh(a);
    case Primitive::Coth: return coth(a);
    case Primitive::Sin: return sin(a);
    case Primitive::Cos: return cos(a);
    case Primitive::Tan: return tan(a);
    case Primitive::Exp: return exp(a);
    case Primitive::Ln: return ln(a);
    case Primitive::Sqrt: return sqrt(a);
  }
  throw std::invalid_argument("evaluate_primitive: unknown primitive");
}

inline std::string_view primitive_name(Primitive kind) {
  switch (kind) {
    case Primitive::Add: return "add";
    case Primitive::Sub: return "sub";
    case Primitive::Mul: return "mul";
    case Primitive::Div: return "div";
    case Primitive::Neg: return "neg";
    case Primitive::PowInt: return "pow";
    case Primitive::Sinh: return "sinh";
    case Primitive::Cosh: return "cosh";
    case Primitive::Tanh: return "tanh";
    case Primitive::Coth: return "coth";
    case Primitive::Sin: return "sin";
    case Primitive::Cos: return "cos";
    case Primitive::Tan: return "tan";
    case Primitive::Exp: return "exp";
    case Primitive::Ln: return "ln";
    case Primitive::Sqrt: return "sqrt";
  }
  return "?";
}

using JetD = Jet<double>;

}  // namespace hyperaudit
