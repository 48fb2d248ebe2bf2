#pragma once

// Pointwise algebra of the hypercomplex structure and the metric: the
// quaternionic identities, Hermitian/skew-Hermitian compatibility, and
// membership of bilinear forms in the classes L0..L3.

#include <Eigen/Core>

#include <map>
#include <string>

#include "hyperaudit/manifold.hpp"

namespace hyperaudit {

/// Named residuals, ordered by name so reports are stable.
using ResidualMap = std::map<std::string, double>;

/// Φ(x,y) = g(J₁x,y), g₂(x,y) = g(J₂x,y), g₃(x,y) = g(J₃x,y) as matrices
/// f(x,y) = xᵀ F y.
struct AssociatedForms {
  Eigen::MatrixXd phi;
  Eigen::MatrixXd g2;
  Eigen::MatrixXd g3;
};

AssociatedForms associated_forms(const PointEval& p);

ResidualMap quaternionic_residuals(const PointEval& p);

struct CompatibilityResult {
  ResidualMap residuals;
  AssociatedForms forms;
};

CompatibilityResult compatibility_residuals(const PointEval& p);

enum class FormClass { L0, L1, L2, L3, None };

std::string to_string(FormClass c);

struct FormClassLabel {
  FormClass label = FormClass::None;
  std::map<FormClass, double> residuals;  // L0..L3 only
};

constexpr double kDefaultClassTolerance = 1e-8;

/// Matrix of (x,y) ↦ f(Jx,Jy).
Eigen::MatrixXd twist(const Eigen::MatrixXd& f, const Eigen::MatrixXd& J);

/// Residuals are taken on f / sup|f|, so the label is invariant under
/// positive scaling. The label is the class of smallest residual if that
/// residual is below tol, otherwise None.
FormClassLabel classify_bilinear_form(const Eigen::MatrixXd& f, const PointEval& p,
                                      double tol = kDefaultClassTolerance);

}  // namespace hyperaudit
