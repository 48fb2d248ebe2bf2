#pragma once

// Defect tensors P_α and class verdicts W(J_α), W, W0, K(J_α), K together
// with the Einstein and *-Einstein audits.

#include <Eigen/Core>

#include <array>
#include <span>
#include <string>
#include <vector>

#include "hyperaudit/curvature.hpp"
#include "hyperaudit/report.hpp"

namespace hyperaudit {

struct DefectSet {
  std::array<Tensor, 3> P;
  std::array<double, 3> P_residual{};  // rel‖P_α‖
  std::array<double, 3> F_residual{};  // rel‖F_α‖
};

/// P₁ = F₁ − 1/(2(2n−1)) [g(x,y)θ₁(z) − g(x,z)θ₁(y) − g(x,J₁y)θ₁(J₁z) + g(x,J₁z)θ₁(J₁y)],
/// P_α = F_α − 1/(4n) [g(x,y)θ_α(z) + g(x,z)θ_α(y) + g(x,J_αy)θ_α(J_αz) + g(x,J_αz)θ_α(J_αy)].
DefectSet p_defects(const StructuralSet& s, const PointEval& p);

/// Lee-form reconstruction subtracted from F_α in P_α.
Tensor lee_reconstruction(const Eigen::VectorXd& theta, const PointEval& p, int alpha);

/// Residual of θ_α∘J_α + (2n/(2n−1)) θ₁∘J₁ for α = 2, 3 (entries 0, 1).
std::array<double, 2> lee_balance_residuals(const StructuralSet& s, const PointEval& p);

/// τ(R*) for R*(X,Y,Z,U) = R(X,Y,Z,J_α U), as the double trace g^{il} g^{jk} R*_ijkl.
double star_scalar_curvature(const CurvatureBundle& b, const PointEval& p, int alpha);

constexpr double kClosednessStep = 1e-4;
constexpr double kClosednessTolerance = 1e-5;

/// sup_ij |∂_i ω_j − ∂_j ω_i| for ω = θ₁∘J₁, by central differences.
double lee_form_curl(const ManifoldSpec& spec, std::span<const double> coords,
                     double h = kClosednessStep);

struct ClassReport {
  std::vector<FlagRow> flags;
  double tol = 0.0;
  int points = 0;

  bool flag(const std::string& name) const;
  double residual(const std::string& name) const;
};

/// Flag order: W(J1) W(J2) W(J3) W W0 K(J1) K(J2) K(J3) K flat einstein
/// star_einstein_J2 star_einstein_J3. Aggregation over points is by sup.
ClassReport classify_point_set(const ManifoldSpec& spec, std::span<const Eigen::VectorXd> points,
                               double tol = 1e-8);

/// Report-consistency rules: K ⇒ K(J_α) ⇒ W(J_α), W ⇒ W(J_α),
/// W(J_α) ∧ W(J_β) ⇒ W(J_γ), K(J_α) ∧ W(J_β) ⇒ K. Residual 0 when the
/// rule holds and 1 when the report violates it.
std::vector<CheckRow> consistency_checks(const ClassReport& report);

}  // namespace hyperaudit
