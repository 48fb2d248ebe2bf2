#pragma once

// Conformal changes ḡ = e^{2u} g of a model and the laws relating the
// structural and curvature tensors of g and ḡ.

#include <Eigen/Core>

#include <span>
#include <string_view>
#include <vector>

#include "hyperaudit/classification.hpp"
#include "hyperaudit/curvature.hpp"
#include "hyperaudit/report.hpp"

namespace hyperaudit {

/// Built-in gauge ids: "sphere-gauge" = -ln(cosh(u1)).
FieldExpr builtin_gauge(std::string_view id, int dim);

/// Metric entries become exp(2u)·g_ij (zero entries stay zero); structures
/// and domain are kept. Throws DomainError if e^{2u} is not finite at the
/// spec's sample points.
ManifoldSpec conformal_transform(const ManifoldSpec& spec, const FieldExpr& u);

struct GaugeField {
  FieldExpr u;
  double value = 0.0;
  Eigen::VectorXd du;
  Eigen::VectorXd grad;  // g^{ij} ∂_j u
  Eigen::MatrixXd hess;  // ∂_i ∂_j u
};

GaugeField evaluate_gauge(const FieldExpr& u, const PointEval& p);

struct STensor {
  Eigen::MatrixXd S;
  double trS = 0.0;
};

/// S = ∇du − du⊗du + ½ g(grad u, grad u) g with (∇du)_ij = ∂_i∂_j u − Γ^k_ij ∂_k u,
/// the tensor for which R̄ = e^{2u}{R − ψ₁(S)}.
STensor s_tensor(const PointEval& p, const ConnectionData& c, const GaugeField& gauge);

/// g^{ij} S(J e_i, e_j).
double trace_with_structure(const Eigen::MatrixXd& S, const Eigen::MatrixXd& J, const Eigen::MatrixXd& ginv);

// Curvature forced by the class of S when the transformed metric is flat.
/// S ∈ L1: R = τ/(4n(4n−1)) π₁.
Tensor l1_predicted_curvature(double tau, const Eigen::MatrixXd& g, int n);
/// S ∈ L_α (α = 2, 3): R = τ*/(8n(2n−1)) π₃ for J_α.
Tensor skew_predicted_curvature(double tau_star, const Eigen::MatrixXd& g, const Eigen::MatrixXd& J, int n);
/// S ∈ L_α (α = 2, 3): ρ = −(τ*/4n) g_α.
Eigen::MatrixXd skew_predicted_ricci(double tau_star, const Eigen::MatrixXd& g_alpha, int n);

/// Both models are analysed independently at every point and each law is
/// reported as one check row (sup of relative residuals).
AuditReport invariance_audit(const ManifoldSpec& spec, const FieldExpr& u,
                             std::span<const Eigen::VectorXd> points, double tol);

/// Residual of du + θ₁∘J₁ / (2(2n−1)), then the class flags of the
/// transformed model and of its S tensor.
AuditReport kahler_gauge_audit(const ManifoldSpec& spec, const FieldExpr& u,
                               std::span<const Eigen::VectorXd> points, double tol);

}  // namespace hyperaudit
