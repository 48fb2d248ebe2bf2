#pragma once

// Levi-Civita connection, structural tensors F_α with their Lee forms θ_α,
// Nijenhuis tensors, and the curvature bundle. Conventions:
//   R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z,  R(X,Y,Z,W) = g(R(X,Y)Z, W),
//   ρ(Y,Z) = g^{il} R(e_i,Y,Z,e_l),  τ = g^{jk} ρ_jk,
//   F_α(x,y,z) = g((∇_x J_α)y, z),  θ_α(z) = g^{ij} F_α(e_i,e_j,z).

#include <Eigen/Core>

#include <array>
#include <string>

#include "hyperaudit/manifold.hpp"
#include "hyperaudit/structure.hpp"

namespace hyperaudit {

struct ConnectionData {
  Tensor gamma;   // gamma(k, i, j) = Γ^k_ij
  Tensor dgamma;  // dgamma(l, k, i, j) = ∂_l Γ^k_ij (component array, not a tensor)
};

ConnectionData christoffel(const PointEval& p);

/// sup |∂_k g_ij − Γ^m_ki g_mj − Γ^m_kj g_im|.
double metricity_residual(const PointEval& p, const ConnectionData& c);

struct StructuralSet {
  std::array<Tensor, 3> nablaJ;            // nablaJ(k, i, j) = ∇_k (J_α)^i_j
  std::array<Tensor, 3> F;                 // F(x, y, z), all slots down
  std::array<Eigen::VectorXd, 3> theta;    // θ_α
  std::array<Tensor, 3> N;                 // N(i, j, k) = N_α(∂_i, ∂_j)^k
};

StructuralSet structural_tensors(const PointEval& p, const ConnectionData& c);

/// ω_α(X) = θ_α(J_α X), i.e. the 1-form θ_α ∘ J_α.
Eigen::VectorXd theta_compose_J(const StructuralSet& s, const PointEval& p, int alpha);

struct CurvatureBundle {
  Tensor R;       // (0,4)
  Eigen::MatrixXd ricci;
  double tau = 0.0;
  Tensor weyl;    // (0,4)
};

CurvatureBundle curvature_bundle(const PointEval& p, const ConnectionData& c);

/// k = R(x,y,y,x) / (g(x,x) g(y,y) − g(x,y)²); +1 on the unit pseudo-sphere.
double sectional_curvature(const CurvatureBundle& b, const PointEval& p, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);

// Curvature-like constructors.
/// ψ₁(S)(X,Y,Z,U) = g(Y,Z)S(X,U) − g(X,Z)S(Y,U) + g(X,U)S(Y,Z) − g(Y,U)S(X,Z).
Tensor psi1(const Eigen::MatrixXd& g, const Eigen::MatrixXd& S);
/// π₁(X,Y,Z,U) = g(Y,Z)g(X,U) − g(X,Z)g(Y,U) = ½ψ₁(g).
Tensor pi1(const Eigen::MatrixXd& g);
/// π₃(X,Y,Z,U) = −π₁(X,Y,JZ,U) − π₁(X,Y,Z,JU).
Tensor pi3(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J);

/// R*(X,Y,Z,U) = R(X,Y,Z,JU).
Tensor star(const Tensor& R, const Eigen::MatrixXd& J);
/// Double trace g^{il} g^{jk} T_ijkl of a (0,4) tensor; applied to R* it is τ(R*).
double double_trace(const Tensor& T, const Eigen::MatrixXd& ginv);
/// Ricci contraction g^{il} T(e_i, ·, ·, e_l).
Eigen::MatrixXd ricci_trace(const Tensor& T, const Eigen::MatrixXd& ginv);

/// Weyl part W = T − 1/(2(2n−1)) {ψ₁(ρ) − τ/(4n−1) π₁} for the given n.
Tensor weyl_part(const Tensor& R, const Eigen::MatrixXd& ricci, double tau, const Eigen::MatrixXd& g,
                 int n);

/// Antisymmetry in (1,2) and (3,4), pair symmetry, first Bianchi.
ResidualMap riemann_symmetry_residuals(const Tensor& R);

/// Residuals of the three displayed relations between F₁, F₂, F₃.
ResidualMap structural_triple_residuals(const StructuralSet& s, const PointEval& p);
/// Residuals of the six slot/twist symmetries of F₁, F₂, F₃.
ResidualMap structural_symmetry_residuals(const StructuralSet& s, const PointEval& p);

/// Everything computed at one point, in pipeline order.
struct PointAnalysis {
  PointEval point;
  ConnectionData connection;
  StructuralSet structural;
  CurvatureBundle curvature;
};

PointAnalysis analyze_point(const ManifoldSpec& spec, std::span<const double> coords);

}  // namespace hyperaudit
