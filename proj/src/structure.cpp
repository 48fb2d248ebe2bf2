#include "hyperaudit/structure.hpp"

#include <array>
#include <limits>

namespace hyperaudit {

std::string to_string(FormClass c) {
  switch (c) {
    case FormClass::L0: return "L0";
    case FormClass::L1: return "L1";
    case FormClass::L2: return "L2";
    case FormClass::L3: return "L3";
    case FormClass::None: return "none";
  }
  return "none";
}

Eigen::MatrixXd twist(const Eigen::MatrixXd& f, const Eigen::MatrixXd& J) {
  return J.transpose() * f * J;
}

AssociatedForms associated_forms(const PointEval& p) {
  // g(Jx, y) = (Jx)ᵀ G y.
  return {p.J[0].transpose() * p.g, p.J[1].transpose() * p.g, p.J[2].transpose() * p.g};
}

ResidualMap quaternionic_residuals(const PointEval& p) {
  const auto& [J1, J2, J3] = p.J;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(p.dim(), p.dim());
  const Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(p.dim(), p.dim());
  ResidualMap r;
  r["J1^2 + I"] = rel_residual(J1 * J1, -I);
  r["J2^2 + I"] = rel_residual(J2 * J2, -I);
  r["J3^2 + I"] = rel_residual(J3 * J3, -I);
  r["J1 J2 - J3"] = rel_residual(J1 * J2, J3);
  r["J2 J1 + J3"] = rel_residual(J2 * J1, -J3);
  r["J2 J3 - J1"] = rel_residual(J2 * J3, J1);
  r["J3 J2 + J1"] = rel_residual(J3 * J2, -J1);
  r["J3 J1 - J2"] = rel_residual(J3 * J1, J2);
  r["J1 J3 + J2"] = rel_residual(J1 * J3, -J2);
  r["{J1,J2}"] = rel_residual(J1 * J2 + J2 * J1, Z);
  r["{J2,J3}"] = rel_residual(J2 * J3 + J3 * J2, Z);
  r["{J3,J1}"] = rel_residual(J3 * J1 + J1 * J3, Z);
  return r;
}

CompatibilityResult compatibility_residuals(const PointEval& p) {
  const auto& [J1, J2, J3] = p.J;
  const Eigen::MatrixXd& g = p.g;
  CompatibilityResult out{{}, associated_forms(p)};
  const auto& [phi, g2, g3] = out.forms;
  ResidualMap& r = out.residuals;

  r["g(J1,J1) - g"] = rel_residual(twist(g, J1), g);
  r["g(J2,J2) + g"] = rel_residual(twist(g, J2), -g);
  r["g(J3,J3) + g"] = rel_residual(twist(g, J3), -g);

  r["g2(J1,J1) + g2"] = rel_residual(twist(g2, J1), -g2);
  r["g2(J2,J2) + g2"] = rel_residual(twist(g2, J2), -g2);
  r["g2(J3,J3) - g2"] = rel_residual(twist(g2, J3), g2);
  r["g3(J1,J1) + g3"] = rel_residual(twist(g3, J1), -g3);
  r["g3(J2,J2) - g3"] = rel_residual(twist(g3, J2), g3);
  r["g3(J3,J3) + g3"] = rel_residual(twist(g3, J3), -g3);

  r["Phi(J1,J1) - Phi"] = rel_residual(twist(phi, J1), phi);
  r["Phi(J2,J2) - Phi"] = rel_residual(twist(phi, J2), phi);
  r["Phi(J3,J3) - Phi"] = rel_residual(twist(phi, J3), phi);

  r["Phi antisymmetry"] = rel_residual(phi, Eigen::MatrixXd(-phi.transpose()));
  r["g2 symmetry"] = rel_residual(g2, Eigen::MatrixXd(g2.transpose()));
  r["g3 symmetry"] = rel_residual(g3, Eigen::MatrixXd(g3.transpose()));
  return out;
}

FormClassLabel classify_bilinear_form(const Eigen::MatrixXd& f, const PointEval& p, double tol) {
  if (f.rows() != p.dim() || f.cols() != p.dim())
    throw std::invalid_argument("classify_bilinear_form: form dimension does not match the point");

  const double scale = sup_norm(f);
  const Eigen::MatrixXd h = scale > 0.0 ? Eigen::MatrixXd(f / scale) : f;

  // Sign of f(J_a x, J_a y) relative to f(x,y) for each class.
  constexpr std::array<std::array<double, 3>, 4> signs{{
      {1.0, 1.0, 1.0},    // L0: Hermitian for all three
      {1.0, -1.0, -1.0},  // L1
      {-1.0, 1.0, -1.0},  // L2
      {-1.0, -1.0, 1.0},  // L3
  }};
  constexpr std::array<FormClass, 4> classes{FormClass::L0, FormClass::L1, FormClass::L2, FormClass::L3};

  std::array<Eigen::MatrixXd, 3> twisted;
  for (std::size_t a = 0; a < 3; ++a) twisted[a] = twist(h, p.J[a]);

  FormClassLabel out;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < 4; ++c) {
    double res = 0.0;
    for (std::size_t a = 0; a < 3; ++a)
      res = std::max(res, rel_residual(twisted[a], Eigen::MatrixXd(signs[c][a] * h)));
    out.residuals[classes[c]] = res;
    if (res < best) {
      best = res;
      if (res < tol) out.label = classes[c];
    }
  }
  return out;
}

}  // namespace hyperaudit
