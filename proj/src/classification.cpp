#include "hyperaudit/classification.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperaudit {

Tensor lee_reconstruction(const Eigen::VectorXd& theta, const PointEval& p, int alpha) {
  const int d = p.dim();
  const int n = p.n;
  const Eigen::MatrixXd& J = p.J[static_cast<std::size_t>(alpha)];
  const Eigen::MatrixXd gJ = p.g * J;                    // g(x, J y)
  const Eigen::VectorXd thetaJ = J.transpose() * theta;  // θ(J z)

  Tensor t = Tensor::covariant(d, 3);
  if (alpha == 0) {
    const double c = 1.0 / (2.0 * (2.0 * n - 1.0));
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z)
          t(x, y, z) = c * (p.g(x, y) * theta(z) - p.g(x, z) * theta(y) - gJ(x, y) * thetaJ(z) +
                            gJ(x, z) * thetaJ(y));
  } else {
    const double c = 1.0 / (4.0 * n);
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z)
          t(x, y, z) = c * (p.g(x, y) * theta(z) + p.g(x, z) * theta(y) + gJ(x, y) * thetaJ(z) +
                            gJ(x, z) * thetaJ(y));
  }
  return t;
}

DefectSet p_defects(const StructuralSet& s, const PointEval& p) {
  DefectSet out;
  for (std::size_t a = 0; a < 3; ++a) {
    out.P[a] = s.F[a] - lee_reconstruction(s.theta[a], p, static_cast<int>(a));
    out.P_residual[a] = rel_norm(out.P[a]);
    out.F_residual[a] = rel_norm(s.F[a]);
  }
  return out;
}

std::array<double, 2> lee_balance_residuals(const StructuralSet& s, const PointEval& p) {
  const double ratio = 2.0 * p.n / (2.0 * p.n - 1.0);
  const Eigen::VectorXd target = -ratio * theta_compose_J(s, p, 0);
  return {rel_residual(theta_compose_J(s, p, 1), target), rel_residual(theta_compose_J(s, p, 2), target)};
}

double star_scalar_curvature(const CurvatureBundle& b, const PointEval& p, int alpha) {
  return double_trace(star(b.R, p.J[static_cast<std::size_t>(alpha)]), p.ginv);
}

double lee_form_curl(const ManifoldSpec& spec, std::span<const double> coords, double h) {
  const int d = spec.dim();
  auto omega_at = [&](const Eigen::VectorXd& x) {
    const std::span<const double> c(x.data(), static_cast<std::size_t>(d));
    const PointEval p = evaluate_point(spec, c);
    const ConnectionData conn = christoffel(p);
    return Eigen::VectorXd(theta_compose_J(structural_tensors(p, conn), p, 0));
  };
  const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(coords.data(), d);
  // D(i, j) = ∂_i ω_j
  Eigen::MatrixXd D(d, d);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd plus = x0, minus = x0;
    plus(i) += h;
    minus(i) -= h;
    D.row(i) = (omega_at(plus) - omega_at(minus)).transpose() / (2.0 * h);
  }
  return sup_norm(Eigen::MatrixXd(D - D.transpose()));
}

bool ClassReport::flag(const std::string& name) const {
  for (const auto& f : flags)
    if (f.name == name) return f.pass;
  throw std::out_of_range("ClassReport: no flag '" + name + "'");
}

double ClassReport::residual(const std::string& name) const {
  for (const auto& f : flags)
    if (f.name == name) return f.residual;
  throw std::out_of_range("ClassReport: no flag '" + name + "'");
}

ClassReport classify_point_set(const ManifoldSpec& spec, std::span<const Eigen::VectorXd> points, double tol) {
  if (points.empty()) throw std::invalid_argument("classify_point_set: empty point list");
  const int n = spec.n;

  std::array<double, 3> w{}, k{};
  double balance = 0.0, curl = 0.0, flat = 0.0, einstein = 0.0;
  std::array<double, 2> star_einstein{};

  for (const auto& x : points) {
    const std::span<const double> coords(x.data(), static_cast<std::size_t>(x.size()));
    const PointAnalysis a = analyze_point(spec, coords);
    const PointEval& p = a.point;
    const DefectSet defects = p_defects(a.structural, p);
    for (std::size_t i = 0; i < 3; ++i) {
      accumulate_max(w[i], defects.P_residual[i]);
      accumulate_max(k[i], defects.F_residual[i]);
    }
    const auto bal = lee_balance_residuals(a.structural, p);
    accumulate_max(balance, std::max(bal[0], bal[1]));
    accumulate_max(curl, lee_form_curl(spec, coords));
    accumulate_max(flat, rel_norm(a.curvature.R));

    const auto& rho = a.curvature.ricci;
    accumulate_max(einstein, rel_residual(rho, Eigen::MatrixXd(a.curvature.tau / (4.0 * n) * p.g)));
    const AssociatedForms forms = associated_forms(p);
    const std::array<const Eigen::MatrixXd*, 2> assoc{&forms.g2, &forms.g3};
    for (int s = 0; s < 2; ++s) {
      const double tau_star = star_scalar_curvature(a.curvature, p, s + 1);
      accumulate_max(star_einstein[static_cast<std::size_t>(s)],
                     rel_residual(rho, Eigen::MatrixXd(-(tau_star / (4.0 * n)) * *assoc[static_cast<std::size_t>(s)])));
    }
  }

  // Implications K ⇒ K(J_α) ⇒ W(J_α) and W ⇒ W(J_α) hold by construction.
  std::array<bool, 3> k_pass{}, w_pass{};
  for (std::size_t i = 0; i < 3; ++i) {
    k_pass[i] = k[i] < tol;
    w_pass[i] = w[i] < tol || k_pass[i];
  }
  const bool K = k_pass[0] && k_pass[1] && k_pass[2];
  const bool W = K || (w_pass[0] && w_pass[1] && w_pass[2] && balance < tol);
  const bool W0 = K || (W && curl < kClosednessTolerance);
  const double w_all = std::max({w[0], w[1], w[2], balance});
  const double k_all = std::max({k[0], k[1], k[2]});

  ClassReport r;
  r.tol = tol;
  r.points = static_cast<int>(points.size());
  r.flags = {
      {"W(J1)", w_pass[0], w[0], tol},
      {"W(J2)", w_pass[1], w[1], tol},
      {"W(J3)", w_pass[2], w[2], tol},
      {"W", W, w_all, tol},
      {"W0", W0, curl, kClosednessTolerance},
      {"K(J1)", k_pass[0], k[0], tol},
      {"K(J2)", k_pass[1], k[1], tol},
      {"K(J3)", k_pass[2], k[2], tol},
      {"K", K, k_all, tol},
      {"flat", flat < tol, flat, tol},
      {"einstein", einstein < tol, einstein, tol},
      {"star_einstein_J2", star_einstein[0] < tol, star_einstein[0], tol},
      {"star_einstein_J3", star_einstein[1] < tol, star_einstein[1], tol},
  };
  return r;
}

std::vector<CheckRow> consistency_checks(const ClassReport& r) {
  auto rule = [](std::string name, bool holds) { return make_check(std::move(name), holds ? 0.0 : 1.0, 0.5); };
  auto implies = [](bool a, bool b) { return !a || b; };
  const std::array<std::string, 3> idx{"1", "2", "3"};
  std::vector<CheckRow> rows;
  for (std::size_t a = 0; a < 3; ++a) {
    const std::string Ka = "K(J" + idx[a] + ")", Wa = "W(J" + idx[a] + ")";
    rows.push_back(rule("K => " + Ka, implies(r.flag("K"), r.flag(Ka))));
    rows.push_back(rule(Ka + " => " + Wa, implies(r.flag(Ka), r.flag(Wa))));
    rows.push_back(rule("W => " + Wa, implies(r.flag("W"), r.flag(Wa))));
  }
  rows.push_back(rule("W0 => W", implies(r.flag("W0"), r.flag("W"))));
  for (std::size_t a = 0; a < 3; ++a) {
    const std::size_t b = (a + 1) % 3, c = (a + 2) % 3;
    const std::string Wa = "W(J" + idx[a] + ")", Wb = "W(J" + idx[b] + ")", Wc = "W(J" + idx[c] + ")";
    rows.push_back(rule(Wa + " & " + Wb + " => " + Wc, implies(r.flag(Wa) && r.flag(Wb), r.flag(Wc))));
  }
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      if (a == b) continue;
      const std::string Ka = "K(J" + idx[a] + ")", Wb = "W(J" + idx[b] + ")";
      rows.push_back(rule(Ka + " & " + Wb + " => K", implies(r.flag(Ka) && r.flag(Wb), r.flag("K"))));
    }
  return rows;
}

}  // namespace hyperaudit
