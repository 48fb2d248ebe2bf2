#include "hyperaudit/conformal.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "hyperaudit/errors.hpp"

namespace hyperaudit {

namespace {

constexpr std::uint64_t kTransformCheckSeed = 0x5eed;
constexpr int kTransformCheckPoints = 64;

// T(x,y,z) for the F̄ laws: e^{2u}[F + Σ four g·du terms].
Tensor f_law(const Tensor& F, const PointEval& p, const Eigen::VectorXd& du, int alpha, double scale) {
  const int d = p.dim();
  const Eigen::MatrixXd& J = p.J[static_cast<std::size_t>(alpha)];
  const Eigen::MatrixXd gJx = J.transpose() * p.g;       // g(Jx, y)
  const Eigen::VectorXd duJ = J.transpose() * du;        // du(J z)
  Tensor t = F;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        double extra;
        if (alpha == 0)
          extra = -p.g(x, y) * duJ(z) + p.g(x, z) * duJ(y) + gJx(x, y) * du(z) - gJx(x, z) * du(y);
        else
          extra = p.g(x, y) * duJ(z) + p.g(x, z) * duJ(y) - gJx(x, y) * du(z) - gJx(x, z) * du(y);
        t(x, y, z) += extra;
      }
  t *= scale;
  return t;
}

std::string format_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

FieldExpr builtin_gauge(std::string_view id, int dim) {
  if (id == "sphere-gauge") return parse_scalar_field("-ln(cosh(u1))", dim);
  throw std::invalid_argument("unknown gauge '" + std::string(id) + "'");
}

ManifoldSpec conformal_transform(const ManifoldSpec& spec, const FieldExpr& u) {
  const int d = spec.dim();
  if (u.dim() != d) throw std::invalid_argument("conformal_transform: gauge dimension mismatch");
  const FieldExpr factor = apply(Primitive::Exp, FieldExpr::constant(2.0, d) * u);

  const auto samples = sample_domain(spec, kTransformCheckPoints, kTransformCheckSeed);
  for (const auto& x : samples) {
    const double v = evaluate_scalar_field(factor, std::span<const double>(x.data(), x.size())).value;
    if (!std::isfinite(v) || v <= 0.0) throw DomainError("exp", v, factor.to_string());
  }

  ManifoldSpec out = spec;
  out.name = spec.name + "~conformal";
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (!spec.metric(i, j).is_zero_constant()) out.metric(i, j) = factor * spec.metric(i, j);
  out.metadata["conformal factor"] = factor.to_string();
  return out;
}

GaugeField evaluate_gauge(const FieldExpr& u, const PointEval& p) {
  const JetD j = evaluate_scalar_field(u, std::span<const double>(p.coords.data(), p.coords.size()));
  GaugeField gf;
  gf.u = u;
  gf.value = j.value;
  gf.du = j.grad;
  gf.grad = p.ginv * j.grad;
  gf.hess = j.hess;
  return gf;
}

STensor s_tensor(const PointEval& p, const ConnectionData& c, const GaugeField& gauge) {
  const int d = p.dim();
  Eigen::MatrixXd S = gauge.hess;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) S(i, j) -= c.gamma(k, i, j) * gauge.du(k);
  const double norm2 = gauge.du.dot(gauge.grad);
  S += -gauge.du * gauge.du.transpose() + 0.5 * norm2 * p.g;
  S = 0.5 * (S + S.transpose()).eval();
  return {S, (p.ginv.cwiseProduct(S)).sum()};
}

double trace_with_structure(const Eigen::MatrixXd& S, const Eigen::MatrixXd& J, const Eigen::MatrixXd& ginv) {
  return ginv.cwiseProduct(J.transpose() * S).sum();
}

Tensor l1_predicted_curvature(double tau, const Eigen::MatrixXd& g, int n) {
  return (tau / (4.0 * n * (4.0 * n - 1.0))) * pi1(g);
}

Tensor skew_predicted_curvature(double tau_star, const Eigen::MatrixXd& g, const Eigen::MatrixXd& J, int n) {
  return (tau_star / (8.0 * n * (2.0 * n - 1.0))) * pi3(g, J);
}

Eigen::MatrixXd skew_predicted_ricci(double tau_star, const Eigen::MatrixXd& g_alpha, int n) {
  return -(tau_star / (4.0 * n)) * g_alpha;
}

AuditReport invariance_audit(const ManifoldSpec& spec, const FieldExpr& u,
                             std::span<const Eigen::VectorXd> points, double tol) {
  const ManifoldSpec bar = conformal_transform(spec, u);
  const int n = spec.n;
  const double tt_ratio = 2.0 * n / (2.0 * n - 1.0);

  std::array<double, 3> f_law_res{}, theta_res{}, p_res{};
  std::array<double, 2> tt_res{};
  double r_res = 0.0, ricci_res = 0.0, tau_res = 0.0, weyl_res = 0.0;

  for (const auto& x : points) {
    const std::span<const double> coords(x.data(), static_cast<std::size_t>(x.size()));
    const PointAnalysis a = analyze_point(spec, coords);
    const PointAnalysis b = analyze_point(bar, coords);
    const PointEval& p = a.point;
    const GaugeField gauge = evaluate_gauge(u, p);
    const double e2u = std::exp(2.0 * gauge.value);

    const DefectSet P = p_defects(a.structural, p);
    const DefectSet Pbar = p_defects(b.structural, b.point);
    for (int al = 0; al < 3; ++al) {
      const auto s = static_cast<std::size_t>(al);
      accumulate_max(f_law_res[s], rel_residual(b.structural.F[s], f_law(a.structural.F[s], p, gauge.du, al, e2u)));
      const Eigen::VectorXd duJ = p.J[s].transpose() * gauge.du;
      const Eigen::VectorXd predicted =
          al == 0 ? Eigen::VectorXd(a.structural.theta[s] - 2.0 * (2.0 * n - 1.0) * duJ)
                  : Eigen::VectorXd(a.structural.theta[s] + 4.0 * n * duJ);
      accumulate_max(theta_res[s], rel_residual(b.structural.theta[s], predicted));
      accumulate_max(p_res[s], rel_residual(Pbar.P[s], e2u * P.P[s]));
    }
    const Eigen::VectorXd w1 = tt_ratio * theta_compose_J(a.structural, p, 0);
    const Eigen::VectorXd w1bar = tt_ratio * theta_compose_J(b.structural, b.point, 0);
    for (int al = 1; al < 3; ++al)
      accumulate_max(tt_res[static_cast<std::size_t>(al - 1)],
                     rel_residual(Eigen::VectorXd(theta_compose_J(b.structural, b.point, al) + w1bar),
                                  Eigen::VectorXd(theta_compose_J(a.structural, p, al) + w1)));

    const STensor S = s_tensor(p, a.connection, gauge);
    accumulate_max(r_res, rel_residual(b.curvature.R, e2u * (a.curvature.R - psi1(p.g, S.S))));
    accumulate_max(ricci_res, rel_residual(b.curvature.ricci,
                                           Eigen::MatrixXd(a.curvature.ricci - S.trS * p.g -
                                                           2.0 * (2.0 * n - 1.0) * S.S)));
    const double tau_pred = (a.curvature.tau - 2.0 * (4.0 * n - 1.0) * S.trS) / e2u;
    accumulate_max(tau_res, std::abs(b.curvature.tau - tau_pred) /
                                std::max({1.0, std::abs(b.curvature.tau), std::abs(tau_pred)}));
    accumulate_max(weyl_res, rel_residual(b.curvature.weyl, e2u * a.curvature.weyl));
  }

  AuditReport r;
  r.command = "conformal";
  r.model = spec.name;
  r.points = static_cast<int>(points.size());
  r.tol = tol;
  const std::array<std::string, 3> idx{"1", "2", "3"};
  for (std::size_t s = 0; s < 3; ++s)
    r.checks.push_back(make_check("F" + idx[s] + " conformal law", f_law_res[s], tol));
  for (std::size_t s = 0; s < 3; ++s)
    r.checks.push_back(make_check("theta" + idx[s] + " conformal law", theta_res[s], tol));
  for (std::size_t s = 0; s < 3; ++s)
    r.checks.push_back(make_check("P" + idx[s] + " conformal law", p_res[s], tol));
  r.checks.push_back(make_check("theta2 o J2 + c theta1 o J1 invariant", tt_res[0], tol));
  r.checks.push_back(make_check("theta3 o J3 + c theta1 o J1 invariant", tt_res[1], tol));
  r.checks.push_back(make_check("R conformal law", r_res, tol));
  r.checks.push_back(make_check("Ricci conformal law", ricci_res, tol));
  r.checks.push_back(make_check("scalar curvature conformal law", tau_res, tol));
  r.checks.push_back(make_check("Weyl conformal law", weyl_res, tol));
  r.metadata["gauge"] = u.to_string();
  r.metadata["S tensor"] = "S = hess u - Gamma du - du du + 1/2 g(grad u, grad u) g";
  return r;
}

AuditReport kahler_gauge_audit(const ManifoldSpec& spec, const FieldExpr& u,
                               std::span<const Eigen::VectorXd> points, double tol) {
  const ManifoldSpec bar = conformal_transform(spec, u);
  const int n = spec.n;
  const double c = 1.0 / (2.0 * (2.0 * n - 1.0));

  double gauge_res = 0.0, s_half_res = 0.0, s_einstein_res = 0.0, f2_norm = 0.0;
  std::array<double, 4> s_class_res{};
  bool s_l1_everywhere = true;
  for (const auto& x : points) {
    const std::span<const double> coords(x.data(), static_cast<std::size_t>(x.size()));
    const PointAnalysis a = analyze_point(spec, coords);
    const PointEval& p = a.point;
    const GaugeField gauge = evaluate_gauge(u, p);
    const Eigen::VectorXd target = -c * theta_compose_J(a.structural, p, 0);
    accumulate_max(gauge_res, rel_residual(gauge.du, target));

    const STensor S = s_tensor(p, a.connection, gauge);
    accumulate_max(s_half_res, rel_residual(S.S, Eigen::MatrixXd(0.5 * p.g)));
    accumulate_max(s_einstein_res, rel_residual(S.S, Eigen::MatrixXd(S.trS / (4.0 * n) * p.g)));
    const FormClassLabel label = classify_bilinear_form(S.S, p, tol);
    if (label.label != FormClass::L1) s_l1_everywhere = false;
    std::size_t k = 0;
    for (FormClass fc : {FormClass::L0, FormClass::L1, FormClass::L2, FormClass::L3})
      accumulate_max(s_class_res[k++], label.residuals.at(fc));

    const PointEval pb = evaluate_point(bar, coords);
    const StructuralSet sb = structural_tensors(pb, christoffel(pb));
    accumulate_max(f2_norm, sup_norm(sb.F[1]));
  }

  const ClassReport original = classify_point_set(spec, points, tol);
  const ClassReport transformed = classify_point_set(bar, points, tol);

  AuditReport r;
  r.command = "conformal";
  r.model = spec.name;
  r.points = static_cast<int>(points.size());
  r.tol = tol;
  r.checks.push_back(make_check("gauge equation du = -theta1 o J1 / (2(2n-1))", gauge_res, tol));
  for (auto& row : consistency_checks(transformed)) {
    row.name = "transformed: " + row.name;
    r.checks.push_back(std::move(row));
  }
  const bool s_einstein_hyp = s_l1_everywhere && s_einstein_res < tol;
  r.checks.push_back(make_check("S in L1 and S ~ g => original einstein",
                                (!s_einstein_hyp || original.flag("einstein")) ? 0.0 : 1.0, 0.5));

  for (const auto& f : transformed.flags) r.flags.push_back({"transformed " + f.name, f.pass, f.residual, f.tol});
  r.flags.push_back({"transformed F2 nonzero", f2_norm > 1e3 * tol, f2_norm, 1e3 * tol});
  r.flags.push_back({"S = g/2", s_half_res < tol, s_half_res, tol});
  r.flags.push_back({"S in L1", s_l1_everywhere, s_class_res[1], tol});
  r.flags.push_back({"original einstein", original.flag("einstein"), original.residual("einstein"), tol});

  r.metadata["gauge"] = u.to_string();
  r.metadata["S class residuals (L0,L1,L2,L3)"] =
      format_residual(s_class_res[0]) + "," + format_residual(s_class_res[1]) + "," +
      format_residual(s_class_res[2]) + "," + format_residual(s_class_res[3]);
  return r;
}

}  // namespace hyperaudit
