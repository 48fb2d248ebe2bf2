#include "hyperaudit/curvature.hpp"

#include <array>
#include <cmath>

#include "hyperaudit/errors.hpp"

namespace hyperaudit {

namespace {

constexpr std::array<std::size_t, 4> kSwap12{1, 0, 2, 3};
constexpr std::array<std::size_t, 4> kSwap34{0, 1, 3, 2};
constexpr std::array<std::size_t, 4> kPairSwap{2, 3, 0, 1};
constexpr std::array<std::size_t, 3> kSwapLast{0, 2, 1};

Tensor rank4(int d) { return Tensor::covariant(d, 4); }

double rel_to_scale(const Tensor& t, double scale) { return sup_norm(t) / std::max(1.0, scale); }

}  // namespace

ConnectionData christoffel(const PointEval& p) {
  const int d = p.dim();
  const auto& ginv = p.ginv;
  const auto& dg = p.dg;

  // First-kind symbols A(m, i, j) = ∂_i g_jm + ∂_j g_im − ∂_m g_ij.
  Tensor first(d, {Variance::Down, Variance::Down, Variance::Down});
  for (int m = 0; m < d; ++m)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        first(m, i, j) = dg[static_cast<std::size_t>(i)](j, m) + dg[static_cast<std::size_t>(j)](i, m) -
                         dg[static_cast<std::size_t>(m)](i, j);

  ConnectionData c{Tensor(d, {Variance::Up, Variance::Down, Variance::Down}),
                   Tensor(d, {Variance::Down, Variance::Up, Variance::Down, Variance::Down})};
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double acc = 0.0;
        for (int m = 0; m < d; ++m) acc += ginv(k, m) * first(m, i, j);
        c.gamma(k, i, j) = 0.5 * acc;
      }

  // ∂_l g⁻¹ = −g⁻¹ (∂_l g) g⁻¹
  std::vector<Eigen::MatrixXd> dginv(static_cast<std::size_t>(d));
  for (int l = 0; l < d; ++l) dginv[static_cast<std::size_t>(l)] = -ginv * dg[static_cast<std::size_t>(l)] * ginv;

  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double acc = 0.0;
          for (int m = 0; m < d; ++m) {
            const double dfirst = p.ddg_at(l, i)(j, m) + p.ddg_at(l, j)(i, m) - p.ddg_at(l, m)(i, j);
            acc += dginv[static_cast<std::size_t>(l)](k, m) * first(m, i, j) + ginv(k, m) * dfirst;
          }
          c.dgamma(l, k, i, j) = 0.5 * acc;
        }
  return c;
}

double metricity_residual(const PointEval& p, const ConnectionData& c) {
  const int d = p.dim();
  double worst = 0.0;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double v = p.dg[static_cast<std::size_t>(k)](i, j);
        for (int m = 0; m < d; ++m) v -= c.gamma(m, k, i) * p.g(m, j) + c.gamma(m, k, j) * p.g(i, m);
        worst = std::max(worst, std::abs(v));
      }
  return worst;
}

StructuralSet structural_tensors(const PointEval& p, const ConnectionData& c) {
  const int d = p.dim();
  StructuralSet s;
  for (std::size_t a = 0; a < 3; ++a) {
    const Eigen::MatrixXd& J = p.J[a];
    const auto& dJ = p.dJ[a];

    Tensor nabla(d, {Variance::Down, Variance::Up, Variance::Down});
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double v = dJ[static_cast<std::size_t>(k)](i, j);
          for (int m = 0; m < d; ++m) v += c.gamma(i, k, m) * J(m, j) - c.gamma(m, k, j) * J(i, m);
          nabla(k, i, j) = v;
        }

    Tensor F = Tensor::covariant(d, 3);
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) {
          double v = 0.0;
          for (int i = 0; i < d; ++i) v += p.g(i, l) * nabla(k, i, j);
          F(k, j, l) = v;
        }

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
    for (int z = 0; z < d; ++z)
      for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) theta(z) += p.ginv(k, j) * F(k, j, z);

    // Coordinate fields commute, so only derivatives of J survive.
    Tensor N(d, {Variance::Down, Variance::Down, Variance::Up});
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double v = 0.0;
          for (int m = 0; m < d; ++m) {
            v += J(m, i) * dJ[static_cast<std::size_t>(m)](k, j) - J(m, j) * dJ[static_cast<std::size_t>(m)](k, i) -
                 J(k, m) * dJ[static_cast<std::size_t>(i)](m, j) + J(k, m) * dJ[static_cast<std::size_t>(j)](m, i);
          }
          N(i, j, k) = v;
        }

    s.nablaJ[a] = std::move(nabla);
    s.F[a] = std::move(F);
    s.theta[a] = std::move(theta);
    s.N[a] = std::move(N);
  }
  return s;
}

Eigen::VectorXd theta_compose_J(const StructuralSet& s, const PointEval& p, int alpha) {
  const auto a = static_cast<std::size_t>(alpha);
  return p.J[a].transpose() * s.theta[a];
}

Tensor psi1(const Eigen::MatrixXd& g, const Eigen::MatrixXd& S) {
  if (S.rows() != g.rows() || S.cols() != g.cols()) throw std::invalid_argument("psi1: shape mismatch");
  if (rel_residual(S, Eigen::MatrixXd(S.transpose())) > 1e-12)
    throw std::invalid_argument("psi1: S is not symmetric");
  const int d = static_cast<int>(g.rows());
  Tensor t = rank4(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          t(i, j, k, l) = g(j, k) * S(i, l) - g(i, k) * S(j, l) + g(i, l) * S(j, k) - g(j, l) * S(i, k);
  return t;
}

Tensor pi1(const Eigen::MatrixXd& g) {
  const int d = static_cast<int>(g.rows());
  Tensor t = rank4(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) t(i, j, k, l) = g(j, k) * g(i, l) - g(i, k) * g(j, l);
  return t;
}

Tensor pi3(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J) {
  const Tensor p1 = pi1(g);
  Tensor t = compose_slot(p1, 2, J);
  t += compose_slot(p1, 3, J);
  t *= -1.0;
  return t;
}

Tensor star(const Tensor& R, const Eigen::MatrixXd& J) { return compose_slot(R, 3, J); }

double double_trace(const Tensor& T, const Eigen::MatrixXd& ginv) {
  const int d = T.dim();
  double acc = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) acc += ginv(i, l) * ginv(j, k) * T(i, j, k, l);
  return acc;
}

Eigen::MatrixXd ricci_trace(const Tensor& T, const Eigen::MatrixXd& ginv) {
  const int d = T.dim();
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int l = 0; l < d; ++l) rho(j, k) += ginv(i, l) * T(i, j, k, l);
  return rho;
}

Tensor weyl_part(const Tensor& R, const Eigen::MatrixXd& ricci, double tau, const Eigen::MatrixXd& g,
                 int n) {
  const Eigen::MatrixXd sym_ricci = 0.5 * (ricci + ricci.transpose());
  Tensor correction = psi1(g, sym_ricci);
  correction -= (tau / (4.0 * n - 1.0)) * pi1(g);
  correction *= 1.0 / (2.0 * (2.0 * n - 1.0));
  return R - correction;
}

CurvatureBundle curvature_bundle(const PointEval& p, const ConnectionData& c) {
  const int d = p.dim();
  // Rup(l, i, j, k) = R^l_ijk
  Tensor Rup(d, {Variance::Up, Variance::Down, Variance::Down, Variance::Down});
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double v = c.dgamma(i, l, j, k) - c.dgamma(j, l, i, k);
          for (int m = 0; m < d; ++m) v += c.gamma(l, i, m) * c.gamma(m, j, k) - c.gamma(l, j, m) * c.gamma(m, i, k);
          Rup(l, i, j, k) = v;
        }

  CurvatureBundle b;
  b.R = rank4(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double v = 0.0;
          for (int m = 0; m < d; ++m) v += p.g(m, l) * Rup(m, i, j, k);
          b.R(i, j, k, l) = v;
        }
  b.ricci = ricci_trace(b.R, p.ginv);
  b.tau = (p.ginv.cwiseProduct(b.ricci)).sum();
  b.weyl = weyl_part(b.R, b.ricci, b.tau, p.g, p.n);
  return b;
}

double sectional_curvature(const CurvatureBundle& b, const PointEval& p, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
  const int d = p.dim();
  if (x.size() != d || y.size() != d) throw std::invalid_argument("sectional_curvature: vector size mismatch");
  const double gxx = x.dot(p.g * x), gyy = y.dot(p.g * y), gxy = x.dot(p.g * y);
  const double area = gxx * gyy - gxy * gxy;
  const double gscale = sup_norm(p.g);
  const double scale = gscale * gscale * x.squaredNorm() * y.squaredNorm();
  if (!(std::abs(area) > 1e-8 * scale)) throw DegeneratePlaneError("sectional_curvature: degenerate plane");

  double num = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) num += b.R(i, j, k, l) * x(i) * y(j) * y(k) * x(l);
  return num / area;
}

ResidualMap riemann_symmetry_residuals(const Tensor& R) {
  const double scale = sup_norm(R);
  ResidualMap r;
  r["R antisymmetry (1,2)"] = rel_to_scale(R + permute_slots(R, kSwap12), scale);
  r["R antisymmetry (3,4)"] = rel_to_scale(R + permute_slots(R, kSwap34), scale);
  r["R pair symmetry"] = rel_to_scale(R - permute_slots(R, kPairSwap), scale);
  r["R first Bianchi"] = rel_to_scale(cyclic_sum(R, 0, 1, 2), scale);
  return r;
}

ResidualMap structural_triple_residuals(const StructuralSet& s, const PointEval& p) {
  const auto& [F1, F2, F3] = s.F;
  const auto& [J1, J2, J3] = p.J;
  ResidualMap r;
  r["F1 = F2(x,J3y,z) + F3(x,y,J2z)"] = rel_residual(F1, compose_slot(F2, 1, J3) + compose_slot(F3, 2, J2));
  r["F2 = F3(x,J1y,z) + F1(x,y,J3z)"] = rel_residual(F2, compose_slot(F3, 1, J1) + compose_slot(F1, 2, J3));
  r["F3 = F1(x,J2y,z) - F2(x,y,J1z)"] = rel_residual(F3, compose_slot(F1, 1, J2) - compose_slot(F2, 2, J1));
  return r;
}

ResidualMap structural_symmetry_residuals(const StructuralSet& s, const PointEval& p) {
  ResidualMap r;
  const auto twisted = [&](int a) {
    const auto& J = p.J[static_cast<std::size_t>(a)];
    return compose_slot(compose_slot(s.F[static_cast<std::size_t>(a)], 1, J), 2, J);
  };
  const Tensor& F1 = s.F[0];
  r["F1(x,y,z) + F1(x,z,y)"] = rel_residual(F1, -1.0 * permute_slots(F1, kSwapLast));
  r["F1(x,y,z) + F1(x,J1y,J1z)"] = rel_residual(F1, -1.0 * twisted(0));
  for (int a = 1; a < 3; ++a) {
    const std::string tag = "F" + std::to_string(a + 1);
    const Tensor& F = s.F[static_cast<std::size_t>(a)];
    r[tag + "(x,y,z) - " + tag + "(x,z,y)"] = rel_residual(F, permute_slots(F, kSwapLast));
    r[tag + "(x,y,z) - " + tag + "(x,J" + std::to_string(a + 1) + "y,J" + std::to_string(a + 1) + "z)"] =
        rel_residual(F, twisted(a));
  }
  return r;
}

PointAnalysis analyze_point(const ManifoldSpec& spec, std::span<const double> coords) {
  PointAnalysis a;
  a.point = evaluate_point(spec, coords);
  a.connection = christoffel(a.point);
  a.structural = structural_tensors(a.point, a.connection);
  a.curvature = curvature_bundle(a.point, a.connection);
  return a;
}

}  // namespace hyperaudit
