#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperaudit/curvature.hpp"
#include "hyperaudit/errors.hpp"
#include "hyperaudit/report.hpp"
#include "frozen_values.hpp"

using namespace hyperaudit;

namespace {

double worst(const ResidualMap& m) {
  double w = 0.0;
  for (const auto& [name, v] : m) w = std::max(w, v);
  return w;
}

PointAnalysis at(const ManifoldSpec& spec, const Eigen::VectorXd& x) {
  return analyze_point(spec, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd s(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) s(i, j) = s(j, i) = dist(rng);
  return s;
}

}  // namespace

TEST_SUITE("curvature") {

TEST_CASE("flat model: everything vanishes") {
  const ManifoldSpec flat = builtin_model("flat4");
  const PointAnalysis a = at(flat, Eigen::Vector4d(0.1, 0.2, -0.3, 0.4));
  CHECK(sup_norm(a.connection.gamma) == 0.0);
  CHECK(sup_norm(a.connection.dgamma) == 0.0);
  for (std::size_t s = 0; s < 3; ++s) {
    CHECK(sup_norm(a.structural.F[s]) == 0.0);
    CHECK(sup_norm(a.structural.N[s]) == 0.0);
    CHECK(a.structural.theta[s].isZero(0.0));
  }
  CHECK(sup_norm(a.curvature.R) == 0.0);
  CHECK(a.curvature.ricci.isZero(0.0));
  CHECK(a.curvature.tau == 0.0);
  CHECK(sup_norm(a.curvature.weyl) == 0.0);
  CHECK(sectional_curvature(a.curvature, a.point, Eigen::Vector4d(1, 0, 0, 0), Eigen::Vector4d(0, 0, 1, 1)) == 0.0);
}

TEST_CASE("sphere Christoffel symbol and metricity") {
  const ManifoldSpec sphere = builtin_model("sphere");
  const PointAnalysis a = at(sphere, Eigen::Map<const Eigen::Vector4d>(frozen::kSpherePoint.data()));
  CHECK(a.connection.gamma(1, 0, 1) == doctest::Approx(frozen::kSphereGamma2_12).epsilon(1e-14));
  CHECK(a.connection.gamma(1, 1, 0) == a.connection.gamma(1, 0, 1));
  for (const auto& x : sample_domain(sphere, 50, 2)) {
    const PointAnalysis b = at(sphere, x);
    CHECK(metricity_residual(b.point, b.connection) < 1e-10);
  }
}

TEST_CASE("sphere Lee forms at the reference point") {
  const PointAnalysis a = at(builtin_model("sphere"), Eigen::Map<const Eigen::Vector4d>(frozen::kSpherePoint.data()));
  const std::array<const std::array<double, 4>*, 3> ref{&frozen::kSphereTheta1, &frozen::kSphereTheta2,
                                                        &frozen::kSphereTheta3};
  for (std::size_t s = 0; s < 3; ++s)
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(a.structural.theta[s](i) - (*ref[s])[static_cast<std::size_t>(i)]) < 1e-12);
  CHECK(a.structural.theta[0](1) == doctest::Approx(2 * std::pow(std::sinh(1.0), 2) / std::cosh(1.0)).epsilon(1e-14));
  for (std::size_t s = 0; s < 3; ++s)
    CHECK(sup_norm(a.structural.F[s]) == doctest::Approx(frozen::kSphereMaxF[s]).epsilon(1e-12));
}

TEST_CASE("a non-integrable structure has a nonzero Nijenhuis tensor") {
  // J = [[0,-f],[1/f,0]] on the (u1,u2) plane with f depending on u3.
  ManifoldSpec spec = builtin_model("flat4");
  spec.structures[0](0, 1) = parse_scalar_field("-exp(u3)", 4);
  spec.structures[0](1, 0) = parse_scalar_field("exp(-u3)", 4);
  spec.structures[0](2, 3) = parse_scalar_field("-(1 + u1^2)", 4);
  spec.structures[0](3, 2) = parse_scalar_field("1/(1 + u1^2)", 4);
  const PointAnalysis a = at(spec, Eigen::Vector4d(0.5, 0.1, 0.2, 0.3));
  CHECK(sup_norm(a.structural.N[0]) > 1e-3);
}

TEST_CASE("sphere curvature is pi1") {
  const ManifoldSpec sphere = builtin_model("sphere");
  for (const auto& x : sample_domain(sphere, 20, 5)) {
    const PointAnalysis a = at(sphere, x);
    CHECK(rel_residual(a.curvature.R, pi1(a.point.g)) < 1e-10);
    CHECK(rel_residual(a.curvature.ricci, Eigen::MatrixXd(3.0 * a.point.g)) < 1e-8);
    CHECK(std::abs(a.curvature.tau - 12.0) < 1e-8);
    CHECK(rel_norm(a.curvature.weyl) < 1e-8);
    CHECK(worst(riemann_symmetry_residuals(a.curvature.R)) < 1e-10);
  }
}

TEST_CASE("sectional curvature") {
  const ManifoldSpec sphere = builtin_model("sphere");
  const PointAnalysis a = at(sphere, Eigen::Map<const Eigen::Vector4d>(frozen::kSpherePoint.data()));
  CHECK(sectional_curvature(a.curvature, a.point, Eigen::Vector4d(1, 0, 0, 0), Eigen::Vector4d(0, 1, 0, 0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(sectional_curvature(a.curvature, a.point, Eigen::Vector4d(1, 2, 0, 0), Eigen::Vector4d(2, 4, 0, 0)),
                  DegeneratePlaneError);
}

TEST_CASE("curvature-like constructors") {
  std::mt19937_64 rng(31);
  const PointEval p = evaluate_point(builtin_model("sphere"), frozen::kSpherePoint);
  CHECK(sup_norm(psi1(p.g, p.g) - 2.0 * pi1(p.g)) == 0.0);
  for (int k = 0; k < 10; ++k) {
    const Eigen::MatrixXd S = random_symmetric(rng, 4);
    CHECK(worst(riemann_symmetry_residuals(psi1(p.g, S))) < 1e-12);
  }
  const Tensor p3 = pi3(p.g, p.J[2]);
  const Tensor twisted = compose_slot(compose_slot(p3, 2, p.J[2]), 3, p.J[2]);
  CHECK(rel_residual(twisted, -1.0 * p3) < 1e-12);
  CHECK_THROWS(psi1(p.g, Eigen::Matrix4d{{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}));
}

TEST_CASE("Weyl part removes psi1 and pi1 pieces") {
  std::mt19937_64 rng(37);
  const PointEval p = evaluate_point(builtin_model("sphere"), frozen::kSpherePoint);
  for (int k = 0; k < 5; ++k) {
    const Tensor R = psi1(p.g, random_symmetric(rng, 4));
    const Eigen::MatrixXd rho = ricci_trace(R, p.ginv);
    const double tau = (p.ginv.cwiseProduct(rho)).sum();
    CHECK(rel_norm(weyl_part(R, rho, tau, p.g, 1)) < 1e-12);
  }
}

TEST_CASE("structural identities on every built-in") {
  for (const char* id : {"flat4", "flat8", "sphere"}) {
    const ManifoldSpec spec = builtin_model(id);
    for (const auto& x : sample_domain(spec, 50, 1)) {
      const PointAnalysis a = at(spec, x);
      CHECK(worst(structural_triple_residuals(a.structural, a.point)) < 1e-9);
      CHECK(worst(structural_symmetry_residuals(a.structural, a.point)) < 1e-9);
    }
  }
}

}

TEST_SUITE("integrability") {

TEST_CASE("sphere structures are integrable") {
  const ManifoldSpec sphere = builtin_model("sphere");
  std::array<double, 3> worst_n{};
  for (const auto& x : sample_domain(sphere, 200, 1)) {
    const PointAnalysis a = at(sphere, x);
    for (std::size_t s = 0; s < 3; ++s) accumulate_max(worst_n[s], sup_norm(a.structural.N[s]));
  }
  for (std::size_t s = 0; s < 3; ++s) CHECK_MESSAGE(worst_n[s] < 1e-8, "N", s + 1, " sup-norm ", worst_n[s]);
}

}
