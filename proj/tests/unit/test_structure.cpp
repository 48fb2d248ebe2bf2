#include <doctest.h>

#include <random>

#include "hyperaudit/structure.hpp"
#include "frozen_values.hpp"

using namespace hyperaudit;

namespace {

double worst(const ResidualMap& m) {
  double w = 0.0;
  for (const auto& [name, v] : m) w = std::max(w, v);
  return w;
}

}  // namespace

TEST_SUITE("structure") {

TEST_CASE("flat models satisfy the algebra exactly") {
  for (const char* id : {"flat4", "flat8"}) {
    const ManifoldSpec spec = builtin_model(id);
    for (const auto& x : sample_domain(spec, 10, 1)) {
      const PointEval p = evaluate_point(spec, std::span<const double>(x.data(), x.size()));
      CHECK(worst(quaternionic_residuals(p)) == 0.0);
      CHECK(worst(compatibility_residuals(p).residuals) == 0.0);
    }
  }
}

TEST_CASE("sphere satisfies the algebra at sampled points") {
  const ManifoldSpec spec = builtin_model("sphere");
  for (const auto& x : sample_domain(spec, 200, 1)) {
    const PointEval p = evaluate_point(spec, std::span<const double>(x.data(), x.size()));
    CHECK(worst(quaternionic_residuals(p)) < 1e-10);
    CHECK(worst(compatibility_residuals(p).residuals) < 1e-10);
  }
}

TEST_CASE("a flipped sphere component breaks J3^2 = -I") {
  ManifoldSpec spec = builtin_model("sphere");
  spec.structures[2](2, 1) = parse_scalar_field("-tanh(u1)", 4);
  const PointEval p = evaluate_point(spec, frozen::kSpherePoint);
  CHECK(quaternionic_residuals(p).at("J3^2 + I") > 0.1);
}

TEST_CASE("a definite metric is not skew-Hermitian for J2") {
  PointEval p = evaluate_point(builtin_model("flat4"), std::vector<double>{0, 0, 0, 0});
  p.g = Eigen::Matrix4d::Identity();
  p.ginv = Eigen::Matrix4d::Identity();
  CHECK(compatibility_residuals(p).residuals.at("g(J2,J2) + g") > 0.5);
}

TEST_CASE("associated forms have the expected classes") {
  const ManifoldSpec spec = builtin_model("sphere");
  for (const auto& x : sample_domain(spec, 20, 3)) {
    const PointEval p = evaluate_point(spec, std::span<const double>(x.data(), x.size()));
    const auto forms = associated_forms(p);
    CHECK(classify_bilinear_form(p.g, p).label == FormClass::L1);
    CHECK(classify_bilinear_form(forms.phi, p).label == FormClass::L0);
    CHECK(classify_bilinear_form(forms.g2, p).label == FormClass::L3);
    CHECK(classify_bilinear_form(forms.g3, p).label == FormClass::L2);
  }
}

TEST_CASE("random forms are unclassified and labels are scale invariant") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const PointEval p = evaluate_point(builtin_model("sphere"), frozen::kSpherePoint);
  for (int k = 0; k < 20; ++k) {
    Eigen::Matrix4d f;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) f(i, j) = f(j, i) = dist(rng);
    const FormClassLabel label = classify_bilinear_form(f, p);
    CHECK(label.label == FormClass::None);
    // Brute-force L1 residual: per structure, sup|f(Jx,Jy) − s·f| / max(1, sup|f(J·,J·)|, sup|f|)
    // with s = +1 for J1 and −1 for J2, J3, on f scaled to unit sup-norm.
    const Eigen::Matrix4d fn = f / f.cwiseAbs().maxCoeff();
    double brute = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double sign = a == 0 ? 1.0 : -1.0;
      double diff = 0.0, twisted_sup = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double t = 0.0;
          for (int m = 0; m < 4; ++m)
            for (int l = 0; l < 4; ++l) t += p.J[a](m, i) * p.J[a](l, j) * fn(m, l);
          diff = std::max(diff, std::abs(t - sign * fn(i, j)));
          twisted_sup = std::max(twisted_sup, std::abs(t));
        }
      brute = std::max(brute, diff / std::max(1.0, twisted_sup));
    }
    CHECK(label.residuals.at(FormClass::L1) == doctest::Approx(brute).epsilon(1e-9));
  }
  const auto forms = associated_forms(p);
  CHECK(classify_bilinear_form(1e6 * forms.g2, p).label == FormClass::L3);
  CHECK(classify_bilinear_form(1e-6 * forms.g3, p).label == FormClass::L2);
}

TEST_CASE("a form near two classes is near zero") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const PointEval p = evaluate_point(builtin_model("sphere"), frozen::kSpherePoint);
  for (int k = 0; k < 50; ++k) {
    Eigen::Matrix4d f;
    for (auto& v : f.reshaped()) v = dist(rng);
    const FormClassLabel label = classify_bilinear_form(f, p);
    int near = 0;
    for (const auto& [c, r] : label.residuals) near += r < 1e-8 ? 1 : 0;
    CHECK(near <= 1);
  }
}

}
