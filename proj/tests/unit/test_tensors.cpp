#include <doctest.h>

#include <random>

#include "hyperaudit/curvature.hpp"
#include "hyperaudit/errors.hpp"
#include "hyperaudit/structure.hpp"
#include "hyperaudit/tensor.hpp"
#include "frozen_values.hpp"

using namespace hyperaudit;

namespace {

Tensor random_tensor(std::mt19937_64& rng, int dim, std::vector<Variance> valence) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Tensor t(dim, std::move(valence));
  for (auto& v : t.data()) v = dist(rng);
  return t;
}

MetricPair flat_pair() { return invert_metric(Tensor::from_matrix(Eigen::Vector4d(-1, -1, 1, 1).asDiagonal().toDenseMatrix())); }

}  // namespace

TEST_SUITE("tensors") {

TEST_CASE("storage is row-major with the last slot fastest") {
  Tensor t = Tensor::covariant(3, 3);
  t(0, 1, 2) = 7.0;
  CHECK(t.data()[0 * 9 + 1 * 3 + 2] == 7.0);
  CHECK(t.size() == 27);
  CHECK_THROWS_AS(t(0, 3, 0), std::out_of_range);
  const Tensor scalar(4, {});
  CHECK(scalar.size() == 1);
}

TEST_CASE("invert_metric examples") {
  const MetricPair flat = flat_pair();
  CHECK(flat.det == 1.0);
  CHECK(flat.inverse() == flat.metric());

  Eigen::Vector4d diag;
  for (int i = 0; i < 4; ++i) diag(i) = frozen::kSphereMetricDiag[static_cast<std::size_t>(i)];
  const MetricPair sphere = invert_metric(Tensor::from_matrix(diag.asDiagonal().toDenseMatrix()));
  for (int i = 0; i < 4; ++i) CHECK(sphere.ginv(i, i) == doctest::Approx(1.0 / diag(i)).epsilon(1e-15));
  CHECK((sphere.metric() * sphere.inverse() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(invert_metric(Tensor::covariant(4, 2)), DegenerateMetricError);
}

TEST_CASE("trace of g against its inverse is the dimension") {
  const MetricPair p = flat_pair();
  const Tensor tr = trace_slots(p.g, 0, 1, p);
  CHECK(tr.rank() == 0);
  CHECK(tr.data()[0] == 4.0);
  CHECK(contract_with_metric(p.g, 0, p, Contraction::Trace, 1).data()[0] == 4.0);
}

TEST_CASE("lowering the up slot of J1 gives the Kahler form") {
  const ManifoldSpec flat = builtin_model("flat4");
  const PointEval p = evaluate_point(flat, std::vector<double>{0.1, 0.2, 0.3, 0.4});
  const Tensor lowered = lower_index(p.structure_tensor(0), 0, p.metric);
  // lowered(x, y) = g(x, J1 y) = Φ(y, x)
  const std::array<std::size_t, 2> swap{1, 0};
  const Tensor phi = permute_slots(lowered, swap);
  CHECK(rel_residual(phi.matrix(), associated_forms(p).phi) == 0.0);
}

TEST_CASE("raise then lower is the identity") {
  std::mt19937_64 rng(3);
  const ManifoldSpec sphere = builtin_model("sphere");
  const PointEval p = evaluate_point(sphere, frozen::kSpherePoint);
  for (int k = 0; k < 10; ++k) {
    const Tensor t = Tensor::covariant(4, 3) + random_tensor(rng, 4, {Variance::Down, Variance::Down, Variance::Down});
    for (std::size_t s = 0; s < 3; ++s)
      CHECK(sup_norm(lower_index(raise_index(t, s, p.metric), s, p.metric) - t) < 1e-14);
  }
}

TEST_CASE("contraction is linear") {
  std::mt19937_64 rng(4);
  const MetricPair p = flat_pair();
  const std::vector<Variance> v{Variance::Down, Variance::Up, Variance::Down};
  for (int k = 0; k < 10; ++k) {
    const Tensor a = random_tensor(rng, 4, v), b = random_tensor(rng, 4, v);
    const double s = 0.37;
    for (Contraction c : {Contraction::Raise, Contraction::Trace}) {
      const Tensor lhs = contract_with_metric(a + s * b, 0, p, c, 2);
      const Tensor rhs = contract_with_metric(a, 0, p, c, 2) + s * contract_with_metric(b, 0, p, c, 2);
      CHECK(sup_norm(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("cyclic sums") {
  const Eigen::Matrix4d g = Eigen::Vector4d(-1, -2, 3, 0.5).asDiagonal();
  CHECK(sup_norm(cyclic_sum(pi1(g), 0, 1, 2)) < 1e-15);
  CHECK(sup_norm(cyclic_sum(Tensor::covariant(4, 4), 0, 1, 2)) == 0.0);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Tensor sym = Tensor::covariant(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b)
      for (int c = b; c < 4; ++c)
        for (int l = 0; l < 4; ++l) {
          const double v = dist(rng);
          for (auto [i, j, k] : {std::array{a, b, c}, std::array{a, c, b}, std::array{b, a, c},
                                 std::array{b, c, a}, std::array{c, a, b}, std::array{c, b, a}})
            sym(i, j, k, l) = v;
        }
  CHECK(sup_norm(cyclic_sum(sym, 0, 1, 2) - 3.0 * sym) < 1e-14);
}

TEST_CASE("norm helpers") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const Tensor a = random_tensor(rng, 3, {Variance::Down, Variance::Down});
    const Tensor b = random_tensor(rng, 3, {Variance::Down, Variance::Down});
    CHECK(sup_norm(a + b) <= sup_norm(a) + sup_norm(b) + 1e-12);
    CHECK(sup_norm(2.5 * a) == doctest::Approx(2.5 * sup_norm(a)));
    CHECK(rel_residual(a, a) == 0.0);
    CHECK(rel_residual(a, b) <= 2.0);
  }
  Tensor big = Tensor::covariant(2, 1);
  big(0) = 1000.0;
  CHECK(rel_residual(big, Tensor::covariant(2, 1)) == 1.0);
  CHECK(rel_norm(big) == 1.0);
}

TEST_CASE("compose_slot feeds an endomorphism into one slot") {
  const Eigen::Matrix2d A{{0, -1}, {1, 0}};
  Tensor t = Tensor::from_matrix(Eigen::Matrix2d{{1, 2}, {3, 4}});
  const Tensor c = compose_slot(t, 1, A);
  CHECK(c.matrix() == Eigen::Matrix2d{{1, 2}, {3, 4}} * A);
}

}
