#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hyperaudit/errors.hpp"
#include "hyperaudit/field.hpp"
#include "hyperaudit/jet.hpp"
#include "random_expr.hpp"
#include "frozen_values.hpp"

using namespace hyperaudit;

TEST_SUITE("jets") {

TEST_CASE("seeding gives unit gradients and zero Hessians") {
  const std::vector<double> x{1.0, 0.5};
  const auto jets = seed_coordinates<double>(x);
  REQUIRE(jets.size() == 2);
  CHECK(jets[0].value == 1.0);
  CHECK(jets[0].grad == Eigen::Vector2d(1, 0));
  CHECK(jets[1].value == 0.5);
  CHECK(jets[1].grad == Eigen::Vector2d(0, 1));
  CHECK(jets[0].hess.isZero(0.0));
  CHECK(jets[1].hess.isZero(0.0));
}

TEST_CASE("seeding rejects empty and non-finite input") {
  CHECK_THROWS_AS(seed_coordinates<double>(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(seed_coordinates<double>(std::vector<double>{std::nan("")}), std::invalid_argument);
}

TEST_CASE("primitive examples") {
  const auto zero = seed_coordinates<double>(std::vector<double>{0.0});
  const JetD s = sinh(zero[0]);
  CHECK(s.value == 0.0);
  CHECK(s.grad(0) == 1.0);
  CHECK(s.hess(0, 0) == 0.0);

  const auto one = seed_coordinates<double>(std::vector<double>{1.0});
  const JetD c = cosh(one[0]);
  CHECK(c.value == doctest::Approx(frozen::kCoshJetAt1[0]).epsilon(1e-14));
  CHECK(c.grad(0) == doctest::Approx(frozen::kCoshJetAt1[1]).epsilon(1e-14));
  CHECK(c.hess(0, 0) == doctest::Approx(frozen::kCoshJetAt1[2]).epsilon(1e-14));

  const auto two = seed_coordinates<double>(std::vector<double>{2.0});
  const JetD sq = two[0] * two[0];
  CHECK(sq.value == 4.0);
  CHECK(sq.grad(0) == 4.0);
  CHECK(sq.hess(0, 0) == 2.0);
}

TEST_CASE("domain errors carry primitive and argument") {
  const auto x = seed_coordinates<double>(std::vector<double>{0.0});
  CHECK_THROWS_AS(reciprocal(x[0]), DomainError);
  CHECK_THROWS_AS(coth(x[0]), DomainError);
  CHECK_THROWS_AS(ln(x[0]), DomainError);
  try {
    (void)ln(x[0] - JetD::constant(1.0, 1));
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(e.primitive() == "ln");
    CHECK(e.argument() == -1.0);
  }
  const auto half_pi = seed_coordinates<double>(std::vector<double>{M_PI / 2});
  CHECK_THROWS_AS(tan(half_pi[0]), DomainError);
}

TEST_CASE("evaluate_primitive checks arity") {
  const auto x = seed_coordinates<double>(std::vector<double>{0.3, 0.4});
  const std::vector<JetD> one{x[0]};
  const std::vector<JetD> both{x[0], x[1]};
  CHECK(evaluate_primitive(Primitive::Sin, std::span<const JetD>(one)).value == doctest::Approx(std::sin(0.3)));
  CHECK(evaluate_primitive(Primitive::Mul, std::span<const JetD>(both)).value == doctest::Approx(0.12));
  CHECK_THROWS(evaluate_primitive(Primitive::Sin, std::span<const JetD>(both)));
}

TEST_CASE("cosh^2 - sinh^2 is the constant jet 1") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const auto x = seed_coordinates<double>(std::vector<double>{dist(rng), dist(rng), dist(rng)});
    const JetD arg = x[0] * x[1] + x[2];
    const JetD one = pow_int(cosh(arg), 2) - pow_int(sinh(arg), 2);
    CHECK(std::abs(one.value - 1.0) < 1e-12);
    CHECK(one.grad.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(one.hess.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Hessians are exactly symmetric") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto e = testsupport::random_expr(rng, 4, 4);
    const FieldExpr f = parse_scalar_field(testsupport::to_text(*e), 4);
    const JetD j = evaluate_scalar_field(f, std::vector<double>{0.3, -0.2, 0.7, 0.1});
    CHECK((j.hess - j.hess.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("jets agree with central finite differences") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const auto e = testsupport::random_expr(rng, 4, 4);
    const std::vector<double> x{dist(rng), dist(rng), dist(rng), dist(rng)};
    const JetD j = evaluate_scalar_field(parse_scalar_field(testsupport::to_text(*e), 4), x);
    const auto fd = testsupport::central_differences(*e, std::vector<long double>(x.begin(), x.end()), 1e-5L);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(j.grad(i) - static_cast<double>(fd.grad[static_cast<std::size_t>(i)])) < 1e-6);
      for (int l = 0; l < 4; ++l)
        CHECK(std::abs(j.hess(i, l) - static_cast<double>(fd.hess[static_cast<std::size_t>(i * 4 + l)])) < 1e-6);
    }
  }
}

}
