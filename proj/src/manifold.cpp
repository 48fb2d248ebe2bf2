#include "hyperaudit/manifold.hpp"

#include <numbers>
#include <random>
#include <stdexcept>

#include "hyperaudit/errors.hpp"

namespace hyperaudit {

FieldMatrix::FieldMatrix(int dim)
    : dim_(dim), entries_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim),
                          FieldExpr::constant(0.0, dim)) {}

std::size_t FieldMatrix::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_) throw std::out_of_range("FieldMatrix: index out of range");
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j);
}

bool DomainConstraint::satisfied(std::span<const double> coords, double margin) const {
  double v = 0.0;
  try {
    v = evaluate_scalar_field(expr, coords).value;
  } catch (const DomainError&) {
    return false;
  }
  if (!std::isfinite(v)) return false;
  return kind == Kind::NonZero ? std::abs(v) >= margin : v >= margin;
}

std::string DomainConstraint::to_string() const {
  return expr.to_string() + (kind == Kind::NonZero ? " != 0" : " > 0");
}

DomainConstraint parse_constraint(std::string_view text, int dim) {
  DomainConstraint c;
  std::size_t op = text.find("!=");
  std::size_t rhs_start = 0;
  if (op != std::string_view::npos) {
    c.kind = DomainConstraint::Kind::NonZero;
    rhs_start = op + 2;
  } else {
    op = text.find('>');
    if (op == std::string_view::npos)
      throw ParseError(ParseError::Kind::Syntax, text.size(), "constraint needs '!= 0' or '> 0'");
    c.kind = DomainConstraint::Kind::Positive;
    rhs_start = op + 1;
  }
  // "lhs > rhs" becomes "(lhs) - (rhs) > 0".
  const std::string_view lhs = text.substr(0, op);
  const std::string_view rhs = text.substr(rhs_start);
  FieldExpr left = parse_scalar_field(lhs, dim);
  FieldExpr right = parse_scalar_field(rhs, dim);
  if (right.is_zero_constant()) {
    c.expr = std::move(left);
  } else {
    c.expr = left + apply(Primitive::Neg, right);
  }
  return c;
}

namespace {

void check_field(const FieldExpr& e, int dim, const std::string& where) {
  if (e.empty()) throw std::invalid_argument(where + ": missing expression");
  if (e.dim() != dim) throw std::invalid_argument(where + ": expression dimension mismatch");
}

void check_matrix(const FieldMatrix& m, int dim, const std::string& where) {
  if (m.dim() != dim) throw std::invalid_argument(where + ": expected " + std::to_string(dim) + "x" +
                                                  std::to_string(dim) + " components");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) check_field(m(i, j), dim, where);
}

// Shared between the metric and structure fields of one point: the value,
// gradient and Hessian of every component.
struct ComponentJets {
  Eigen::MatrixXd value;
  std::vector<Eigen::MatrixXd> first;
  std::vector<Eigen::MatrixXd> second;
};

ComponentJets evaluate_matrix(const FieldMatrix& m, std::span<const JetD> vars, bool symmetric) {
  const int d = m.dim();
  ComponentJets out{Eigen::MatrixXd::Zero(d, d),
                    std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(d), Eigen::MatrixXd::Zero(d, d)),
                    std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(d * d), Eigen::MatrixXd::Zero(d, d))};
  for (int i = 0; i < d; ++i) {
    for (int j = symmetric ? i : 0; j < d; ++j) {
      if (m(i, j).is_zero_constant()) continue;
      const JetD jet = evaluate_scalar_field(m(i, j), vars);
      auto store = [&](int a, int b) {
        out.value(a, b) = jet.value;
        for (int k = 0; k < d; ++k) {
          out.first[static_cast<std::size_t>(k)](a, b) = jet.grad(k);
          for (int l = 0; l < d; ++l) out.second[static_cast<std::size_t>(k * d + l)](a, b) = jet.hess(k, l);
        }
      };
      store(i, j);
      if (symmetric && i != j) store(j, i);
    }
  }
  return out;
}

}  // namespace

void validate(const ManifoldSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("manifold '" + spec.name + "': n must be positive");
  const int d = spec.dim();
  check_matrix(spec.metric, d, "metric");
  for (int a = 0; a < 3; ++a) check_matrix(spec.structures[static_cast<std::size_t>(a)], d, "J" + std::to_string(a + 1));
  for (const auto& c : spec.domain) check_field(c.expr, d, "domain");
  if (static_cast<int>(spec.box.size()) != d)
    throw std::invalid_argument("box: expected one interval per coordinate");
  for (const auto& iv : spec.box)
    if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw std::invalid_argument("box: interval must satisfy lo < hi");

  bool textual = true;
  for (int i = 0; i < d && textual; ++i)
    for (int j = i + 1; j < d && textual; ++j) textual = spec.metric(i, j) == spec.metric(j, i);
  if (textual) return;

  for (const auto& x : sample_domain(spec, 100, 0)) {
    const std::span<const double> coords(x.data(), static_cast<std::size_t>(x.size()));
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        const double a = evaluate_scalar_field(spec.metric(i, j), coords).value;
        const double b = evaluate_scalar_field(spec.metric(j, i), coords).value;
        if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
          throw std::invalid_argument("metric is not symmetric at entry (" + std::to_string(i + 1) +
                                      "," + std::to_string(j + 1) + ")");
      }
  }
}

Tensor PointEval::structure_tensor(int alpha) const {
  return Tensor::from_matrix(J[static_cast<std::size_t>(alpha)], {Variance::Up, Variance::Down});
}

PointEval evaluate_point(const ManifoldSpec& spec, std::span<const double> coords, double margin) {
  const int d = spec.dim();
  if (static_cast<int>(coords.size()) != d)
    throw std::invalid_argument("evaluate_point: expected " + std::to_string(d) + " coordinates");
  for (const auto& c : spec.domain)
    if (!c.satisfied(coords, margin))
      throw DomainConstraintError("point violates domain constraint '" + c.to_string() + "'");

  const auto vars = seed_coordinates(coords);
  PointEval p;
  p.n = spec.n;
  p.coords = Eigen::Map<const Eigen::VectorXd>(coords.data(), d);

  ComponentJets metric = evaluate_matrix(spec.metric, vars, true);
  p.g = std::move(metric.value);
  p.dg = std::move(metric.first);
  p.ddg = std::move(metric.second);
  p.metric = invert_metric(Tensor::from_matrix(p.g));
  p.ginv = p.metric.inverse();

  for (std::size_t a = 0; a < 3; ++a) {
    ComponentJets s = evaluate_matrix(spec.structures[a], vars, false);
    p.J[a] = std::move(s.value);
    p.dJ[a] = std::move(s.first);
  }
  if (!p.g.allFinite()) throw DomainConstraintError("metric is not finite at the point");
  for (const auto& j : p.J)
    if (!j.allFinite()) throw DomainConstraintError("structure is not finite at the point");
  return p;
}

std::vector<Eigen::VectorXd> sample_domain(const ManifoldSpec& spec, int count, std::uint64_t seed,
                                           double margin) {
  if (count < 1) throw std::invalid_argument("sample_domain: count must be positive");
  const int d = spec.dim();
  if (static_cast<int>(spec.box.size()) != d)
    throw std::invalid_argument("sample_domain: spec has no sampling box for every coordinate");

  std::vector<Eigen::VectorXd> points;
  points.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    Eigen::VectorXd x(d);
    bool accepted = false;
    for (int attempt = 0; attempt < kSamplingAttemptCap && !accepted; ++attempt) {
      for (int i = 0; i < d; ++i) {
        std::uniform_real_distribution<double> dist(spec.box[static_cast<std::size_t>(i)].lo,
                                                    spec.box[static_cast<std::size_t>(i)].hi);
        x(i) = dist(rng);
      }
      const std::span<const double> coords(x.data(), static_cast<std::size_t>(d));
      accepted = true;
      for (const auto& c : spec.domain)
        if (!c.satisfied(coords, margin)) {
          accepted = false;
          break;
        }
    }
    if (!accepted)
      throw SamplingError("sample_domain: no admissible point after " +
                          std::to_string(kSamplingAttemptCap) + " attempts in '" + spec.name + "'");
    points.push_back(std::move(x));
  }
  return points;
}

namespace {

ManifoldSpec flat_model(int n) {
  const int d = 4 * n;
  ManifoldSpec spec;
  spec.name = "flat" + std::to_string(d);
  spec.n = n;
  spec.metric = FieldMatrix(d);
  for (auto& s : spec.structures) s = FieldMatrix(d);

  auto c = [d](double v) { return FieldExpr::constant(v, d); };
  auto neg_one = [d] { return apply(Primitive::Neg, FieldExpr::constant(1.0, d)); };
  // Coordinates are ordered x^1..x^n, y^1..y^n, u^1..u^n, v^1..v^n.
  for (int i = 0; i < n; ++i) {
    const int x = i, y = n + i, u = 2 * n + i, v = 3 * n + i;
    spec.metric(x, x) = neg_one();
    spec.metric(y, y) = neg_one();
    spec.metric(u, u) = c(1.0);
    spec.metric(v, v) = c(1.0);

    // Entry (row, col) is the row-component of J applied to ∂_col.
    auto& J1 = spec.structures[0];
    J1(y, x) = c(1.0);
    J1(x, y) = neg_one();
    J1(v, u) = neg_one();
    J1(u, v) = c(1.0);

    auto& J2 = spec.structures[1];
    J2(u, x) = c(1.0);
    J2(v, y) = c(1.0);
    J2(x, u) = neg_one();
    J2(y, v) = neg_one();

    auto& J3 = spec.structures[2];
    J3(v, x) = neg_one();
    J3(u, y) = c(1.0);
    J3(y, u) = neg_one();
    J3(x, v) = c(1.0);
  }
  spec.box.assign(static_cast<std::size_t>(d), Interval{-1.0, 1.0});
  spec.metadata["J index resolution"] = "constant standard triple; (J x)^i = J^i_j x^j";
  return spec;
}

ManifoldSpec sphere_model() {
  constexpr int d = 4;
  ManifoldSpec spec;
  spec.name = "sphere";
  spec.n = 1;
  spec.metric = FieldMatrix(d);
  for (auto& s : spec.structures) s = FieldMatrix(d);

  auto f = [](std::string_view text) { return parse_scalar_field(text, d); };
  spec.metric(0, 0) = f("-1");
  spec.metric(1, 1) = f("-sinh(u1)^2");
  spec.metric(2, 2) = f("cosh(u1)^2");
  spec.metric(3, 3) = f("cosh(u1)^2 * cos(u3)^2");

  // Reciprocal pairs, 0-based (row, col) = (upper, lower) index.
  auto& J1 = spec.structures[0];
  J1(0, 1) = f("-sinh(u1)");
  J1(1, 0) = f("1/sinh(u1)");
  J1(2, 3) = f("cos(u3)");
  J1(3, 2) = f("-1/cos(u3)");

  auto& J2 = spec.structures[1];
  J2(0, 2) = f("-cosh(u1)");
  J2(2, 0) = f("1/cosh(u1)");
  J2(1, 3) = f("-coth(u1) * cos(u3)");
  J2(3, 1) = f("1/(coth(u1) * cos(u3))");

  auto& J3 = spec.structures[2];
  J3(0, 3) = f("cosh(u1) * cos(u3)");
  J3(3, 0) = f("-1/(cosh(u1) * cos(u3))");
  J3(2, 1) = f("tanh(u1)");
  J3(1, 2) = f("-1/tanh(u1)");

  spec.domain = {parse_constraint("sinh(u1) != 0", d), parse_constraint("cos(u3) != 0", d)};
  constexpr double two_pi = 2.0 * std::numbers::pi;
  spec.box = {{0.2, 1.5}, {0.0, two_pi}, {-1.2, 1.2}, {0.0, two_pi}};
  spec.metadata["J index resolution"] =
      "reciprocal pairs read as (J)^i_j with (J x)^i = J^i_j x^j; no sign flips required";
  return spec;
}

}  // namespace

ManifoldSpec builtin_model(std::string_view id) {
  if (id == "flat4") return flat_model(1);
  if (id == "flat8") return flat_model(2);
  if (id == "sphere") return sphere_model();
  throw std::invalid_argument("unknown built-in model '" + std::string(id) + "'");
}

}  // namespace hyperaudit
