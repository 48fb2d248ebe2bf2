#pragma once

// Chart-based models of almost hypercomplex pseudo-Hermitian manifolds.

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hyperaudit/field.hpp"
#include "hyperaudit/tensor.hpp"

namespace hyperaudit {

/// d×d grid of component fields, row-major.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  explicit FieldMatrix(int dim);

  int dim() const { return dim_; }
  const FieldExpr& operator()(int i, int j) const { return entries_[index(i, j)]; }
  FieldExpr& operator()(int i, int j) { return entries_[index(i, j)]; }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  std::size_t index(int i, int j) const;

  int dim_ = 0;
  std::vector<FieldExpr> entries_;
};

struct DomainConstraint {
  enum class Kind { NonZero, Positive };

  FieldExpr expr;
  Kind kind = Kind::NonZero;

  /// Whether the constraint holds at `coords` with the given margin:
  /// |expr| ≥ margin for NonZero, expr ≥ margin for Positive. Expression
  /// domain errors count as violations.
  bool satisfied(std::span<const double> coords, double margin) const;
  std::string to_string() const;

  friend bool operator==(const DomainConstraint&, const DomainConstraint&) = default;
};

/// Parses "expr != 0" or "expr > 0".
DomainConstraint parse_constraint(std::string_view text, int dim);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ManifoldSpec {
  std::string name;
  int n = 1;
  FieldMatrix metric;                    // g_ij
  std::array<FieldMatrix, 3> structures;  // (J_α)^i_j, entry (i, j)
  std::vector<DomainConstraint> domain;
  std::vector<Interval> box;  // sampling interval per coordinate, [lo, hi)
  std::map<std::string, std::string> metadata;

  int dim() const { return 4 * n; }
};

/// Enforces dim = 4n, shape and dimension of every field, and metric
/// symmetry (textual, else numerical at 100 sampled points within 1e-12).
void validate(const ManifoldSpec& spec);

/// Raw pointwise chart data. Derivative arrays are indexed by the
/// derivative direction first: dg[k](i, j) = ∂_k g_ij,
/// ddg[k * d + l](i, j) = ∂_k ∂_l g_ij, dJ[α][k](i, j) = ∂_k (J_α)^i_j.
struct PointEval {
  Eigen::VectorXd coords;
  Eigen::MatrixXd g;
  std::vector<Eigen::MatrixXd> dg;
  std::vector<Eigen::MatrixXd> ddg;
  MetricPair metric;
  Eigen::MatrixXd ginv;
  std::array<Eigen::MatrixXd, 3> J;
  std::array<std::vector<Eigen::MatrixXd>, 3> dJ;
  int n = 1;

  int dim() const { return static_cast<int>(coords.size()); }
  const Eigen::MatrixXd& ddg_at(int k, int l) const { return ddg[static_cast<std::size_t>(k * dim() + l)]; }
  /// J_α as a (1,1) tensor.
  Tensor structure_tensor(int alpha) const;
};

constexpr double kEvaluationMargin = 1e-6;
constexpr double kSamplingMargin = 1e-3;
constexpr int kSamplingAttemptCap = 10000;

PointEval evaluate_point(const ManifoldSpec& spec, std::span<const double> coords,
                         double margin = kEvaluationMargin);

/// Deterministic rejection sampling in the spec's box. Point k draws from
/// its own generator seeded with (seed, k), so the list is independent of
/// how points are scheduled.
std::vector<Eigen::VectorXd> sample_domain(const ManifoldSpec& spec, int count, std::uint64_t seed,
                                           double margin = kSamplingMargin);

/// "flat4", "flat8" or "sphere".
ManifoldSpec builtin_model(std::string_view id);

}  // namespace hyperaudit
