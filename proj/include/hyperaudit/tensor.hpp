#pragma once

// Dense multi-index tensors at a point and metric index gymnastics.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace hyperaudit {

enum class Variance { Up, Down };

/// Components of a tensor at one point, stored row-major in slot order:
/// the last slot varies fastest.
template <typename Scalar>
class DenseTensor {
 public:
  DenseTensor() = default;

  DenseTensor(int dim, std::vector<Variance> valence)
      : dim_(dim), valence_(std::move(valence)), data_(ipow(dim, valence_.size()), Scalar(0)) {
    if (dim < 1) throw std::invalid_argument("DenseTensor: dimension must be positive");
  }

  static DenseTensor covariant(int dim, std::size_t rank) {
    return DenseTensor(dim, std::vector<Variance>(rank, Variance::Down));
  }

  template <typename Derived>
  static DenseTensor from_matrix(const Eigen::MatrixBase<Derived>& m,
                                 std::vector<Variance> valence = {Variance::Down, Variance::Down}) {
    if (m.rows() != m.cols()) throw std::invalid_argument("DenseTensor::from_matrix: not square");
    DenseTensor t(static_cast<int>(m.rows()), std::move(valence));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) t(i, j) = m(i, j);
    return t;
  }

  int dim() const { return dim_; }
  std::size_t rank() const { return valence_.size(); }
  const std::vector<Variance>& valence() const { return valence_; }
  std::size_t size() const { return data_.size(); }

  std::span<Scalar> data() { return data_; }
  std::span<const Scalar> data() const { return data_; }

  template <typename... I>
  Scalar& operator()(I... idx) {
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <typename... I>
  const Scalar& operator()(I... idx) const {
    return data_[offset({static_cast<int>(idx)...})];
  }

  Scalar& at(std::span<const int> idx) { return data_[offset(idx)]; }
  const Scalar& at(std::span<const int> idx) const { return data_[offset(idx)]; }

  /// Rank-2 view as an Eigen matrix (copy).
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix() const {
    if (rank() != 2) throw std::invalid_argument("DenseTensor::matrix: rank is not 2");
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  /// Decodes a flat offset into a multi-index.
  void unravel(std::size_t flat, std::span<int> idx) const {
    for (std::size_t s = rank(); s-- > 0;) {
      idx[s] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
      flat /= static_cast<std::size_t>(dim_);
    }
  }

  DenseTensor& operator+=(const DenseTensor& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  DenseTensor& operator-=(const DenseTensor& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  DenseTensor& operator*=(Scalar s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
  friend DenseTensor operator*(Scalar s, DenseTensor a) { return a *= s; }

  bool same_shape(const DenseTensor& o) const { return dim_ == o.dim_ && valence_ == o.valence_; }

 private:
  static std::size_t ipow(int base, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t k = 0; k < e; ++k) r *= static_cast<std::size_t>(base);
    return r;
  }

  std::size_t offset(std::initializer_list<int> idx) const {
    return offset(std::span<const int>(idx.begin(), idx.size()));
  }

  std::size_t offset(std::span<const int> idx) const {
    if (idx.size() != valence_.size()) throw std::out_of_range("DenseTensor: wrong index count");
    std::size_t flat = 0;
    for (int i : idx) {
      if (i < 0 || i >= dim_) throw std::out_of_range("DenseTensor: index out of range");
      flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return flat;
  }

  void require_same_shape(const DenseTensor& o) const {
    if (!same_shape(o)) throw std::invalid_argument("DenseTensor: shape mismatch");
  }

  int dim_ = 0;
  std::vector<Variance> valence_;
  std::vector<Scalar> data_;
};

using Tensor = DenseTensor<double>;

template <typename Scalar>
Scalar sup_norm(const DenseTensor<Scalar>& t) {
  Scalar m(0);
  for (const Scalar& v : t.data()) m = std::max<Scalar>(m, std::abs(v));
  return m;
}

template <typename Derived>
double sup_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// sup|A − B| / max(1, sup|A|, sup|B|).
template <typename Scalar>
Scalar rel_residual(const DenseTensor<Scalar>& a, const DenseTensor<Scalar>& b) {
  if (a.dim() != b.dim() || a.size() != b.size())
    throw std::invalid_argument("rel_residual: shape mismatch");
  Scalar diff(0), na(0), nb(0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    diff = std::max<Scalar>(diff, std::abs(a.data()[k] - b.data()[k]));
    na = std::max<Scalar>(na, std::abs(a.data()[k]));
    nb = std::max<Scalar>(nb, std::abs(b.data()[k]));
  }
  return diff / std::max<Scalar>({Scalar(1), na, nb});
}

template <typename DA, typename DB>
double rel_residual(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("rel_residual: shape mismatch");
  if (a.size() == 0) return 0.0;
  const double diff = (a - b).cwiseAbs().maxCoeff();
  return diff / std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
}

/// Relative residual of a single tensor against zero.
template <typename Scalar>
Scalar rel_norm(const DenseTensor<Scalar>& t) {
  const Scalar n = sup_norm(t);
  return n / std::max(Scalar(1), n);
}

struct MetricPair {
  Tensor g;     // (0,2)
  Tensor ginv;  // (2,0)
  double det = 0.0;

  Eigen::MatrixXd metric() const { return g.matrix(); }
  Eigen::MatrixXd inverse() const { return ginv.matrix(); }
};

/// Inverts a symmetric (0,2) metric; throws DegenerateMetricError when
/// |det| < tol. The determinant keeps its sign.
MetricPair invert_metric(const Tensor& g, double tol = 1e-12);

enum class Contraction { Raise, Lower, Trace };

Tensor raise_index(const Tensor& t, std::size_t slot, const MetricPair& pair);
Tensor lower_index(const Tensor& t, std::size_t slot, const MetricPair& pair);

/// Contracts slots a and b. An up/down pair contracts directly; two down
/// (resp. up) slots go through g⁻¹ (resp. g).
Tensor trace_slots(const Tensor& t, std::size_t a, std::size_t b, const MetricPair& pair);

/// Dispatcher over the three index operations; `other_slot` is only read
/// for Contraction::Trace.
Tensor contract_with_metric(const Tensor& t, std::size_t slot, const MetricPair& pair,
                            Contraction direction, std::size_t other_slot = 0);

/// T(X,Y,Z,…) + T(Y,Z,X,…) + T(Z,X,Y,…) over the named slot positions.
Tensor cyclic_sum(const Tensor& t, std::size_t a, std::size_t b, std::size_t c);

/// Reorders slots: result slot s is source slot perm[s], so {1, 0}
/// transposes a rank-2 tensor.
Tensor permute_slots(const Tensor& t, std::span<const std::size_t> perm);

/// Feeds an endomorphism into one slot: result(…, y, …) = Σ_m t(…, m, …) A^m_y,
/// i.e. T(…, A y, …) for A given as the matrix A(m, y).
Tensor compose_slot(const Tensor& t, std::size_t slot, const Eigen::MatrixXd& A);

}  // namespace hyperaudit
