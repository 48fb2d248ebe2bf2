#include "hyperaudit/tensor.hpp"

#include <Eigen/LU>

#include <string>

#include "hyperaudit/errors.hpp"

namespace hyperaudit {

namespace {

void require_slot(const Tensor& t, std::size_t slot) {
  if (slot >= t.rank())
    throw std::out_of_range("slot " + std::to_string(slot) + " out of range for rank " +
                            std::to_string(t.rank()));
}

void require_metric_dim(const Tensor& t, const MetricPair& pair) {
  if (pair.g.dim() != t.dim()) throw std::invalid_argument("metric dimension does not match tensor");
}

// out(..i..) = Σ_b m(i, b) t(..b..) on one slot.
Tensor apply_on_slot(const Tensor& t, std::size_t slot, const Tensor& m, Variance result) {
  auto valence = t.valence();
  valence[slot] = result;
  Tensor out(t.dim(), valence);
  std::vector<int> idx(t.rank()), src(t.rank());
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.unravel(flat, idx);
    src = idx;
    double acc = 0.0;
    for (int b = 0; b < t.dim(); ++b) {
      src[slot] = b;
      acc += m(idx[slot], b) * t.at(src);
    }
    out.data()[flat] = acc;
  }
  return out;
}

}  // namespace

MetricPair invert_metric(const Tensor& g, double tol) {
  if (g.rank() != 2 || g.valence()[0] != Variance::Down || g.valence()[1] != Variance::Down)
    throw std::invalid_argument("invert_metric: expected a (0,2) tensor");
  const Eigen::MatrixXd m = g.matrix();
  if (m != m.transpose()) throw std::invalid_argument("invert_metric: metric is not symmetric");

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  const double det = lu.determinant();
  if (!(std::abs(det) >= tol))
    throw DegenerateMetricError("degenerate metric: |det| = " + std::to_string(std::abs(det)));

  Eigen::MatrixXd inv = lu.inverse();
  // Symmetrize; the inverse of a symmetric matrix is symmetric.
  inv = 0.5 * (inv + inv.transpose()).eval();
  return MetricPair{g, Tensor::from_matrix(inv, {Variance::Up, Variance::Up}), det};
}

Tensor raise_index(const Tensor& t, std::size_t slot, const MetricPair& pair) {
  require_slot(t, slot);
  require_metric_dim(t, pair);
  if (t.valence()[slot] != Variance::Down)
    throw std::invalid_argument("raise_index: slot " + std::to_string(slot) + " is already up");
  return apply_on_slot(t, slot, pair.ginv, Variance::Up);
}

Tensor lower_index(const Tensor& t, std::size_t slot, const MetricPair& pair) {
  require_slot(t, slot);
  require_metric_dim(t, pair);
  if (t.valence()[slot] != Variance::Up)
    throw std::invalid_argument("lower_index: slot " + std::to_string(slot) + " is already down");
  return apply_on_slot(t, slot, pair.g, Variance::Down);
}

Tensor trace_slots(const Tensor& t, std::size_t a, std::size_t b, const MetricPair& pair) {
  require_slot(t, a);
  require_slot(t, b);
  if (a == b) throw std::invalid_argument("trace_slots: slots must differ");
  require_metric_dim(t, pair);

  const Variance va = t.valence()[a], vb = t.valence()[b];
  const Tensor* weight = nullptr;  // null: direct contraction
  if (va == vb) weight = (va == Variance::Down) ? &pair.ginv : &pair.g;

  std::vector<Variance> valence;
  for (std::size_t s = 0; s < t.rank(); ++s)
    if (s != a && s != b) valence.push_back(t.valence()[s]);
  Tensor out(t.dim(), valence);

  std::vector<int> idx(out.rank()), src(t.rank());
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.unravel(flat, idx);
    for (std::size_t s = 0, k = 0; s < t.rank(); ++s)
      if (s != a && s != b) src[s] = idx[k++];
    double acc = 0.0;
    for (int i = 0; i < t.dim(); ++i) {
      src[a] = i;
      if (weight == nullptr) {
        src[b] = i;
        acc += t.at(src);
      } else {
        for (int j = 0; j < t.dim(); ++j) {
          src[b] = j;
          acc += (*weight)(i, j) * t.at(src);
        }
      }
    }
    out.data()[flat] = acc;
  }
  return out;
}

Tensor contract_with_metric(const Tensor& t, std::size_t slot, const MetricPair& pair,
                            Contraction direction, std::size_t other_slot) {
  switch (direction) {
    case Contraction::Raise: return raise_index(t, slot, pair);
    case Contraction::Lower: return lower_index(t, slot, pair);
    case Contraction::Trace: return trace_slots(t, slot, other_slot, pair);
  }
  throw std::invalid_argument("contract_with_metric: unknown direction");
}

Tensor cyclic_sum(const Tensor& t, std::size_t a, std::size_t b, std::size_t c) {
  require_slot(t, a);
  require_slot(t, b);
  require_slot(t, c);
  if (a == b || b == c || a == c) throw std::invalid_argument("cyclic_sum: slots must be distinct");
  const auto& v = t.valence();
  if (v[a] != v[b] || v[b] != v[c])
    throw std::invalid_argument("cyclic_sum: slots must share variance");

  Tensor out(t.dim(), t.valence());
  std::vector<int> idx(t.rank()), src(t.rank());
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.unravel(flat, idx);
    src = idx;
    double acc = t.at(idx);
    src[a] = idx[b];
    src[b] = idx[c];
    src[c] = idx[a];
    acc += t.at(src);
    src[a] = idx[c];
    src[b] = idx[a];
    src[c] = idx[b];
    acc += t.at(src);
    out.data()[flat] = acc;
  }
  return out;
}

Tensor permute_slots(const Tensor& t, std::span<const std::size_t> perm) {
  if (perm.size() != t.rank()) throw std::invalid_argument("permute_slots: wrong permutation size");
  std::vector<bool> seen(t.rank(), false);
  std::vector<Variance> valence(t.rank());
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (perm[s] >= t.rank() || seen[perm[s]])
      throw std::invalid_argument("permute_slots: not a permutation");
    seen[perm[s]] = true;
    valence[s] = t.valence()[perm[s]];
  }
  Tensor out(t.dim(), valence);
  std::vector<int> idx(t.rank()), src(t.rank());
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.unravel(flat, idx);
    for (std::size_t s = 0; s < perm.size(); ++s) src[perm[s]] = idx[s];
    out.data()[flat] = t.at(src);
  }
  return out;
}

Tensor compose_slot(const Tensor& t, std::size_t slot, const Eigen::MatrixXd& A) {
  require_slot(t, slot);
  if (A.rows() != t.dim() || A.cols() != t.dim())
    throw std::invalid_argument("compose_slot: endomorphism dimension mismatch");
  Tensor out(t.dim(), t.valence());
  std::vector<int> idx(t.rank()), src(t.rank());
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.unravel(flat, idx);
    src = idx;
    double acc = 0.0;
    for (int m = 0; m < t.dim(); ++m) {
      if (A(m, idx[slot]) == 0.0) continue;
      src[slot] = m;
      acc += t.at(src) * A(m, idx[slot]);
    }
    out.data()[flat] = acc;
  }
  return out;
}

}  // namespace hyperaudit
