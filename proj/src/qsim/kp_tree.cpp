#include "cpqls/qsim/kp_tree.hpp"

#include <cmath>

#include "cpqls/matcore/error.hpp"

namespace cpqls {
namespace {

void recompute_path(std::vector<double>& tree, Index leaf_node, Index* touched) {
  Index count = 1;
  for (Index k = leaf_node / 2; k >= 1; k /= 2) {
    tree[k] = tree[2 * k] + tree[2 * k + 1];
    ++count;
  }
  if (touched) *touched = count;
}

void fill_internal(std::vector<double>& tree, Index leaves) {
  for (Index k = leaves - 1; k >= 1; --k) tree[k] = tree[2 * k] + tree[2 * k + 1];
}

// Amplitudes sqrt(leaf / root) obtained level by level.
std::vector<double> descend(const std::vector<double>& tree, Index leaves) {
  std::vector<double> amp(2 * leaves, 0.0);
  amp[1] = 1.0;
  for (Index k = 1; k < leaves; ++k) {
    if (tree[k] <= 0.0 || amp[k] == 0.0) continue;
    amp[2 * k] = amp[k] * std::sqrt(tree[2 * k] / tree[k]);
    amp[2 * k + 1] = amp[k] * std::sqrt(tree[2 * k + 1] / tree[k]);
  }
  return amp;
}

}  // namespace

KPTree KPTree::build(const DenseMatrix& a) {
  KPTree t;
  t.n_ = a.n();
  while (t.leaves_ < t.n_) {
    t.leaves_ *= 2;
    ++t.depth_;
  }
  const Index L = t.leaves_;
  t.column_.assign(static_cast<std::size_t>(t.n_), std::vector<double>(2 * L, 0.0));
  t.phase_.assign(static_cast<std::size_t>(t.n_), std::vector<cplx>(static_cast<std::size_t>(t.n_), 1.0));
  t.norm_.assign(2 * L, 0.0);
  for (Index j = 0; j < t.n_; ++j) {
    auto& col = t.column_[j];
    for (Index i = 0; i < t.n_; ++i) {
      const cplx x = a(i, j);
      col[L + i] = std::norm(x);
      if (x != cplx(0.0)) t.phase_[j][i] = x / std::abs(x);
    }
    fill_internal(col, L);
    t.norm_[L + j] = col[1];
  }
  fill_internal(t.norm_, L);
  return t;
}

KPTree KPTree::update(Index i, Index j, cplx value, UpdateStats* stats) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) throw Error(ErrorKind::index_out_of_range, "kp_update: index out of range");
  if (!is_finite(value)) throw Error(ErrorKind::non_finite, "kp_update: non-finite value");
  KPTree t = *this;
  auto& col = t.column_[j];
  col[leaves_ + i] = std::norm(value);
  t.phase_[j][i] = value != cplx(0.0) ? value / std::abs(value) : cplx(1.0);
  UpdateStats s;
  recompute_path(col, leaves_ + i, &s.column_nodes_touched);
  t.norm_[leaves_ + j] = col[1];
  recompute_path(t.norm_, leaves_ + j, &s.norm_nodes_touched);
  if (stats) *stats = s;
  return t;
}

CVector KPTree::descend_column(Index j) const {
  if (j < 0 || j >= n_) throw Error(ErrorKind::index_out_of_range, "column index out of range");
  if (column_[j][1] <= 0.0) throw Error(ErrorKind::zero_column, "column " + std::to_string(j) + " is zero");
  const auto amp = descend(column_[j], leaves_);
  CVector out(n_);
  for (Index i = 0; i < n_; ++i) out(i) = amp[leaves_ + i] * phase_[j][i];
  return out;
}

CVector KPTree::descend_norms() const {
  if (norm_[1] <= 0.0) throw Error(ErrorKind::zero_column, "matrix is zero");
  const auto amp = descend(norm_, leaves_);
  CVector out(n_);
  for (Index j = 0; j < n_; ++j) out(j) = amp[leaves_ + j];
  return out;
}

KPTree kp_build(const DenseMatrix& a) { return KPTree::build(a); }

KPTree kp_update(const KPTree& tree, Index i, Index j, cplx value, KPTree::UpdateStats* stats) {
  return tree.update(i, j, value, stats);
}

StateVector state_prep_column(const KPTree& tree, Index j) {
  return StateVector::single(tree.descend_column(j), "row");
}

StateVector state_prep_norms(const KPTree& tree) { return StateVector::single(tree.descend_norms(), "col"); }

StateVector matrix_state(const KPTree& tree) {
  const Index n = tree.n();
  const CVector norms = tree.descend_norms();
  CVector amps = CVector::Zero(n * n);
  for (Index j = 0; j < n; ++j) {
    if (tree.column_root(j) <= 0.0) continue;
    const CVector col = tree.descend_column(j);
    for (Index i = 0; i < n; ++i) amps(i * n + j) = norms(j) * col(i);
  }
  return StateVector({n, n}, {"row", "col"}, std::move(amps));
}

CMatrix prep_unitary(const CVector& a) {
  const Index d = a.size();
  if (d == 0 || std::abs(a.norm() - 1.0) > 1e-10) throw Error(ErrorKind::domain, "prep_unitary: need a unit vector");
  const cplx phase = std::abs(a(0)) > 0.0 ? a(0) / std::abs(a(0)) : cplx(1.0);
  CVector w = -std::conj(phase) * a;  // e_0 - e^{-i phi} a, built in place
  w(0) += 1.0;
  const double wn = w.norm();
  CMatrix h = CMatrix::Identity(d, d);
  if (wn > 1e-300) {
    w /= wn;
    h -= 2.0 * w * w.adjoint();
  }
  return phase * h;
}

}  // namespace cpqls
