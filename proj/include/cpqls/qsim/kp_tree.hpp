#pragma once

#include <vector>

#include "cpqls/matcore/dense_matrix.hpp"
#include "cpqls/qsim/state_vector.hpp"

namespace cpqls {

// Binary-tree amplitude store. Column tree j is a heap over L = 2^ceil(log2 n)
// leaves holding |A_ij|^2, with internal nodes holding subtree sums and the
// phase of A_ij kept at the leaf. The norm tree stores ||A_j||^2 the same way.
class KPTree {
 public:
  static KPTree build(const DenseMatrix& a);

  Index n() const { return n_; }
  Index leaves() const { return leaves_; }
  Index depth() const { return depth_; }

  // Heap layout: node 1 is the root, children of k are 2k and 2k+1, leaf i
  // sits at node leaves + i.
  double column_node(Index j, Index node) const { return column_[j][node]; }
  double norm_node(Index node) const { return norm_[node]; }
  double column_root(Index j) const { return column_[j][1]; }
  double norm_root() const { return norm_[1]; }
  cplx leaf_phase(Index i, Index j) const { return phase_[j][i]; }

  struct UpdateStats {
    Index column_nodes_touched = 0;
    Index norm_nodes_touched = 0;
  };
  // Returns the tree for A with entry (i, j) replaced.
  KPTree update(Index i, Index j, cplx value, UpdateStats* stats = nullptr) const;

  // Amplitudes reached by descending a tree with the two-way rotations
  // sqrt(left / node), sqrt(right / node) at every level.
  CVector descend_column(Index j) const;
  CVector descend_norms() const;

 private:
  Index n_ = 0;
  Index leaves_ = 1;
  Index depth_ = 0;
  std::vector<std::vector<double>> column_;
  std::vector<std::vector<cplx>> phase_;
  std::vector<double> norm_;
};

KPTree kp_build(const DenseMatrix& a);
KPTree kp_update(const KPTree& tree, Index i, Index j, cplx value, KPTree::UpdateStats* stats = nullptr);

// |A_j> on a register labeled "row"; throws ErrorKind::zero_column naming j.
StateVector state_prep_column(const KPTree& tree, Index j);
// |A_F> = sum_j ||A_j|| / ||A||_F |j> on a register labeled "col".
StateVector state_prep_norms(const KPTree& tree);
// |A> = sum_ij A_ij / ||A||_F |i>|j> on (row, col), built as U_M applied to
// |0>|A_F>.
StateVector matrix_state(const KPTree& tree);

// Unitary with first column a (|a| = 1): a Householder reflection times a
// phase. Used to realize state-preparation maps as full unitaries.
CMatrix prep_unitary(const CVector& a);

}  // namespace cpqls
