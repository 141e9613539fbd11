#pragma once

#include <Eigen/Core>

#include "cpqls/matcore/dense_matrix.hpp"
#include "cpqls/qsim/kp_tree.hpp"

namespace cpqls {

// Isometries on the n^2-dimensional (row, col) space, index i*n + j:
//   M |j> = |A_j>|j>,   M(i*n + j, j) = A_ij / ||A_j||
//   N |i> = |i>|A_F>,   N(i*n + j, i) = ||A_j|| / ||A||_F
// and W = (2NN^dagger - I)(2MM^dagger - I). The spectral data W = Q D Q^dagger
// (Q unitary, D = diag(e^{2 pi i phi_k}), phi_k in [-1/2, 1/2)) comes from a
// complex Schur decomposition; W is normal so the Schur form is diagonal.
class WalkOperator {
 public:
  static WalkOperator build(const DenseMatrix& a);

  const DenseMatrix& a() const { return a_; }
  Index n() const { return a_.n(); }
  Index dim() const { return a_.n() * a_.n(); }
  double frobenius() const { return a_.frobenius(); }
  const KPTree& tree() const { return tree_; }
  const CMatrix& M() const { return m_; }
  const CMatrix& N() const { return n_; }
  const CMatrix& W() const { return w_; }

  const CMatrix& eigvecs() const { return q_; }
  const RVector& eigphases() const { return phi_; }

  // U_M = sum_j P_j (x) |j><j| and U_N = I (x) P_F as full unitaries, where
  // P_j |0> = |A_j> and P_F |0> = |A_F>.
  CMatrix prep_unitary_M() const;
  CMatrix prep_unitary_N() const;

 private:
  WalkOperator(DenseMatrix a, KPTree tree) : a_(std::move(a)), tree_(std::move(tree)) {}
  DenseMatrix a_;
  KPTree tree_;
  CMatrix m_, n_, w_;
  CMatrix q_;
  RVector phi_;
};

WalkOperator build_isometries(const DenseMatrix& a);

struct WalkBlock {
  Eigen::Matrix2cd matrix;   // W in the basis (N|u_i>, M|v_i>)
  double sigma = 0.0;
  double cos_theta = 0.0;    // 2 sigma^2 / ||A||_F^2 - 1
  double theta = 0.0;
  bool degenerate = false;   // sigma below cutoff: N|u_i> and M|v_i> orthogonal
  bool collinear = false;    // sigma == ||A||_F: the two basis vectors coincide
};

// cutoff defaults to 1e-12 * ||A||_F.
WalkBlock walk_block(const WalkOperator& w, Index i, double cutoff = -1.0);

}  // namespace cpqls
