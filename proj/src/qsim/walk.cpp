#include "cpqls/qsim/walk.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "cpqls/matcore/error.hpp"

namespace cpqls {

WalkOperator WalkOperator::build(const DenseMatrix& a) {
  if (!(a.frobenius() > 0.0)) throw Error(ErrorKind::zero_column, "walk operator: matrix is zero");
  WalkOperator w(a.with_svd(), kp_build(a));
  const Index n = a.n(), d = n * n;
  const double frob = a.frobenius();

  w.m_ = CMatrix::Zero(d, n);
  w.n_ = CMatrix::Zero(d, n);
  std::vector<CVector> columns;
  for (Index j = 0; j < n; ++j) columns.push_back(w.tree_.descend_column(j));  // throws on zero column
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) w.m_(i * n + j, j) = columns[j](i);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) w.n_(i * n + j, i) = a.column_norm(j) / frob;

  const CMatrix id = CMatrix::Identity(d, d);
  w.w_ = (2.0 * w.n_ * w.n_.adjoint() - id) * (2.0 * w.m_ * w.m_.adjoint() - id);

  Eigen::ComplexSchur<CMatrix> schur(w.w_);
  if (schur.info() != Eigen::Success) throw Error(ErrorKind::domain, "walk operator: Schur decomposition failed");
  w.q_ = schur.matrixU();
  w.phi_.resize(d);
  for (Index k = 0; k < d; ++k) {
    double phi = std::arg(schur.matrixT()(k, k)) / (2.0 * kPi);
    if (phi >= 0.5) phi -= 1.0;
    w.phi_(k) = phi;
  }
  return w;
}

CMatrix WalkOperator::prep_unitary_M() const {
  const Index n = this->n();
  CMatrix u = CMatrix::Zero(n * n, n * n);
  for (Index j = 0; j < n; ++j) {
    const CMatrix p = prep_unitary(tree_.descend_column(j));
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k) u(i * n + j, k * n + j) = p(i, k);
  }
  return u;
}

CMatrix WalkOperator::prep_unitary_N() const {
  const Index n = this->n();
  const CMatrix p = prep_unitary(tree_.descend_norms());
  CMatrix u = CMatrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i) u.block(i * n, i * n, n, n) = p;
  return u;
}

WalkOperator build_isometries(const DenseMatrix& a) { return WalkOperator::build(a); }

WalkBlock walk_block(const WalkOperator& w, Index i, double cutoff) {
  const Svd& svd = *w.a().cached_svd();
  if (i < 0 || i >= w.n()) throw Error(ErrorKind::index_out_of_range, "walk_block: singular index out of range");
  const double frob = w.frobenius();
  if (cutoff < 0.0) cutoff = 1e-12 * frob;

  WalkBlock b;
  b.sigma = svd.sigma(i);
  const double c = b.sigma / frob;
  b.cos_theta = 2.0 * c * c - 1.0;
  b.theta = std::acos(std::clamp(b.cos_theta, -1.0, 1.0));
  b.degenerate = b.sigma < cutoff;
  b.collinear = std::abs(1.0 - c) < 1e-12;

  const CVector nu = w.N() * svd.U.col(i);
  const CVector mv = w.M() * svd.V.col(i);
  if (b.collinear) {
    // One-dimensional span; the representation is fixed by the algebra.
    b.matrix << cplx(4.0 * c * c - 1.0), cplx(2.0 * c), cplx(-2.0 * c), cplx(-1.0);
    return b;
  }
  CMatrix basis(nu.size(), 2);
  basis.col(0) = nu;
  basis.col(1) = mv;
  const CMatrix gram = basis.adjoint() * basis;
  const CMatrix image = basis.adjoint() * (w.W() * basis);
  b.matrix = gram.partialPivLu().solve(image);
  return b;
}

}  // namespace cpqls
