#pragma once

#include <optional>
#include <span>

#include "cpqls/matcore/types.hpp"

namespace cpqls {

// Thin SVD of a square matrix: A = U diag(sigma) V^dagger, sigma nonincreasing.
struct Svd {
  CMatrix U;
  RVector sigma;
  CMatrix V;
};

// Square complex matrix with its Frobenius norm cached at construction.
// Immutable; with_svd() returns a copy carrying the decomposition.
class DenseMatrix {
 public:
  explicit DenseMatrix(CMatrix entries);

  static DenseMatrix identity(Index n);
  static DenseMatrix diagonal(std::span<const cplx> d);
  static DenseMatrix diagonal(const CVector& d);

  Index n() const { return entries_.rows(); }
  const CMatrix& entries() const { return entries_; }
  cplx operator()(Index i, Index j) const { return entries_(i, j); }

  double frobenius() const { return frob_; }
  double column_norm(Index j) const { return entries_.col(j).norm(); }

  const std::optional<Svd>& cached_svd() const { return svd_; }
  // Returns the cached decomposition or computes one.
  Svd svd() const;
  DenseMatrix with_svd() const;

  DenseMatrix adjoint() const { return DenseMatrix(entries_.adjoint()); }

 private:
  CMatrix entries_;
  double frob_ = 0.0;
  std::optional<Svd> svd_;
};

}  // namespace cpqls
